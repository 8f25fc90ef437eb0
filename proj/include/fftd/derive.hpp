#ifndef FFTD_DERIVE_HPP
#define FFTD_DERIVE_HPP

#include "fftd/ldu.hpp"

#include <stdexcept>

namespace fftd {

/// Rectangular diagonal α·diag(1/(α_0α_1), …, 1/(α_{r-1}α_r)) padded with zeros.
template <Domain T>
FractionMatrix<T> materialize_D(const DiagonalSpec<T>& spec) {
    FractionMatrix<T> d(spec.rows, spec.cols);
    T prev = spec.alpha_context;
    for (std::size_t t = 0; t < spec.rank(); ++t) {
        d(t, t) = Fraction<T>(spec.alpha_context, T(prev * spec.alphas[t]));
        prev = spec.alphas[t];
    }
    return d;
}

template <Domain T>
struct ScriptForm {
    Matrix<T> L;          ///< P·L·Pᵀ, lower triangular
    FractionMatrix<T> D;  ///< P·D·Q
    Matrix<T> U;          ///< Qᵀ·U·Q, upper triangular
};

class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

template <Domain T>
Matrix<T> conjugate(const Permutation& p, const Matrix<T>& a) {
    // p·a·pᵀ
    return permute(p, permute(p, a, Side::rows, false), Side::cols, true);
}

template <Domain T>
ScriptForm<T> script_form(const Matrix<T>& a, const Factorization<T>& f) {
    if (a.rows() != f.rows() || a.cols() != f.cols()) throw DimensionError("script_form: shape mismatch");
    ScriptForm<T> s;
    s.L = conjugate(f.P, f.L);
    s.U = conjugate(f.Q.inverse(), f.U);
    s.D = permute(f.Q, permute(f.P, materialize_D(f.diagonal()), Side::rows, false), Side::cols, false);
    if (!s.L.is_lower_triangular()) throw InvariantError("script_form: P·L·Pᵀ is not lower triangular");
    if (!s.U.is_upper_triangular()) throw InvariantError("script_form: Qᵀ·U·Q is not upper triangular");
    return s;
}

template <Domain T>
struct BruhatFactors {
    FractionMatrix<T> V;   ///< S·𝓛·S, upper triangular
    FractionMatrix<T> SD;  ///< S·𝓓
    FractionMatrix<T> U;   ///< 𝓤, upper triangular
    Permutation S;         ///< flip
    // SD = (S·P)·D·Q, kept as its permutation/diagonal parts
    Permutation SD_rows;
    Permutation SD_cols;
    DiagonalSpec<T> SD_diag;
};

/// Factors of S·A = V·SD·U with S the flip; the Bruhat form of B is bruhat(S·B).
template <Domain T>
BruhatFactors<T> bruhat(const Matrix<T>& a, const LduOptions<T>& opt = {}) {
    if (a.rows() != a.cols()) throw DimensionError("bruhat: matrix is not square");
    const std::size_t n = a.rows();
    auto f = decompose(a, opt);
    auto sf = script_form(a, f);
    auto S = Permutation::flip(n);
    BruhatFactors<T> b;
    b.S = S;
    b.V = to_fractions(conjugate(S, sf.L));
    b.SD = permute(S, sf.D, Side::rows, false);
    b.U = to_fractions(sf.U);
    b.SD_rows = S.compose(f.P);
    b.SD_cols = f.Q;
    b.SD_diag = f.diagonal();
    if (!b.V.is_upper_triangular()) throw InvariantError("bruhat: S·𝓛·S is not upper triangular");
    return b;
}

template <Domain T>
struct PlainLU {
    Permutation P;
    Matrix<T> L;
    FractionMatrix<T> DU;  ///< D·U folded, upper triangular
    Permutation Q;
};

/// A = P·L·(D·U)·Q.
template <Domain T>
PlainLU<T> plain_lu(const Matrix<T>& a, const LduOptions<T>& opt = {}) {
    auto f = decompose(a, opt);
    return {f.P, f.L, mat_mul(materialize_D(f.diagonal()), to_fractions(f.U)), f.Q};
}

}  // namespace fftd

#endif
