#ifndef FFTD_ORACLE_HPP
#define FFTD_ORACLE_HPP

// Brute-force ground truth. Nothing here calls into the decomposition engine.

#include "fftd/ldu.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fftd {

struct MinorSpec {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;

    std::size_t order() const noexcept { return rows.size(); }
};

/// Size beyond which brute-force routines refuse to run unless overridden.
inline constexpr std::size_t oracle_default_cap = 7;

namespace oracle_detail {

template <Domain T>
T cofactor_det(const std::vector<std::vector<T>>& a) {
    const std::size_t k = a.size();
    if (k == 0) return DomainTraits<T>::one();
    if (k == 1) return a[0][0];
    if (k == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
    T det = DomainTraits<T>::zero();
    for (std::size_t j = 0; j < k; ++j) {
        if (DomainTraits<T>::is_zero(a[0][j])) continue;
        std::vector<std::vector<T>> sub(k - 1);
        for (std::size_t i = 1; i < k; ++i)
            for (std::size_t c = 0; c < k; ++c)
                if (c != j) sub[i - 1].push_back(a[i][c]);
        T term = a[0][j] * cofactor_det(sub);
        if (j % 2) det -= term;
        else det += term;
    }
    return det;
}

/// Fraction-free elimination with row exchanges.
template <Domain T>
T bareiss_det(std::vector<std::vector<T>> a) {
    const std::size_t k = a.size();
    T prev = DomainTraits<T>::one();
    bool negate = false;
    for (std::size_t p = 0; p < k; ++p) {
        std::size_t piv = p;
        while (piv < k && DomainTraits<T>::is_zero(a[piv][p])) ++piv;
        if (piv == k) return DomainTraits<T>::zero();
        if (piv != p) {
            std::swap(a[piv], a[p]);
            negate = !negate;
        }
        for (std::size_t i = p + 1; i < k; ++i)
            for (std::size_t j = p + 1; j < k; ++j)
                a[i][j] = DomainTraits<T>::exact_div(T(a[p][p] * a[i][j] - a[i][p] * a[p][j]), prev);
        prev = a[p][p];
    }
    T det = k ? a[k - 1][k - 1] : DomainTraits<T>::one();
    if (negate) det = -det;
    return det;
}

template <Domain T>
std::vector<std::vector<T>> gather(const Matrix<T>& a, const MinorSpec& spec) {
    std::vector<std::vector<T>> s(spec.order(), std::vector<T>(spec.order()));
    for (std::size_t i = 0; i < spec.order(); ++i)
        for (std::size_t j = 0; j < spec.order(); ++j) s[i][j] = a(spec.rows[i], spec.cols[j]);
    return s;
}

inline std::string at(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace oracle_detail

/// Determinant of the selected submatrix: cofactor expansion up to order 6,
/// fraction-free elimination above.
template <Domain T>
T minor(const Matrix<T>& a, const MinorSpec& spec, std::size_t cap = oracle_default_cap) {
    if (spec.rows.size() != spec.cols.size()) throw std::invalid_argument("minor: index sets differ in size");
    auto check = [](const std::vector<std::size_t>& idx, std::size_t bound) {
        for (std::size_t t = 0; t < idx.size(); ++t)
            if (idx[t] >= bound || (t > 0 && idx[t] <= idx[t - 1]))
                throw std::invalid_argument("minor: indices must be increasing and in range");
    };
    check(spec.rows, a.rows());
    check(spec.cols, a.cols());
    if (spec.order() > cap) throw std::invalid_argument("minor: order exceeds brute-force cap");
    auto s = oracle_detail::gather(a, spec);
    if (spec.order() <= 6) return oracle_detail::cofactor_det(s);
    return oracle_detail::bareiss_det(std::move(s));
}

/// Elimination determinant; the second, independent method.
template <Domain T>
T elimination_det(const Matrix<T>& a) {
    if (a.rows() != a.cols()) throw DimensionError("elimination_det: matrix is not square");
    std::vector<std::vector<T>> s(a.rows(), std::vector<T>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) s[i][j] = a(i, j);
    return oracle_detail::bareiss_det(std::move(s));
}

/// Minor on rows {0..k-1, i} and columns {0..k-1, j}.
template <Domain T>
T bordered_minor(const Matrix<T>& a, std::size_t k, std::size_t i, std::size_t j,
                 std::size_t cap = oracle_default_cap) {
    MinorSpec spec;
    for (std::size_t t = 0; t < k; ++t) {
        spec.rows.push_back(t);
        spec.cols.push_back(t);
    }
    spec.rows.push_back(i);
    spec.cols.push_back(j);
    return minor(a, spec, cap);
}

/// Leading principal minor of order k.
template <Domain T>
T leading_minor(const Matrix<T>& a, std::size_t k, std::size_t cap = oracle_default_cap) {
    if (k == 0) return DomainTraits<T>::one();
    return bordered_minor(a, k - 1, k - 1, k - 1, cap);
}

/// (s-k) x (p-k) matrix of minors on rows {0..k-1, i}, columns {0..k-1, j},
/// k <= i < s, k <= j < p.
template <Domain T>
Matrix<T> minors_matrix(const Matrix<T>& a, std::size_t k, std::size_t s, std::size_t p,
                        std::size_t cap = oracle_default_cap) {
    if (!(k < s && s <= a.rows() && k < p && p <= a.cols())) throw std::invalid_argument("minors_matrix: bad bounds");
    Matrix<T> r(s - k, p - k);
    for (std::size_t i = k; i < s; ++i)
        for (std::size_t j = k; j < p; ++j) r(i - k, j - k) = bordered_minor(a, k, i, j, cap);
    return r;
}

struct SylvesterVerdict {
    bool holds;
    std::string lhs;
    std::string rhs;
};

/// det(minors_matrix(A, k, s, s)) == α^s·(α^k)^(s-k-1).
template <Domain T>
SylvesterVerdict sylvester_check(const Matrix<T>& a, std::size_t k, std::size_t s,
                                 std::size_t cap = oracle_default_cap) {
    if (a.rows() != a.cols()) throw DimensionError("sylvester_check: matrix is not square");
    T ak = leading_minor(a, k, cap);
    if (is_zero(ak)) throw std::invalid_argument("sylvester_check: α^k is zero");
    auto mm = minors_matrix(a, k, s, s, cap);
    T lhs = elimination_det(mm);
    T rhs = leading_minor(a, s, cap);
    for (std::size_t t = 0; t + k + 1 < s; ++t) rhs *= ak;
    return {lhs == rhs, to_string(lhs), to_string(rhs)};
}

/// Rank by Gaussian elimination over the fraction field.
template <Domain T>
std::size_t rank_oracle(const Matrix<T>& a) {
    std::vector<std::vector<Fraction<T>>> m(a.rows(), std::vector<Fraction<T>>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = Fraction<T>(a(i, j));
    std::size_t rank = 0;
    for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        std::size_t piv = rank;
        while (piv < a.rows() && m[piv][c].is_zero()) ++piv;
        if (piv == a.rows()) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t i = rank + 1; i < a.rows(); ++i) {
            if (m[i][c].is_zero()) continue;
            Fraction<T> factor = m[i][c] / m[rank][c];
            for (std::size_t j = c; j < a.cols(); ++j) m[i][j] -= factor * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

struct CheckItem {
    char id;
    std::string name;
    bool pass = true;
    std::string detail;  ///< first failing coordinate
};

struct VerifyReport {
    std::vector<CheckItem> items;

    bool ok() const {
        for (const auto& i : items)
            if (!i.pass) return false;
        return true;
    }
    std::string summary() const {
        std::ostringstream os;
        for (const auto& i : items)
            os << "(" << i.id << ") " << i.name << ": " << (i.pass ? "pass" : "FAIL " + i.detail) << "\n";
        return os.str();
    }
};

namespace oracle_detail {

/// P·X·Q for permutations given by images; row i of P·X is row P[i] of X.
template <typename E>
Matrix<E> sandwich(const Permutation& p, const Matrix<E>& x, const Permutation& q) {
    Matrix<E> r(x.rows(), x.cols());
    std::vector<std::size_t> qinv(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) qinv[q[j]] = j;
    // (X·Q)[i][j] = X[i][qinv[j]]
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) r(i, j) = x(p[i], qinv[j]);
    return r;
}

template <typename E>
Matrix<E> product(const Matrix<E>& a, const Matrix<E>& b) {
    Matrix<E> r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            if (DomainTraits<E>::is_zero(a(i, l))) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, l) * b(l, j);
        }
    return r;
}

template <typename E>
Matrix<E> transpose_perm_sandwich(const Permutation& p, const Matrix<E>& x) {
    // p·x·pᵀ: entry (i, j) = x(p[i], p[j])
    Matrix<E> r(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) r(i, j) = x(p[i], p[j]);
    return r;
}

}  // namespace oracle_detail

/// Checks every structural claim of a factorization of `a` (context α = 1).
template <Domain T>
VerifyReport verify(const Matrix<T>& a, const Factorization<T>& f) {
    using F = Fraction<T>;
    using namespace oracle_detail;
    VerifyReport rep;
    const std::size_t n = a.rows(), m = a.cols();
    const std::size_t r = f.alphas.size();
    const T one = DomainTraits<T>::one();
    const T& alpha = f.alpha_context;

    CheckItem shape{'0', "shapes"};
    if (f.L.rows() != n || f.L.cols() != n || f.U.rows() != m || f.U.cols() != m || f.P.size() != n
        || f.Q.size() != m || r > std::min(n, m) || f.M.rows() != r || f.M.cols() != r || f.W.rows() != r
        || f.W.cols() != r) {
        shape.pass = false;
        shape.detail = "dimensions disagree";
        rep.items.push_back(shape);
        return rep;
    }
    for (std::size_t t = 0; t < r; ++t)
        if (is_zero(f.alphas[t])) {
            shape.pass = false;
            shape.detail = "alpha " + std::to_string(t) + " is zero";
            rep.items.push_back(shape);
            return rep;
        }

    // D over fractions, built here rather than through the derive module
    Matrix<F> D(n, m);
    {
        T prev = alpha;
        for (std::size_t t = 0; t < r; ++t) {
            D(t, t) = F(alpha, T(prev * f.alphas[t]));
            prev = f.alphas[t];
        }
    }

    CheckItem recon{'a', "reconstruction P·L·D·U·Q = A"};
    {
        Matrix<F> L(n, n), U(m, m), A(n, m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) L(i, j) = F(f.L(i, j));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) U(i, j) = F(f.U(i, j));
        auto prod = sandwich(f.P, product(product(L, D), U), f.Q);
        for (std::size_t i = 0; i < n && recon.pass; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (!(prod(i, j) == F(a(i, j)))) {
                    recon.pass = false;
                    recon.detail = "at " + at(i, j) + ": " + prod(i, j).to_string() + " != " + to_string(a(i, j));
                    break;
                }
    }
    rep.items.push_back(recon);

    CheckItem tri{'b', "triangularity and diagonal alphas"};
    {
        auto fail = [&](std::string what) {
            if (tri.pass) {
                tri.pass = false;
                tri.detail = std::move(what);
            }
        };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (!is_zero(f.L(i, j))) fail("L above diagonal at " + at(i, j));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (!is_zero(f.U(i, j))) fail("U below diagonal at " + at(i, j));
        for (std::size_t t = 0; t < n; ++t)
            if (!(f.L(t, t) == (t < r ? f.alphas[t] : one))) fail("L diagonal at " + at(t, t));
        for (std::size_t t = 0; t < m; ++t)
            if (!(f.U(t, t) == (t < r ? f.alphas[t] : one))) fail("U diagonal at " + at(t, t));
    }
    rep.items.push_back(tri);

    CheckItem ident{'c', "identity blocks past the rank"};
    for (std::size_t i = r; i < n && ident.pass; ++i)
        for (std::size_t j = r; j < n; ++j)
            if (!(f.L(i, j) == (i == j ? one : T(0)))) {
                ident.pass = false;
                ident.detail = "L at " + at(i, j);
                break;
            }
    for (std::size_t i = r; i < m && ident.pass; ++i)
        for (std::size_t j = r; j < m; ++j)
            if (!(f.U(i, j) == (i == j ? one : T(0)))) {
                ident.pass = false;
                ident.detail = "U at " + at(i, j);
                break;
            }
    rep.items.push_back(ident);

    CheckItem beta{'d', "P·L·Pᵀ lower, Qᵀ·U·Q upper"};
    {
        auto sl = transpose_perm_sandwich(f.P, f.L);
        auto su = transpose_perm_sandwich(f.Q.inverse(), f.U);
        for (std::size_t i = 0; i < n && beta.pass; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (!is_zero(sl(i, j))) {
                    beta.pass = false;
                    beta.detail = "P·L·Pᵀ at " + at(i, j);
                    break;
                }
        for (std::size_t i = 0; i < m && beta.pass; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (!is_zero(su(i, j))) {
                    beta.pass = false;
                    beta.detail = "Qᵀ·U·Q at " + at(i, j);
                    break;
                }
    }
    rep.items.push_back(beta);

    CheckItem mw{'e', "M·L_r·D_r = α·I and D_r·U_r·W = α·I"};
    {
        Matrix<F> Mr(r, r), Wr(r, r), Lr(r, r), Ur(r, r), Dr(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                Mr(i, j) = F(f.M(i, j));
                Wr(i, j) = F(f.W(i, j));
                Lr(i, j) = F(f.L(i, j));
                Ur(i, j) = F(f.U(i, j));
                Dr(i, j) = D(i, j);
            }
        auto left = product(product(Mr, Lr), Dr);
        auto right = product(product(Dr, Ur), Wr);
        for (std::size_t i = 0; i < r && mw.pass; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                F want = i == j ? F(alpha) : F();
                if (!(left(i, j) == want)) {
                    mw.pass = false;
                    mw.detail = "M·L·D at " + at(i, j);
                    break;
                }
                if (!(right(i, j) == want)) {
                    mw.pass = false;
                    mw.detail = "D·U·W at " + at(i, j);
                    break;
                }
            }
    }
    rep.items.push_back(mw);

    CheckItem rk{'f', "rank agrees with elimination"};
    {
        const std::size_t want = rank_oracle(a);
        if (want != r) {
            rk.pass = false;
            rk.detail = "rank " + std::to_string(r) + " != " + std::to_string(want);
        }
    }
    rep.items.push_back(rk);
    return rep;
}

/// L and U entries against minors of Pᵀ·A·Qᵀ: L(i,j) is the minor on rows
/// {0..j-1, i}, columns {0..j}; U(i,j) on rows {0..i}, columns {0..i-1, j}.
/// Returns an empty string on success, else the first mismatch.
template <Domain T>
std::string minors_check(const Matrix<T>& a, const Factorization<T>& f, std::size_t cap = oracle_default_cap) {
    const std::size_t n = a.rows(), m = a.cols(), r = f.rank();
    // Pᵀ·A·Qᵀ has entry (t, u) = A(pinv[t], Q[u])
    std::vector<std::size_t> pinv(n);
    for (std::size_t i = 0; i < n; ++i) pinv[f.P[i]] = i;
    Matrix<T> ap(n, m);
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t u = 0; u < m; ++u) ap(t, u) = a(pinv[t], f.Q[u]);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = j; i < n; ++i) {
            T want = bordered_minor(ap, j, i, j, cap);
            if (!(f.L(i, j) == want))
                return "L" + oracle_detail::at(i, j) + " = " + to_string(f.L(i, j)) + ", minor " + to_string(want);
        }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < m; ++j) {
            T want = bordered_minor(ap, i, i, j, cap);
            if (!(f.U(i, j) == want))
                return "U" + oracle_detail::at(i, j) + " = " + to_string(f.U(i, j)) + ", minor " + to_string(want);
        }
    return {};
}

}  // namespace fftd

#endif
