#ifndef FFTD_LDU_HPP
#define FFTD_LDU_HPP

#include "fftd/matrix.hpp"

#include <functional>
#include <future>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fftd {

/*
 * Recursive fraction-free triangular decomposition A = P·L·D·U·Q over a
 * commutative domain.
 *
 * For a block 𝓐 with context α (the last leading minor already eliminated,
 * α = 1 at top level) and rank r, the engine returns
 *
 *   P, Q   permutations with Pᵀ·𝓐·Qᵀ having nonzero leading minors α_1..α_r
 *   L      lower triangular, diag (α_1..α_r, 1..1), trailing identity block
 *   U      upper triangular, same diagonal, trailing identity block
 *   D      α·diag(1/(α_0 α_1), .., 1/(α_{r-1} α_r), 0..0), α_0 = α; kept symbolic
 *   M, W   α·(L_r D_r)⁻¹ and α·(D_r U_r)⁻¹, both in R
 *
 * All entries of L, U, M, W and every intermediate block stay in R; an
 * inexact division anywhere raises NotDivisible and indicates a bug.
 *
 * Non-pivot rows and columns always appear in increasing original order,
 * which together with the recursion order makes P·L·Pᵀ lower and Qᵀ·U·Q
 * upper triangular.
 */

/// The strongly-regular path found a zero leading minor.
class ZeroPivot : public DomainError {
public:
    using DomainError::DomainError;
};

/// How the leading block size s is chosen at each split, 1 <= s < min(rows, cols).
struct SplitPolicy {
    enum class Rule { pow2, half, schedule };

    Rule rule = Rule::pow2;
    /// Block sizes by recursion depth; used when rule == schedule.
    std::vector<std::size_t> sizes;

    static SplitPolicy pow2() { return {}; }
    static SplitPolicy half() { return {Rule::half, {}}; }
    static SplitPolicy schedule(std::vector<std::size_t> s) { return {Rule::schedule, std::move(s)}; }

    /// "pow2", "half", or a comma separated schedule such as "4,2".
    static SplitPolicy parse(std::string_view text);

    std::size_t choose(std::size_t rows, std::size_t cols, std::size_t depth) const {
        const std::size_t lim = std::min(rows, cols);
        if (rule == Rule::schedule && depth < sizes.size() && sizes[depth] >= 1 && sizes[depth] < lim)
            return sizes[depth];
        if (rule == Rule::half) return std::max<std::size_t>(1, lim / 2);
        std::size_t s = 1;
        while (s * 2 < lim) s *= 2;
        return s;
    }
};

/// D as carried by the engine: never materialized in R.
template <Domain T>
struct DiagonalSpec {
    T alpha_context = DomainTraits<T>::one();
    std::vector<T> alphas;
    std::size_t rows = 0;
    std::size_t cols = 0;

    std::size_t rank() const noexcept { return alphas.size(); }
};

template <Domain T>
struct Factorization {
    Permutation P;
    Matrix<T> L;
    std::vector<T> alphas;
    Matrix<T> U;
    Permutation Q;
    Matrix<T> M;
    Matrix<T> W;
    T alpha_context = DomainTraits<T>::one();

    std::size_t rank() const noexcept { return alphas.size(); }
    std::size_t rows() const noexcept { return L.rows(); }
    std::size_t cols() const noexcept { return U.rows(); }

    /// order[t] = input row placed at position t of Pᵀ·A·Qᵀ.
    std::vector<std::size_t> row_order() const { return P.inverse().images(); }
    std::vector<std::size_t> col_order() const { return Q.images(); }

    DiagonalSpec<T> diagonal() const { return {alpha_context, alphas, rows(), cols()}; }

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

template <Domain T>
struct RecursionContext {
    std::size_t k = 0;
    T alpha_k = DomainTraits<T>::one();
    /// α^s/α^k for the scaled shortcut, as the pair (α^s, α^k).
    std::optional<std::pair<T, T>> lambda;
};

template <Domain T>
struct TraceEvent {
    enum class Kind {
        schur,   ///< a Schur block handed to the next recursion level
        factor,  ///< a completed factorization of `block`
        scaled,  ///< a factorization reused through λ-scaling; block is the unscaled input
    };
    Kind kind;
    std::size_t depth;
    T alpha;  ///< context of `block` (for schur: the α the block will be decomposed with)
    Matrix<T> block;
    std::optional<Factorization<T>> result;
};

template <Domain T>
struct LduOptions {
    SplitPolicy policy;
    /// Evaluate independent sub-decompositions concurrently.
    bool parallel = false;
    /// Threads are only spawned above this recursion depth.
    std::size_t parallel_depth = 4;
    /// Try the permutation-free strongly-regular path first.
    bool strongly_regular_first = false;
    /// Called from worker threads when parallel is set.
    std::function<void(const TraceEvent<T>&)> trace;
};

/// Thread-safe collector for TraceEvents.
template <Domain T>
class TraceRecorder {
public:
    std::function<void(const TraceEvent<T>&)> callback() {
        return [this](const TraceEvent<T>& e) {
            std::lock_guard lock(mu_);
            events_.push_back(e);
        };
    }
    std::vector<TraceEvent<T>> events() const {
        std::lock_guard lock(mu_);
        return events_;
    }

private:
    mutable std::mutex mu_;
    std::vector<TraceEvent<T>> events_;
};

namespace detail {

inline std::vector<std::size_t> iota(std::size_t begin, std::size_t end) {
    std::vector<std::size_t> v(end - begin);
    std::iota(v.begin(), v.end(), begin);
    return v;
}

template <Domain T>
Factorization<T> make(std::vector<std::size_t> rows, std::vector<std::size_t> cols, Matrix<T> L, Matrix<T> U,
                      std::vector<T> alphas, Matrix<T> M, Matrix<T> W, T alpha) {
    return {Permutation::from_order(rows), std::move(L), std::move(alphas), std::move(U),
            Permutation(std::move(cols)), std::move(M), std::move(W), std::move(alpha)};
}

template <Domain T>
Factorization<T> identity_factorization(std::size_t n, std::size_t m, const T& alpha) {
    return {Permutation::identity(n), Matrix<T>::identity(n), {}, Matrix<T>::identity(m),
            Permutation::identity(m), Matrix<T>(0, 0), Matrix<T>(0, 0), alpha};
}

// Wrappers growing a factorization by zero rows/columns. The
// zero lines become non-pivots, merged in increasing index order.

/// `z` zero rows above the factored block.
template <Domain T>
Factorization<T> wrap_top_zero(const Factorization<T>& f, std::size_t z) {
    if (z == 0) return f;
    const auto r = f.rank();
    auto order = f.row_order();
    std::vector<std::size_t> rows;
    rows.reserve(order.size() + z);
    for (std::size_t t = 0; t < r; ++t) rows.push_back(order[t] + z);
    for (std::size_t i = 0; i < z; ++i) rows.push_back(i);
    for (std::size_t t = r; t < order.size(); ++t) rows.push_back(order[t] + z);
    Factorization<T> g = f;
    g.P = Permutation::from_order(rows);
    g.L = insert_identity(f.L, r, z);
    return g;
}

/// `z` zero rows below the factored block.
template <Domain T>
Factorization<T> wrap_bottom_zero(const Factorization<T>& f, std::size_t z) {
    if (z == 0) return f;
    auto rows = f.row_order();
    const auto n = rows.size();
    for (std::size_t i = 0; i < z; ++i) rows.push_back(n + i);
    Factorization<T> g = f;
    g.P = Permutation::from_order(rows);
    g.L = insert_identity(f.L, n, z);
    return g;
}

/// `z` zero columns left of the factored block.
template <Domain T>
Factorization<T> wrap_left_zero(const Factorization<T>& f, std::size_t z) {
    if (z == 0) return f;
    const auto r = f.rank();
    auto order = f.col_order();
    std::vector<std::size_t> cols;
    cols.reserve(order.size() + z);
    for (std::size_t t = 0; t < r; ++t) cols.push_back(order[t] + z);
    for (std::size_t j = 0; j < z; ++j) cols.push_back(j);
    for (std::size_t t = r; t < order.size(); ++t) cols.push_back(order[t] + z);
    Factorization<T> g = f;
    g.Q = Permutation(std::move(cols));
    g.U = insert_identity(f.U, r, z);
    return g;
}

/// `z` zero columns right of the factored block.
template <Domain T>
Factorization<T> wrap_right_zero(const Factorization<T>& f, std::size_t z) {
    if (z == 0) return f;
    auto cols = f.col_order();
    const auto m = cols.size();
    for (std::size_t j = 0; j < z; ++j) cols.push_back(m + j);
    Factorization<T> g = f;
    g.Q = Permutation(std::move(cols));
    g.U = insert_identity(f.U, m, z);
    return g;
}

/// Factorization of λ·X with context α_to from one of X with context α_from,
/// λ = α_to/α_from. Everything of degree one in the input scales by λ; the
/// identity padding does not.
template <Domain T>
Factorization<T> rescale(const Factorization<T>& f, const T& alpha_from, const T& alpha_to) {
    if (alpha_from == alpha_to) {
        Factorization<T> same = f;
        same.alpha_context = alpha_to;
        return same;
    }
    auto scale = [&](const T& v) { return exact_div(T(v * alpha_to), alpha_from); };
    Factorization<T> g = f;
    const auto r = f.rank();
    for (std::size_t i = 0; i < g.L.rows(); ++i)
        for (std::size_t j = 0; j < r && j <= i; ++j) g.L(i, j) = scale(g.L(i, j));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i; j < g.U.cols(); ++j) g.U(i, j) = scale(g.U(i, j));
    for (auto& a : g.alphas) a = scale(a);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            g.M(i, j) = scale(g.M(i, j));
            g.W(i, j) = scale(g.W(i, j));
        }
    g.alpha_context = alpha_to;
    return g;
}

/// Ũ = M·B/α, L̃ = C·W/α and the next Schur block (α_r/α)(D - L̃·D_r·Ũ),
/// the latter evaluated as r fraction-free rank-one steps
///   T_t = (α_t·T_{t-1} - L̃[:,t]·Ũ[t,:]) / α_{t-1},  T_0 = D, α_0 = α,
/// each of which is a matrix of minors, so every division is exact.
template <Domain T>
struct SchurResult {
    Matrix<T> U_tilde;
    Matrix<T> L_tilde;
    Matrix<T> next;
};

template <Domain T>
SchurResult<T> schur_update_impl(const Matrix<T>& B, const Matrix<T>& C, const Matrix<T>& M, const Matrix<T>& W,
                                 const Matrix<T>& D, const T& alpha, const std::vector<T>& alphas) {
    const std::size_t r = alphas.size();
    if (M.rows() != r || W.rows() != r || B.rows() != r || C.cols() != r || D.rows() != C.rows()
        || D.cols() != B.cols())
        throw DimensionError("schur_update: blocks are not conformable");
    SchurResult<T> out{mat_mul(M, B).divided(alpha), mat_mul(C, W).divided(alpha), D};
    const auto& Ut = out.U_tilde;
    const auto& Lt = out.L_tilde;
    Matrix<T>& next = out.next;
    T prev = alpha;
    T tmp;
    for (std::size_t t = 0; t < r; ++t) {
        const T& at = alphas[t];
        for (std::size_t i = 0; i < next.rows(); ++i) {
            const T& l = Lt(i, t);
            const bool l_zero = is_zero(l);
            for (std::size_t j = 0; j < next.cols(); ++j) {
                T& v = next(i, j);
                tmp = at * v;
                if (!l_zero) tmp -= l * Ut(t, j);
                v = exact_div(tmp, prev);
            }
        }
        prev = at;
    }
    return out;
}

template <Domain T>
class Engine {
public:
    explicit Engine(const LduOptions<T>& opt) : opt_(opt) {}

    using Provider = std::function<Factorization<T>(const Matrix<T>&, const T&)>;

    Factorization<T> run(const Matrix<T>& x, const T& alpha, std::size_t depth) const {
        Factorization<T> f = dispatch(x, alpha, depth);
        emit(TraceEvent<T>::Kind::factor, depth, alpha, x, f);
        return f;
    }

    Factorization<T> dispatch(const Matrix<T>& x, const T& alpha, std::size_t depth) const {
        const std::size_t n = x.rows(), m = x.cols();
        if (x.is_zero()) return identity_factorization<T>(n, m, alpha);
        std::size_t s = 1;
        if (n == 1 || m == 1) {
            if (!is_zero(x(0, 0))) return base_single_line(x, alpha);
        } else {
            s = opt_.policy.choose(n, m, depth);
        }
        return split(x, s, alpha, depth);
    }

    static Factorization<T> base_single_line(const Matrix<T>& x, const T& alpha) {
        const std::size_t n = x.rows(), m = x.cols();
        if (n != 1 && m != 1) throw std::invalid_argument("base_single_line: block is not a single row or column");
        const T& a = x(0, 0);
        if (is_zero(a)) throw std::invalid_argument("base_single_line: leading entry is zero");
        auto L = Matrix<T>::identity(n);
        auto U = Matrix<T>::identity(m);
        L(0, 0) = a;
        U(0, 0) = a;
        if (m == 1)
            for (std::size_t i = 1; i < n; ++i) L(i, 0) = x(i, 0);
        if (n == 1)
            for (std::size_t j = 1; j < m; ++j) U(0, j) = x(0, j);
        return make<T>(iota(0, n), iota(0, m), std::move(L), std::move(U), {a}, Matrix<T>{{alpha}},
                       Matrix<T>{{alpha}}, alpha);
    }

    /// Block partition at s and dispatch among zero-block cases and the general step.
    Factorization<T> split(const Matrix<T>& x, std::size_t s, const T& alpha, std::size_t depth) const {
        const std::size_t n = x.rows(), m = x.cols();
        const bool zA = submatrix(x, {0, s}, {0, s}).is_zero();
        const bool zB = submatrix(x, {0, s}, {s, m}).is_zero();
        const bool zC = submatrix(x, {s, n}, {0, s}).is_zero();
        const bool zD = submatrix(x, {s, n}, {s, m}).is_zero();
        if (zA) return zero_a(x, s, alpha, depth, zB, zC, zD);
        if (n > s && zC && zD) return half_zero(x, s, alpha, depth, HalfZero::bottom);
        if (m > s && zB && zD) return half_zero(x, s, alpha, depth, HalfZero::right);
        return general(x, s, alpha, depth, zB, zC);
    }

    enum class HalfZero { bottom, top, right, left };

    Factorization<T> half_zero(const Matrix<T>& x, std::size_t s, const T& alpha, std::size_t depth,
                               HalfZero which) const {
        const std::size_t n = x.rows(), m = x.cols();
        switch (which) {
            case HalfZero::bottom:
                return wrap_bottom_zero(run(submatrix(x, {0, s}, {0, m}), alpha, depth + 1), n - s);
            case HalfZero::top:
                return wrap_top_zero(run(submatrix(x, {s, n}, {0, m}), alpha, depth + 1), s);
            case HalfZero::right:
                return wrap_right_zero(run(submatrix(x, {0, n}, {0, s}), alpha, depth + 1), m - s);
            case HalfZero::left:
                return wrap_left_zero(run(submatrix(x, {0, n}, {s, m}), alpha, depth + 1), s);
        }
        throw std::logic_error("half_zero: bad case");
    }

    /// Leading s x s block is zero.
    Factorization<T> zero_a(const Matrix<T>& x, std::size_t s, const T& alpha, std::size_t depth, bool zB, bool zC,
                            bool zD) const {
        const std::size_t n = x.rows(), m = x.cols();
        if (!zC) {
            if (zB) return half_zero(x, s, alpha, depth, HalfZero::top);
            return zero_a_both(x, s, alpha, depth);
        }
        if (!zB) return half_zero(x, s, alpha, depth, HalfZero::left);
        if (!zD) {
            auto fd = run(submatrix(x, {s, n}, {s, m}), alpha, depth + 1);
            return wrap_left_zero(wrap_top_zero(fd, s), s);
        }
        return identity_factorization<T>(n, m, alpha);
    }

    /// [[0, B], [C, D]] with B and C nonzero. C and B are factored
    /// independently. C's pivots are eliminated first (its columns are zero
    /// above it); the remaining rows, B's rows followed by C's non-pivot rows,
    /// form [[0, λB], [0, Y]], which is finished with B's factorization
    /// rescaled by λ = α_c/α.
    Factorization<T> zero_a_both(const Matrix<T>& x, std::size_t s, const T& alpha, std::size_t depth) const {
        const std::size_t n = x.rows(), m = x.cols();
        auto c_block = submatrix(x, {s, n}, {0, s});
        auto b_block = submatrix(x, {0, s}, {s, m});
        auto [fc, fb] = both(
            [&] { return run(c_block, alpha, depth + 1); }, [&] { return run(b_block, alpha, depth + 1); }, depth);
        auto left = wrap_top_zero(fc, s);
        const std::size_t zc = s - fc.rank();
        Provider finish = [&, zc](const Matrix<T>& next, const T& alpha_c) {
            if (!submatrix(next, {0, next.rows()}, {0, zc}).is_zero())
                throw std::logic_error("zero_a_both: eliminated columns are not zero");
            auto t = submatrix(next, {0, next.rows()}, {zc, next.cols()});
            auto fbs = rescale(fb, alpha, alpha_c);
            emit(TraceEvent<T>::Kind::scaled, depth + 1, alpha, b_block, fbs);
            Provider rest = [&](const Matrix<T>& nx, const T& a) { return run(nx, a, depth + 2); };
            auto ft = eliminate(t, s, m - s, fbs, alpha_c, rest, depth + 1);
            emit(TraceEvent<T>::Kind::factor, depth + 1, alpha_c, t, ft);
            return wrap_left_zero(ft, zc);
        };
        return eliminate(x, n, s, left, alpha, finish, depth);
    }

    /// Leading block nonzero. When B or C is zero the D block is independent
    /// of the leading block's factorization and may be factored alongside it.
    Factorization<T> general(const Matrix<T>& x, std::size_t s, const T& alpha, std::size_t depth, bool zB,
                             bool zC) const {
        const std::size_t n = x.rows(), m = x.cols();
        auto a_block = submatrix(x, {0, s}, {0, s});
        const bool independent_d = zB || zC;
        auto d_block = independent_d ? submatrix(x, {s, n}, {s, m}) : Matrix<T>();
        std::optional<Factorization<T>> fd;
        Factorization<T> f0;
        if (independent_d && concurrent(depth)) {
            std::tie(f0, fd) = both([&] { return run(a_block, alpha, depth + 1); },
                                    [&] { return run(d_block, alpha, depth + 1); }, depth);
        } else {
            f0 = run(a_block, alpha, depth + 1);
        }
        auto get_fd = [&]() -> const Factorization<T>& {
            if (!fd) fd = run(d_block, alpha, depth + 1);
            return *fd;
        };
        const std::size_t rho = f0.rank();
        Provider next_factor = [&](const Matrix<T>& next, const T& alpha_r) {
            if (independent_d) {
                if (rho == s) {
                    // next == λ·D exactly
                    auto f = rescale(get_fd(), alpha, alpha_r);
                    emit(TraceEvent<T>::Kind::scaled, depth + 1, alpha, d_block, f);
                    return f;
                }
                // next == [[0, X2], [X3, λ·D]]; X3 = 0 when C = 0, X2 = 0 when B = 0.
                // D's factorization is reusable only if the other one vanishes too.
                const std::size_t z = s - rho;
                bool x2 = submatrix(next, {0, z}, {z, next.cols()}).is_zero();
                bool x3 = submatrix(next, {z, next.rows()}, {0, z}).is_zero();
                if (x2 && x3) {
                    auto f = rescale(get_fd(), alpha, alpha_r);
                    emit(TraceEvent<T>::Kind::scaled, depth + 1, alpha, d_block, f);
                    return wrap_left_zero(wrap_top_zero(f, z), z);
                }
            }
            return run(next, alpha_r, depth + 1);
        };
        return eliminate(x, s, s, f0, alpha, next_factor, depth);
    }

    /// One elimination step. f0 factors the leading a x b block of x; its
    /// pivots are eliminated from the remaining rows/columns (kept in
    /// increasing order) and the Schur block is factored by `next_factor`.
    Factorization<T> eliminate(const Matrix<T>& x, std::size_t a, std::size_t b, const Factorization<T>& f0,
                               const T& alpha, const Provider& next_factor, std::size_t depth) const {
        const std::size_t n = x.rows(), m = x.cols();
        const std::size_t rho = f0.rank();
        if (rho == 0) throw std::logic_error("eliminate: leading block has rank zero");
        auto r0 = f0.row_order();
        auto c0 = f0.col_order();
        std::vector<std::size_t> piv_rows(r0.begin(), r0.begin() + rho), other_rows(r0.begin() + rho, r0.end());
        std::vector<std::size_t> piv_cols(c0.begin(), c0.begin() + rho), other_cols(c0.begin() + rho, c0.end());
        for (std::size_t i = a; i < n; ++i) other_rows.push_back(i);
        for (std::size_t j = b; j < m; ++j) other_cols.push_back(j);

        auto sr = schur_update_impl(select(x, piv_rows, other_cols), select(x, other_rows, piv_cols), f0.M, f0.W,
                                    select(x, other_rows, other_cols), alpha, f0.alphas);
        const T& alpha_r = f0.alphas.back();
        emit(TraceEvent<T>::Kind::schur, depth + 1, alpha_r, sr.next, std::nullopt);
        Factorization<T> f1 = sr.next.is_zero()
                                  ? identity_factorization<T>(other_rows.size(), other_cols.size(), alpha_r)
                                  : next_factor(sr.next, alpha_r);
        return assemble(f0, f1, sr.U_tilde, sr.L_tilde, piv_rows, other_rows, piv_cols, other_cols, alpha);
    }

    /// L, U from the two levels; M, W lower-left/upper-right blocks from
    ///   Z·L_r = -M1·(P1ᵀL̃)   and   U_r·Z = -(Ũ·Q1ᵀ)·W1,
    /// i.e. the block inverse formulas with D_r·M_r = α·L_r⁻¹ and
    /// W_r·D_r = α·U_r⁻¹ substituted. Divisions are by the pivots α_t.
    static Factorization<T> assemble(const Factorization<T>& f0, const Factorization<T>& f1, const Matrix<T>& Ut,
                                     const Matrix<T>& Lt, const std::vector<std::size_t>& piv_rows,
                                     const std::vector<std::size_t>& other_rows,
                                     const std::vector<std::size_t>& piv_cols,
                                     const std::vector<std::size_t>& other_cols, const T& alpha) {
        const std::size_t rho = f0.rank(), r1 = f1.rank(), R = rho + r1;
        const std::size_t n = piv_rows.size() + other_rows.size(), m = piv_cols.size() + other_cols.size();
        if (Lt.rows() != f1.rows() || Ut.cols() != f1.cols()) throw DimensionError("assemble: sub-factorization shape");
        auto o1r = f1.row_order();
        auto o1c = f1.col_order();

        std::vector<std::size_t> rows = piv_rows, cols = piv_cols;
        for (auto i : o1r) rows.push_back(other_rows[i]);
        for (auto j : o1c) cols.push_back(other_cols[j]);

        Matrix<T> L(n, n), U(m, m);
        for (std::size_t i = 0; i < rho; ++i)
            for (std::size_t j = 0; j <= i; ++j) L(i, j) = f0.L(i, j);
        for (std::size_t i = 0; i < o1r.size(); ++i) {
            for (std::size_t j = 0; j < rho; ++j) L(rho + i, j) = Lt(o1r[i], j);
            for (std::size_t j = 0; j <= i; ++j) L(rho + i, rho + j) = f1.L(i, j);
        }
        for (std::size_t i = 0; i < rho; ++i) {
            for (std::size_t j = i; j < rho; ++j) U(i, j) = f0.U(i, j);
            for (std::size_t j = 0; j < o1c.size(); ++j) U(i, rho + j) = Ut(i, o1c[j]);
        }
        for (std::size_t i = 0; i < o1c.size(); ++i)
            for (std::size_t j = i; j < o1c.size(); ++j) U(rho + i, rho + j) = f1.U(i, j);

        std::vector<T> alphas = f0.alphas;
        alphas.insert(alphas.end(), f1.alphas.begin(), f1.alphas.end());

        Matrix<T> M(R, R), W(R, R);
        for (std::size_t i = 0; i < rho; ++i)
            for (std::size_t j = 0; j < rho; ++j) {
                M(i, j) = f0.M(i, j);
                W(i, j) = f0.W(i, j);
            }
        for (std::size_t i = 0; i < r1; ++i)
            for (std::size_t j = 0; j < r1; ++j) {
                M(rho + i, rho + j) = f1.M(i, j);
                W(rho + i, rho + j) = f1.W(i, j);
            }
        if (r1 > 0) {
            Matrix<T> X1(r1, rho), Y1(rho, r1);
            for (std::size_t i = 0; i < r1; ++i)
                for (std::size_t j = 0; j < rho; ++j) {
                    X1(i, j) = L(rho + i, j);
                    Y1(j, i) = U(j, rho + i);
                }
            auto G = mat_mul(f1.M, X1);
            auto H = mat_mul(Y1, f1.W);
            T acc;
            for (std::size_t jj = rho; jj-- > 0;)
                for (std::size_t i = 0; i < r1; ++i) {
                    acc = -G(i, jj);
                    for (std::size_t l = jj + 1; l < rho; ++l) acc -= M(rho + i, l) * f0.L(l, jj);
                    M(rho + i, jj) = exact_div(acc, f0.L(jj, jj));
                }
            for (std::size_t ii = rho; ii-- > 0;)
                for (std::size_t j = 0; j < r1; ++j) {
                    acc = -H(ii, j);
                    for (std::size_t l = ii + 1; l < rho; ++l) acc -= f0.U(ii, l) * W(l, rho + j);
                    W(ii, rho + j) = exact_div(acc, f0.U(ii, ii));
                }
        }
        return make<T>(std::move(rows), std::move(cols), std::move(L), std::move(U), std::move(alphas), std::move(M),
                       std::move(W), alpha);
    }

    /// Permutation-free recursion; throws ZeroPivot on a vanishing leading minor.
    Factorization<T> strongly_regular(const Matrix<T>& x, const T& alpha, std::size_t depth) const {
        const std::size_t n = x.rows();
        if (n != x.cols()) throw DimensionError("strongly_regular_ldu: block is not square");
        Factorization<T> f;
        if (n == 1) {
            if (is_zero(x(0, 0))) throw ZeroPivot("zero leading minor");
            f = base_single_line(x, alpha);
        } else if (n == 2) {
            f = base_2x2(x, alpha);
        } else {
            const std::size_t s = opt_.policy.choose(n, n, depth);
            auto f0 = strongly_regular(submatrix(x, {0, s}, {0, s}), alpha, depth + 1);
            Provider rest = [&](const Matrix<T>& next, const T& a) { return strongly_regular(next, a, depth + 1); };
            f = eliminate(x, s, s, f0, alpha, rest, depth);
        }
        emit(TraceEvent<T>::Kind::factor, depth, alpha, x, f);
        return f;
    }

    /// Closed form for a 2x2 block with both leading minors nonzero.
    static Factorization<T> base_2x2(const Matrix<T>& x, const T& alpha) {
        if (x.rows() != 2 || x.cols() != 2) throw DimensionError("base_2x2: block is not 2x2");
        const T& a = x(0, 0);
        const T& beta = x(0, 1);
        const T& gamma = x(1, 0);
        const T& delta = x(1, 1);
        if (is_zero(a)) throw ZeroPivot("zero leading entry");
        T det = a * delta - beta * gamma;
        T a2 = exact_div(det, alpha);
        if (is_zero(a2)) throw ZeroPivot("singular 2x2 block");
        Matrix<T> L{{a, T(0)}, {gamma, a2}};
        Matrix<T> U{{a, beta}, {T(0), a2}};
        Matrix<T> M{{alpha, T(0)}, {T(-gamma), a}};
        Matrix<T> W{{alpha, T(-beta)}, {T(0), a}};
        return make<T>(iota(0, 2), iota(0, 2), std::move(L), std::move(U), {a, a2}, std::move(M), std::move(W), alpha);
    }

    bool concurrent(std::size_t depth) const { return opt_.parallel && depth < opt_.parallel_depth; }

    void emit(typename TraceEvent<T>::Kind kind, std::size_t depth, const T& alpha, const Matrix<T>& block,
              std::optional<Factorization<T>> f) const {
        if (opt_.trace) opt_.trace(TraceEvent<T>{kind, depth, alpha, block, std::move(f)});
    }

private:
    /// Evaluates two independent computations, concurrently when allowed.
    template <typename F1, typename F2>
    auto both(F1&& first, F2&& second, std::size_t depth) const {
        using R1 = decltype(first());
        using R2 = decltype(second());
        if (concurrent(depth)) {
            std::future<R2> fut = std::async(std::launch::async, std::forward<F2>(second));
            R1 r1 = first();
            return std::pair<R1, R2>(std::move(r1), fut.get());
        }
        R1 r1 = first();
        R2 r2 = second();
        return std::pair<R1, R2>(std::move(r1), std::move(r2));
    }

    const LduOptions<T>& opt_;
};

}  // namespace detail

/// Full decomposition of a rows x cols matrix with context α = 1.
template <Domain T>
Factorization<T> decompose(const Matrix<T>& a, const LduOptions<T>& opt = {}) {
    detail::Engine<T> engine(opt);
    const T one = DomainTraits<T>::one();
    if (opt.strongly_regular_first && a.rows() == a.cols() && a.rows() > 0) {
        try {
            return engine.strongly_regular(a, one, 0);
        } catch (const ZeroPivot&) {
        }
    }
    return engine.run(a, one, 0);
}

/// Decomposes a block of minors with context α^k; with ctx.lambda set the
/// result is rescaled from context lambda->second to lambda->first.
template <Domain T>
Factorization<T> ldu_rec(const Matrix<T>& block, const RecursionContext<T>& ctx, const LduOptions<T>& opt = {}) {
    detail::Engine<T> engine(opt);
    auto f = engine.run(block, ctx.alpha_k, ctx.k);
    if (ctx.lambda) f = detail::rescale(f, ctx.lambda->second, ctx.lambda->first);
    return f;
}

template <Domain T>
Factorization<T> base_single_line(const Matrix<T>& block, const T& alpha) {
    return detail::Engine<T>::base_single_line(block, alpha);
}

template <Domain T>
Factorization<T> base_2x2(const Matrix<T>& block, const T& alpha) {
    return detail::Engine<T>::base_2x2(block, alpha);
}

/// Ũ = M·B/α, L̃ = C·W/α and the next block (α_r/α)·(D - L̃·D_r·Ũ).
template <Domain T>
detail::SchurResult<T> schur_update(const Matrix<T>& B, const Matrix<T>& C, const Matrix<T>& D,
                                    const Factorization<T>& leading) {
    const std::size_t r = leading.rank();
    return detail::schur_update_impl(submatrix(B, {0, r}, {0, B.cols()}), submatrix(C, {0, C.rows()}, {0, r}),
                                     leading.M, leading.W, D, leading.alpha_context, leading.alphas);
}

/// Combines the factorization of the leading s x s block (sub1) with that of
/// the Schur block (sub2; identity when absent).
template <Domain T>
Factorization<T> assemble_general(const Factorization<T>& sub1, const std::optional<Factorization<T>>& sub2,
                                  const Matrix<T>& U_tilde, const Matrix<T>& L_tilde, std::size_t s) {
    const std::size_t rho = sub1.rank();
    const std::size_t n = rho + L_tilde.rows(), m = rho + U_tilde.cols();
    auto r0 = sub1.row_order();
    auto c0 = sub1.col_order();
    std::vector<std::size_t> piv_rows(r0.begin(), r0.begin() + rho), other_rows(r0.begin() + rho, r0.end());
    std::vector<std::size_t> piv_cols(c0.begin(), c0.begin() + rho), other_cols(c0.begin() + rho, c0.end());
    for (std::size_t i = s; i < n; ++i) other_rows.push_back(i);
    for (std::size_t j = s; j < m; ++j) other_cols.push_back(j);
    auto f1 = sub2 ? *sub2
                   : detail::identity_factorization<T>(other_rows.size(), other_cols.size(),
                                                       rho ? sub1.alphas.back() : sub1.alpha_context);
    return detail::Engine<T>::assemble(sub1, f1, U_tilde, L_tilde, piv_rows, other_rows, piv_cols, other_cols,
                                       sub1.alpha_context);
}

/// Factorization of λ·D with context α^s from D with context α^k, λ = α^s/α^k.
template <Domain T>
Factorization<T> scaled_subproblem(const Matrix<T>& D_block, const T& alpha_k, const T& alpha_s,
                                   const LduOptions<T>& opt = {}) {
    detail::Engine<T> engine(opt);
    return detail::rescale(engine.run(D_block, alpha_k, 0), alpha_k, alpha_s);
}

/// Block with zero leading s x s part.
template <Domain T>
Factorization<T> zero_A_dispatch(const Matrix<T>& block, std::size_t s, const T& alpha,
                                 const LduOptions<T>& opt = {}) {
    const std::size_t n = block.rows(), m = block.cols();
    if (s == 0 || s > n || s > m || !submatrix(block, {0, s}, {0, s}).is_zero())
        throw std::invalid_argument("zero_A_dispatch: leading block is not zero");
    detail::Engine<T> engine(opt);
    return engine.zero_a(block, s, alpha, 0, submatrix(block, {0, s}, {s, m}).is_zero(),
                         submatrix(block, {s, n}, {0, s}).is_zero(), submatrix(block, {s, n}, {s, m}).is_zero());
}

/// Block whose bottom (C = D = 0) or right (B = D = 0) half is zero.
template <Domain T>
Factorization<T> half_zero_dispatch(const Matrix<T>& block, std::size_t s, const T& alpha,
                                    const LduOptions<T>& opt = {}) {
    const std::size_t n = block.rows(), m = block.cols();
    if (s == 0 || s > n || s > m) throw std::invalid_argument("half_zero_dispatch: bad split");
    detail::Engine<T> engine(opt);
    using HZ = typename detail::Engine<T>::HalfZero;
    if (submatrix(block, {s, n}, {0, m}).is_zero()) return engine.half_zero(block, s, alpha, 0, HZ::bottom);
    if (submatrix(block, {0, n}, {s, m}).is_zero()) return engine.half_zero(block, s, alpha, 0, HZ::right);
    if (submatrix(block, {0, s}, {0, m}).is_zero()) return engine.half_zero(block, s, alpha, 0, HZ::top);
    if (submatrix(block, {0, n}, {0, s}).is_zero()) return engine.half_zero(block, s, alpha, 0, HZ::left);
    throw std::invalid_argument("half_zero_dispatch: no zero half");
}

/// Permutation-free path for strongly regular square blocks.
template <Domain T>
Factorization<T> strongly_regular_ldu(const Matrix<T>& block, const T& alpha = DomainTraits<T>::one(),
                                      const LduOptions<T>& opt = {}) {
    detail::Engine<T> engine(opt);
    return engine.strongly_regular(block, alpha, 0);
}

}  // namespace fftd

#endif
