#ifndef FFTD_TESTS_SUPPORT_HPP
#define FFTD_TESTS_SUPPORT_HPP

#include "fftd/derive.hpp"
#include "fftd/oracle.hpp"

#include <random>

namespace fftd::testing {

/// The 6x6 6x6 reference example.
inline Matrix<BigInt> example6() {
    return {{3, 2, 3, 5, 1, 2}, {1, 3, 4, 2, 3, 4}, {3, 2, 3, 5, 5, 6},
            {1, 3, 4, 2, 2, 1}, {2, 1, 3, 2, 2, 3}, {2, 1, 3, 2, 2, 3}};
}

inline Matrix<BigInt> example6_P() {
    return {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0},
            {0, 0, 0, 0, 1, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 0, 0, 1}};
}

inline Matrix<BigInt> example6_L() {
    return {{3, 0, 0, 0, 0, 0},  {1, 7, 0, 0, 0, 0},    {2, -1, 10, 0, 0, 0},
            {3, 0, 0, 40, 0, 0}, {1, 7, 0, -10, -80, 0}, {2, -1, 10, 0, 0, 1}};
}

inline Matrix<BigInt> example6_U() {
    return {{3, 2, 3, 1, 2, 5},   {0, 7, 9, 8, 10, 1},  {0, 0, 10, 12, 15, -9},
            {0, 0, 0, 40, 40, 0}, {0, 0, 0, 0, -80, 0}, {0, 0, 0, 0, 0, 1}};
}

inline Matrix<BigInt> example6_Q() {
    return {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0},
            {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}, {0, 0, 0, 1, 0, 0}};
}

/// The opening display: A = 𝓛·𝓓·𝓤.
inline Matrix<BigInt> example6_script_L() {
    return {{3, 0, 0, 0, 0, 0},     {1, 7, 0, 0, 0, 0},   {3, 0, 40, 0, 0, 0},
            {1, 7, -10, -80, 0, 0}, {2, -1, 0, 0, 10, 0}, {2, -1, 0, 0, 10, 1}};
}

inline Matrix<BigInt> example6_script_U() {
    return {{3, 2, 3, 5, 1, 2},  {0, 7, 9, 1, 8, 10},   {0, 0, 10, -9, 12, 15},
            {0, 0, 0, 1, 0, 0},  {0, 0, 0, 0, 40, 40}, {0, 0, 0, 0, 0, -80}};
}

inline FractionMatrix<BigInt> example6_script_D() {
    using F = Fraction<BigInt>;
    FractionMatrix<BigInt> d(6, 6);
    d(0, 0) = F(1, 3);
    d(1, 1) = F(1, 21);
    d(2, 4) = F(1, 400);
    d(3, 5) = F(-1, 3200);
    d(4, 2) = F(1, 70);
    return d;
}

template <Domain T>
Matrix<T> random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t m, int lo, int hi,
                        double zero_fraction = 0.0) {
    std::uniform_int_distribution<int> dist(lo, hi);
    std::bernoulli_distribution zero(zero_fraction);
    Matrix<T> a(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) a(i, j) = DomainTraits<T>::from_int(zero(rng) ? 0 : dist(rng));
    return a;
}

/// Product of random n x k and k x m factors: rank at most k.
template <Domain T>
Matrix<T> random_low_rank(std::mt19937_64& rng, std::size_t n, std::size_t m, std::size_t k, int lo, int hi) {
    return mat_mul(random_matrix<T>(rng, n, k, lo, hi), random_matrix<T>(rng, k, m, lo, hi));
}

/// Random matrix whose leading principal minors are all nonzero.
template <Domain T>
Matrix<T> random_strongly_regular(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
    for (;;) {
        auto a = random_matrix<T>(rng, n, n, lo, hi);
        bool ok = true;
        for (std::size_t k = 1; k <= n && ok; ++k) ok = !is_zero(leading_minor(a, k));
        if (ok) return a;
    }
}

/// Mixed corpus: dense, sparse, low-rank, and non-square shapes of size 1..max_size.
inline std::vector<Matrix<BigInt>> corpus(std::uint64_t seed, std::size_t count, std::size_t max_size = 7) {
    std::mt19937_64 rng(seed);
    std::vector<Matrix<BigInt>> out;
    for (std::size_t c = 0; c < count; ++c) {
        std::size_t n = 1 + rng() % max_size, m = 1 + rng() % max_size;
        switch (c % 4) {
            case 0: out.push_back(random_matrix<BigInt>(rng, n, m, -9, 9)); break;
            case 1: out.push_back(random_matrix<BigInt>(rng, n, m, -2, 2, 0.5)); break;
            case 2: out.push_back(random_low_rank<BigInt>(rng, n, m, 1 + rng() % std::min(n, m), -3, 3)); break;
            default: out.push_back(random_matrix<BigInt>(rng, n, m, -1, 1, 0.75)); break;
        }
    }
    return out;
}

}  // namespace fftd::testing

#endif
