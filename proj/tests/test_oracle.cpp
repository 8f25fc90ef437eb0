#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace fftd;
using namespace fftd::testing;
using Z = BigInt;

TEST_CASE("minors of the 6x6 reference example") {
    auto a = example6();
    CHECK(minor(a, MinorSpec{{0, 1}, {0, 1}}) == 7);
    CHECK(minor(a, MinorSpec{{0}, {0}}) == 3);
    CHECK(minor(a, MinorSpec{}) == 1);
    CHECK_THROWS_AS(minor(a, MinorSpec{{1, 0}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(minor(a, MinorSpec{{0, 1}, {0}}), std::invalid_argument);
    CHECK_THROWS_AS(minor(a, MinorSpec{{0, 6}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("cofactor expansion agrees with elimination") {
    std::mt19937_64 rng(1);
    for (int it = 0; it < 200; ++it) {
        auto a = random_matrix<Z>(rng, 7, 7, -9, 9, it % 3 ? 0.0 : 0.4);
        std::size_t k = 1 + rng() % 6;
        MinorSpec spec;
        for (std::size_t i = 0; i < 7; ++i) {
            if (spec.rows.size() < k && rng() % 2) spec.rows.push_back(i);
            if (spec.cols.size() < k && rng() % 2) spec.cols.push_back(i);
        }
        std::size_t i = 0;
        while (spec.rows.size() < k) {
            if (std::find(spec.rows.begin(), spec.rows.end(), i) == spec.rows.end()) spec.rows.push_back(i);
            ++i;
        }
        i = 0;
        while (spec.cols.size() < k) {
            if (std::find(spec.cols.begin(), spec.cols.end(), i) == spec.cols.end()) spec.cols.push_back(i);
            ++i;
        }
        std::sort(spec.rows.begin(), spec.rows.end());
        std::sort(spec.cols.begin(), spec.cols.end());
        CHECK(minor(a, spec) == elimination_det(select(a, spec.rows, spec.cols)));
    }
    auto big = random_matrix<Z>(rng, 8, 8, -3, 3);
    MinorSpec all{{0, 1, 2, 3, 4, 5, 6, 7}, {0, 1, 2, 3, 4, 5, 6, 7}};
    CHECK_THROWS_AS(minor(big, all), std::invalid_argument);
    CHECK(minor(big, all, 8) == elimination_det(big));
}

TEST_CASE("minors matrix") {
    auto a = example6();
    CHECK(minors_matrix(a, 0, 6, 6) == a);
    CHECK(minors_matrix(a, 1, 2, 2) == Matrix<Z>{{7}});
    CHECK(minors_matrix(Matrix<Z>{{2, 0}, {0, 3}}, 1, 2, 2) == Matrix<Z>{{6}});
    CHECK_THROWS_AS(minors_matrix(a, 2, 2, 3), std::invalid_argument);
    // the level-two Schur block of the 6x6 reference example
    CHECK(minors_matrix(a, 2, 6, 6) == Matrix<Z>{{0, 0, 28, 28}, {0, 0, -7, -21}, {10, -9, 12, 15}, {10, -9, 12, 15}});
}

TEST_CASE("sylvester identity") {
    auto v = sylvester_check(Matrix<Z>{{3, 2}, {1, 3}}, 0, 2);
    CHECK(v.holds);
    CHECK(v.lhs == "7");
    CHECK(sylvester_check(example6(), 1, 2).holds);
    std::mt19937_64 rng(2);
    for (int it = 0; it < 100; ++it) {
        std::size_t n = 1 + rng() % 5;
        auto a = random_strongly_regular<Z>(rng, n, -9, 9);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t s = k + 1; s <= n; ++s) CHECK(sylvester_check(a, k, s).holds);
    }
    CHECK_THROWS_AS(sylvester_check(Matrix<Z>{{0, 1}, {1, 0}}, 1, 2), std::invalid_argument);
}

TEST_CASE("rank oracle") {
    CHECK(rank_oracle(example6()) == 5);
    CHECK(rank_oracle(Matrix<Z>(3, 4)) == 0);
    CHECK(rank_oracle(Matrix<Z>::identity(5)) == 5);
    CHECK(rank_oracle(Matrix<Z>{{1, 2}, {2, 4}, {3, 6}}) == 1);
}

TEST_CASE("verify on reference and perturbed factors") {
    auto a = example6();
    Factorization<Z> f;
    f.P = Permutation({0, 1, 3, 4, 2, 5});
    f.Q = Permutation({0, 1, 2, 4, 5, 3});
    f.L = example6_L();
    f.U = example6_U();
    f.alphas = {3, 7, 10, 40, -80};
    f.M = decompose(a).M;
    f.W = decompose(a).W;
    REQUIRE(f.P.to_matrix<Z>() == example6_P());
    REQUIRE(f.Q.to_matrix<Z>() == example6_Q());
    auto rep = verify(a, f);
    INFO(rep.summary());
    CHECK(rep.ok());

    auto bad = f;
    bad.L(4, 1) += 1;
    auto r2 = verify(a, bad);
    CHECK_FALSE(r2.ok());
    CHECK_FALSE(r2.items[0].pass);
    CHECK(r2.items[0].detail.find("at (") != std::string::npos);

    auto i = Matrix<Z>::identity(3);
    CHECK(verify(i, decompose(i)).ok());
}

TEST_CASE("verify locates each kind of fault") {
    auto a = example6();
    auto f = decompose(a);
    auto item = [&](const Factorization<Z>& g, char id) {
        for (const auto& it : verify(a, g).items)
            if (it.id == id) return it.pass;
        return true;
    };
    auto g = f;
    g.U(3, 1) = 1;
    CHECK_FALSE(item(g, 'b'));
    g = f;
    g.M(1, 0) += 1;
    CHECK_FALSE(item(g, 'e'));
    g = f;
    g.L(5, 5) = 2;
    CHECK_FALSE(item(g, 'b'));
    CHECK_FALSE(item(g, 'c'));
    g = f;
    g.P = Permutation::identity(6);
    CHECK_FALSE(item(g, 'a'));
}
