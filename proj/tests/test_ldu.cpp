#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace fftd;
using namespace fftd::testing;
using Z = BigInt;
using F = Fraction<Z>;

namespace {

// Exact product P·L·D·U·Q over fractions via dense permutation matrices.
FractionMatrix<Z> rebuild(const Factorization<Z>& f) {
    auto p = to_fractions(f.P.to_matrix<Z>());
    auto q = to_fractions(f.Q.to_matrix<Z>());
    return mat_mul(mat_mul(mat_mul(mat_mul(p, to_fractions(f.L)), materialize_D(f.diagonal())), to_fractions(f.U)),
                   q);
}

void require_valid(const Matrix<Z>& a, const Factorization<Z>& f) {
    auto rep = verify(a, f);
    INFO(rep.summary());
    REQUIRE(rep.ok());
    REQUIRE(rebuild(f) == to_fractions(a));
}

}  // namespace

TEST_CASE("worked 6x6 example") {
    auto a = example6();
    auto f = decompose(a);
    CHECK(f.P.to_matrix<Z>() == example6_P());
    CHECK(f.L == example6_L());
    CHECK(f.U == example6_U());
    CHECK(f.Q.to_matrix<Z>() == example6_Q());
    CHECK(f.alphas == std::vector<Z>{3, 7, 10, 40, -80});
    CHECK(f.rank() == 5);
    auto d = materialize_D(f.diagonal());
    CHECK(d(0, 0) == F(1, 3));
    CHECK(d(1, 1) == F(1, 21));
    CHECK(d(2, 2) == F(1, 70));
    CHECK(d(3, 3) == F(1, 400));
    CHECK(d(4, 4) == F(-1, 3200));
    CHECK(d(5, 5).is_zero());
    require_valid(a, f);
}

TEST_CASE("decompose trivial shapes") {
    auto f = decompose(Matrix<Z>::identity(3));
    CHECK(f.P.is_identity());
    CHECK(f.Q.is_identity());
    CHECK(f.L == Matrix<Z>::identity(3));
    CHECK(f.U == Matrix<Z>::identity(3));
    CHECK(f.alphas == std::vector<Z>{1, 1, 1});

    Matrix<Z> zero(2, 3);
    auto g = decompose(zero);
    CHECK(g.rank() == 0);
    CHECK(g.L == Matrix<Z>::identity(2));
    CHECK(g.U == Matrix<Z>::identity(3));
    CHECK(g.P.is_identity());
    CHECK(g.Q.is_identity());
    CHECK(materialize_D(g.diagonal()) == FractionMatrix<Z>(2, 3));
}

TEST_CASE("rank one 2x2") {
    Matrix<Z> a{{2, 1}, {4, 2}};
    auto f = decompose(a);
    CHECK(f.L == Matrix<Z>{{2, 0}, {4, 1}});
    CHECK(f.U == Matrix<Z>{{2, 1}, {0, 1}});
    CHECK(f.alphas == std::vector<Z>{2});
    CHECK(materialize_D(f.diagonal())(0, 0) == F(1, 2));
    CHECK(materialize_D(f.diagonal())(1, 1).is_zero());
    require_valid(a, f);

    Matrix<Z> b{{2, 4}, {1, 2}};
    auto g = decompose(b);
    CHECK(g.rank() == 1);
    CHECK(g.L == Matrix<Z>{{2, 0}, {1, 1}});
    require_valid(b, g);
}

TEST_CASE("ldu_rec with a nontrivial context") {
    auto f = ldu_rec(Matrix<Z>{{7}}, RecursionContext<Z>{1, 3, {}});
    CHECK(f.L == Matrix<Z>{{7}});
    CHECK(f.U == Matrix<Z>{{7}});
    CHECK(f.M == Matrix<Z>{{3}});
    CHECK(f.W == Matrix<Z>{{3}});
    CHECK(f.alphas == std::vector<Z>{7});

    auto g = ldu_rec(Matrix<Z>{{3, 2}, {1, 3}}, RecursionContext<Z>{});
    CHECK(g.L == Matrix<Z>{{3, 0}, {1, 7}});
    CHECK(g.U == Matrix<Z>{{3, 2}, {0, 7}});
    CHECK(g.M == Matrix<Z>{{1, 0}, {-1, 3}});
    CHECK(g.W == Matrix<Z>{{1, -2}, {0, 3}});

    auto z = ldu_rec(Matrix<Z>(3, 2), RecursionContext<Z>{});
    CHECK(z.rank() == 0);
    CHECK(z.L == Matrix<Z>::identity(3));
}

TEST_CASE("single line base") {
    auto f = base_single_line(Matrix<Z>{{3}}, Z(1));
    CHECK(f.L == Matrix<Z>{{3}});
    CHECK(f.M == Matrix<Z>{{1}});
    CHECK(materialize_D(f.diagonal())(0, 0) == F(1, 3));

    Matrix<Z> row{{2, 3}};
    auto r = base_single_line(row, Z(1));
    CHECK(r.L == Matrix<Z>{{2}});
    CHECK(r.U == Matrix<Z>{{2, 3}, {0, 1}});
    CHECK(r.rank() == 1);
    require_valid(row, r);

    Matrix<Z> col{{5}, {10}};
    auto c = base_single_line(col, Z(1));
    CHECK(c.U == Matrix<Z>{{5}});
    CHECK(c.L == Matrix<Z>{{5, 0}, {10, 1}});
    require_valid(col, c);

    CHECK_THROWS_AS(base_single_line(Matrix<Z>{{0, 1}}, Z(1)), std::invalid_argument);
    CHECK_THROWS_AS(base_single_line(Matrix<Z>{{1, 1}, {1, 1}}, Z(1)), std::invalid_argument);
}

TEST_CASE("single line with a zero leading entry") {
    for (auto a : {Matrix<Z>{{0, 0, 4, 1}}, Matrix<Z>{{0}, {3}, {0}}, Matrix<Z>{{0, 0}}}) {
        auto f = decompose(a);
        require_valid(a, f);
    }
}

TEST_CASE("2x2 closed form") {
    auto f = base_2x2(Matrix<Z>{{3, 2}, {1, 3}}, Z(1));
    CHECK(f == decompose(Matrix<Z>{{3, 2}, {1, 3}}));
    auto i = base_2x2(Matrix<Z>::identity(2), Z(1));
    CHECK(i.L == Matrix<Z>::identity(2));
    CHECK(i.alphas == std::vector<Z>{1, 1});
    CHECK_THROWS_AS(base_2x2(Matrix<Z>{{2, 4}, {1, 2}}, Z(1)), ZeroPivot);
    CHECK_THROWS_AS(base_2x2(Matrix<Z>{{0, 4}, {1, 2}}, Z(1)), ZeroPivot);
}

TEST_CASE("schur update on the 6x6 reference example") {
    auto a = example6();
    auto lead = decompose(submatrix(a, {0, 2}, {0, 2}));
    auto s = schur_update(submatrix(a, {0, 2}, {2, 6}), submatrix(a, {2, 6}, {0, 2}), submatrix(a, {2, 6}, {2, 6}), lead);
    CHECK(s.U_tilde == Matrix<Z>{{3, 5, 1, 2}, {9, 1, 8, 10}});
    CHECK(s.L_tilde == Matrix<Z>{{3, 0}, {1, 7}, {2, -1}, {2, -1}});
    CHECK(s.next == Matrix<Z>{{0, 0, 28, 28}, {0, 0, -7, -21}, {10, -9, 12, 15}, {10, -9, 12, 15}});

    auto one = decompose(Matrix<Z>{{3}});
    auto t = schur_update(Matrix<Z>{{2}}, Matrix<Z>{{1}}, Matrix<Z>{{3}}, one);
    CHECK(t.next == Matrix<Z>{{7}});

    // B = 0: the next block is just λ·D
    auto u = schur_update(Matrix<Z>{{0, 0}}, Matrix<Z>{{1}, {2}}, Matrix<Z>{{1, 2}, {3, 4}}, one);
    CHECK(u.U_tilde.is_zero());
    CHECK(u.next == Matrix<Z>{{3, 6}, {9, 12}});
}

TEST_CASE("assembly without a second level") {
    auto a = submatrix(example6(), {0, 4}, {0, 4});
    auto lead = decompose(submatrix(a, {0, 2}, {0, 2}));
    auto s = schur_update(submatrix(a, {0, 2}, {2, 4}), submatrix(a, {2, 4}, {0, 2}), submatrix(a, {2, 4}, {2, 4}), lead);
    CHECK(s.next.is_zero());
    auto f = assemble_general<Z>(lead, std::nullopt, s.U_tilde, s.L_tilde, 2);
    CHECK(f.L == Matrix<Z>{{3, 0, 0, 0}, {1, 7, 0, 0}, {3, 0, 1, 0}, {1, 7, 0, 1}});
    CHECK(f.U == Matrix<Z>{{3, 2, 3, 5}, {0, 7, 9, 1}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    CHECK(f.P.is_identity());
    CHECK(f.Q.is_identity());
    CHECK(f.M == Matrix<Z>{{1, 0}, {-1, 3}});
    CHECK(f.W == Matrix<Z>{{1, -2}, {0, 3}});
    CHECK(f == decompose(a));

    auto id = decompose(Matrix<Z>::identity(1));
    auto g = assemble_general<Z>(id, id, Matrix<Z>{{0}}, Matrix<Z>{{0}}, 1);
    CHECK(g == decompose(Matrix<Z>::identity(2)));
}

TEST_CASE("scaled subproblem") {
    auto f = scaled_subproblem(Matrix<Z>{{28, 28}, {-7, -21}}, Z(7), Z(10));
    CHECK(f.L == Matrix<Z>{{40, 0}, {-10, -80}});
    CHECK(f.alphas == std::vector<Z>{40, -80});
    CHECK(f.W == Matrix<Z>{{10, -40}, {0, 40}});
    auto unscaled = ldu_rec(Matrix<Z>{{28, 28}, {-7, -21}}, RecursionContext<Z>{2, 7, {}});
    CHECK(unscaled.W == Matrix<Z>{{7, -28}, {0, 28}});
    CHECK(scaled_subproblem(Matrix<Z>{{28, 28}, {-7, -21}}, Z(7), Z(7)) == unscaled);

    // λ·D decomposed directly agrees with the rescaled factorization
    std::mt19937_64 rng(3);
    for (int it = 0; it < 50; ++it) {
        auto d = random_matrix<Z>(rng, 1 + rng() % 5, 1 + rng() % 5, -5, 5, 0.3);
        Z ak = 1 + Z(int(rng() % 4)), lam = 1 + Z(int(rng() % 3));
        auto lhs = scaled_subproblem(Matrix<Z>(d.rows(), d.cols(), [&] {
                                         std::vector<Z> v;
                                         for (const auto& x : d.data()) v.push_back(x * ak);
                                         return v;
                                     }()),
                                     ak, Z(ak * lam));
        Matrix<Z> scaled = d;
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t j = 0; j < d.cols(); ++j) scaled(i, j) = d(i, j) * ak * lam;
        auto rhs = ldu_rec(scaled, RecursionContext<Z>{0, Z(ak * lam), {}});
        CHECK(lhs == rhs);
    }
}

TEST_CASE("zero leading block") {
    auto a = example6();
    auto next = Matrix<Z>{{0, 0, 28, 28}, {0, 0, -7, -21}, {10, -9, 12, 15}, {10, -9, 12, 15}};
    auto f = zero_A_dispatch(next, 2, Z(7));
    CHECK(f.rank() == 3);
    CHECK(f.W == Matrix<Z>{{7, -12, -12}, {0, 10, -40}, {0, 0, 40}});
    CHECK(f.alphas == std::vector<Z>{10, 40, -80});

    Matrix<Z> b{{0, 0}, {0, 5}};
    auto g = zero_A_dispatch(b, 1, Z(1));
    CHECK(g.rank() == 1);
    CHECK(g.alphas == std::vector<Z>{5});
    CHECK(g.L == Matrix<Z>{{5, 0}, {0, 1}});
    require_valid(b, g);

    CHECK(zero_A_dispatch(Matrix<Z>(3, 3), 1, Z(1)).rank() == 0);
    CHECK_THROWS_AS(zero_A_dispatch(Matrix<Z>{{1, 0}, {0, 0}}, 1, Z(1)), std::invalid_argument);
}

TEST_CASE("half zero cases") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 40; ++it) {
        // bottom half zero: random 2x4 top over a zero row
        auto top = random_matrix<Z>(rng, 2, 4, -4, 4);
        Matrix<Z> a(3, 4);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 4; ++j) a(i, j) = top(i, j);
        auto f = half_zero_dispatch(a, 2, Z(1));
        require_valid(a, f);
        CHECK(f == decompose(a));

        // left half zero: zero columns beside a random 4x2 block
        auto side = random_matrix<Z>(rng, 4, 2, -4, 4);
        Matrix<Z> b(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 2; ++j) b(i, j + 2) = side(i, j);
        auto g = half_zero_dispatch(b, 2, Z(1));
        require_valid(b, g);

        // top and right halves, transposed shapes
        auto bt = b.transpose();
        require_valid(bt, half_zero_dispatch(bt, 2, Z(1)));
        Matrix<Z> c(4, 3);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 3; ++j) c(i + 2, j) = random_matrix<Z>(rng, 1, 1, -4, 4)(0, 0);
        require_valid(c, half_zero_dispatch(c, 2, Z(1)));
    }
    CHECK(half_zero_dispatch(Matrix<Z>(2, 2), 1, Z(1)).rank() == 0);
    CHECK_THROWS_AS(half_zero_dispatch(Matrix<Z>{{1, 1}, {1, 1}}, 1, Z(1)), std::invalid_argument);
}

TEST_CASE("strongly regular path") {
    auto f = strongly_regular_ldu(Matrix<Z>{{3, 2}, {1, 3}});
    CHECK(f == base_2x2(Matrix<Z>{{3, 2}, {1, 3}}, Z(1)));
    auto d = strongly_regular_ldu(Matrix<Z>{{2, 0}, {0, 3}});
    CHECK(d.L == Matrix<Z>{{2, 0}, {0, 6}});
    CHECK(d.alphas == std::vector<Z>{2, 6});
    auto one = strongly_regular_ldu(Matrix<Z>{{5}});
    CHECK(one.L == Matrix<Z>{{5}});
    CHECK(one.M == Matrix<Z>{{1}});
    CHECK_THROWS_AS(strongly_regular_ldu(example6()), ZeroPivot);

    std::mt19937_64 rng(5);
    for (int it = 0; it < 40; ++it) {
        auto a = random_strongly_regular<Z>(rng, 1 + rng() % 7, -9, 9);
        auto g = strongly_regular_ldu(a);
        CHECK(g.P.is_identity());
        CHECK(g.Q.is_identity());
        CHECK(g == decompose(a));
        require_valid(a, g);
    }

    LduOptions<Z> opt;
    opt.strongly_regular_first = true;
    CHECK(decompose(example6(), opt) == decompose(example6()));
}
