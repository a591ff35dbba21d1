#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fockopa/parse.hpp"
#include "fockopa/tuple.hpp"
#include "test_util.hpp"

using namespace fockopa;
using namespace fockopa::testutil;
using cd = std::complex<double>;

TEST_CASE("word ordering is graded lexicographic") {
    Word e = Word::empty();
    Word x1 = Word::single(1), x2 = Word::single(2);
    Word x1x2({std::vector<std::int32_t>{1, 2}});
    Word x2x1({std::vector<std::int32_t>{2, 1}});
    CHECK(e < x1);
    CHECK(x1 < x2);
    CHECK(x2 < x1x2);
    CHECK(x1x2 < x2x1);
    CHECK(x1.concat(x2) == x1x2);
    CHECK(x1x2.length() == 2);
    CHECK(x1.concat(x2).length() == x1.length() + x2.length());
}

TEST_CASE("non-unique factorization: x(1-yx) = (1-xy)x = x - xyx") {
    PolyQ x = parse_poly("x1", 2), y = parse_poly("x2", 2);
    PolyQ one = PolyQ::identity(1, 2);
    PolyQ left = mul(x, sub(one, mul(y, x)));
    PolyQ right = mul(sub(one, mul(x, y)), x);
    PolyQ expect = parse_poly("x1 - x1*x2*x1", 2);
    CHECK(left == expect);
    CHECK(right == expect);
}

TEST_CASE("identity is neutral for mul") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 10; ++rep) {
        PolyC p = random_matrix_poly(2, 3, 2, 3, 5, rng);
        PolyC il = PolyC::identity(2, 2), ir = PolyC::identity(3, 2);
        CHECK(mul(il, p) == p);
        CHECK(mul(p, ir) == p);
    }
}

TEST_CASE("(1-x)(1-y) expands to 1 - x - y + xy, against the convolution oracle") {
    PolyC f = parse_poly_numeric("1 - x1", 2), g = parse_poly_numeric("1 - x2", 2);
    PolyC prod = mul(f, g);
    CHECK(prod == parse_poly_numeric("1 - x1 - x2 + x1*x2", 2));

    auto oracle = naive_product(as_map(f), as_map(g));
    CHECK(oracle == as_map(prod));

    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        PolyC a = random_scalar_poly(2, 3, 4, rng), b = random_scalar_poly(2, 3, 4, rng);
        auto want = naive_product(as_map(a), as_map(b));
        auto got = as_map(mul(a, b));
        REQUIRE(want.size() == got.size());
        for (const auto& [w, v] : want) CHECK(std::abs(got.at(w) - v) < 1e-12);
    }
}

TEST_CASE("mul is associative and distributive on exact coefficients") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 25; ++rep) {
        PolyQ a = random_rational_poly(2, 3, 4, rng);
        PolyQ b = random_rational_poly(2, 3, 4, rng);
        PolyQ c = random_rational_poly(2, 3, 4, rng);
        CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
        CHECK(mul(add(a, b), c) == add(mul(a, c), mul(b, c)));
    }
}

TEST_CASE("mul rejects shape mismatches") {
    PolyC p(2, 3, 1), q(2, 3, 1);
    CHECK_THROWS_AS(mul(p, q), ShapeError);
    PolyC r(1, 1, 2);
    CHECK_THROWS_AS(mul(p, r), ShapeError);
}

TEST_CASE("words are an orthonormal system") {
    PolyC x1x2(1, 1, 2), x2x1(1, 1, 2);
    x1x2.add_entry_term(Word(std::vector<std::int32_t>{1, 2}), 0, 0, 1.0);
    x2x1.add_entry_term(Word(std::vector<std::int32_t>{2, 1}), 0, 0, 1.0);
    CHECK(inner(x1x2, x1x2) == cd(1.0, 0.0));
    CHECK(inner(x1x2, x2x1) == cd(0.0, 0.0));
    CHECK(norm_sq(PolyC::zero(1, 1, 2)) == 0.0);
    CHECK(norm_sq(parse_poly_numeric("1 - x1 - x2 + x1*x2", 2)) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("norm_sq equals the naive coefficient sum") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        PolyC p = random_matrix_poly(2, 2, 2, 4, 6, rng);
        double naive = 0;
        for (const auto& [w, c] : p.terms())
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) naive += std::norm(c(i, j));
        CHECK(norm_sq(p) == doctest::Approx(naive).epsilon(1e-13));
        CHECK(norm_sq(p) >= 0.0);
        CHECK(std::abs(inner(p, p).imag()) < 1e-14);
    }
}

TEST_CASE("left shift preserves the inner product") {
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        PolyC p = random_scalar_poly(3, 3, 5, rng), q = random_scalar_poly(3, 3, 5, rng);
        for (int i = 1; i <= 3; ++i) {
            cd before = inner(p, q);
            cd after = inner(lshift(i, p), lshift(i, q));
            CHECK(std::abs(before - after) < 1e-13);
        }
        // lshift agrees with multiplication by the letter
        PolyC xi = PolyC::letter(2, 3);
        CHECK(lshift(2, p) == mul(xi, p));
    }
}

TEST_CASE("eval: constants, singular point, direct sums, multiplicativity") {
    SUBCASE("constant polynomial evaluates to C ⊗ I") {
        CoeffMat<cd> c(2, 2);
        c(0, 0) = 2.0;
        c(0, 1) = cd(0, 1);
        c(1, 1) = -1.0;
        PolyC p = PolyC::constant(c, 2);
        MatrixTuple x = flip_tuple();
        Eigen::MatrixXcd got = eval(p, x);
        Eigen::MatrixXcd cm(2, 2);
        cm << 2.0, cd(0, 1), 0.0, -1.0;
        Eigen::MatrixXcd want = kron(cm, Eigen::MatrixXcd::Identity(2, 2));
        CHECK((got - want).norm() == 0.0);
    }
    SUBCASE("1 - x1*x2 is singular at (E12, E21)") {
        PolyC f = parse_poly_numeric("1 - x1*x2", 2);
        Eigen::MatrixXcd v = eval(f, flip_tuple());
        CHECK(v(0, 0) == cd(0, 0));
        CHECK(v(1, 1) == cd(1, 0));
        CHECK(std::abs(v.determinant()) == 0.0);
    }
    SUBCASE("eval respects direct sums for scalar polynomials") {
        std::mt19937_64 rng(23);
        for (int rep = 0; rep < 8; ++rep) {
            PolyC f = random_scalar_poly(2, 3, 5, rng);
            MatrixTuple x = random_tuple(2, 2, rng), y = random_tuple(2, 3, rng);
            Eigen::MatrixXcd whole = eval(f, x.direct_sum(y));
            Eigen::MatrixXcd fx = eval(f, x), fy = eval(f, y);
            CHECK((whole.topLeftCorner(2, 2) - fx).norm() < 1e-10);
            CHECK((whole.bottomRightCorner(3, 3) - fy).norm() < 1e-10);
            CHECK(whole.topRightCorner(2, 3).norm() < 1e-12);
        }
    }
    SUBCASE("eval is multiplicative") {
        std::mt19937_64 rng(29);
        for (int rep = 0; rep < 8; ++rep) {
            PolyC p = random_matrix_poly(2, 2, 2, 2, 4, rng);
            PolyC q = random_matrix_poly(2, 2, 2, 2, 4, rng);
            MatrixTuple x = random_row_contraction(2, 2, 0.7, rng);
            Eigen::MatrixXcd lhs = eval(mul(p, q), x);
            Eigen::MatrixXcd rhs = eval(p, x) * eval(q, x);
            CHECK((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
        }
    }
    SUBCASE("scalar eval respects similarity") {
        std::mt19937_64 rng(31);
        PolyC f = random_scalar_poly(2, 3, 5, rng);
        MatrixTuple x = random_tuple(2, 3, rng);
        Eigen::MatrixXcd s = random_invertible(3, rng);
        Eigen::MatrixXcd lhs = eval(f, x.conjugated(s));
        Eigen::MatrixXcd rhs = s.inverse() * eval(f, x) * s;
        CHECK((lhs - rhs).norm() < 1e-8 * (1.0 + rhs.norm()));
    }
}

TEST_CASE("truncate keeps low-degree terms and satisfies Pythagoras") {
    PolyC p = parse_poly_numeric("1 - x1 - x2 + x1*x2", 2);
    CHECK(truncate(p, 1) == parse_poly_numeric("1 - x1 - x2", 2));
    CHECK(truncate(p, *p.degree()) == p);

    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 10; ++rep) {
        PolyC q = random_matrix_poly(2, 2, 2, 4, 8, rng);
        for (int n = 0; n <= 4; ++n) {
            PolyC low = truncate(q, n);
            PolyC high = sub(q, low);
            CHECK(norm_sq(q) == doctest::Approx(norm_sq(low) + norm_sq(high)).epsilon(1e-13));
            if (auto deg = low.degree()) CHECK(*deg <= n);
        }
    }
}

TEST_CASE("degree uses an explicit empty sentinel for zero") {
    PolyC z = PolyC::zero(2, 2, 1);
    CHECK(!z.degree().has_value());
    CHECK(z.is_zero());
    PolyC one = PolyC::identity(2, 1);
    CHECK(one.degree() == 0);
}

TEST_CASE("canonical form prunes negligible coefficient blocks") {
    PolyC p(1, 1, 1);
    p.add_entry_term(Word::single(1), 0, 0, 1.0);
    p.add_entry_term(Word::single(1), 0, 0, -1.0);
    CHECK(p.is_zero());
    PolyC q(1, 1, 1);
    q.add_entry_term(Word::single(1), 0, 0, 5e-15);  // below the pruning threshold
    CHECK(q.is_zero());
}

TEST_CASE("pad and scalar_entry round-trip blocks") {
    PolyQ f = parse_poly("1 - x1*x2", 2);
    PolyQ padded = pad_with_identity(f, 3);
    CHECK(padded.rows() == 3);
    CHECK(scalar_entry(padded, 0, 0) == f);
    PolyQ e11 = scalar_entry(padded, 1, 1);
    CHECK(e11 == PolyQ::identity(1, 2));
    CHECK(scalar_entry(padded, 0, 1).is_zero());
}
