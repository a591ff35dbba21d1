#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fockopa/linearize.hpp"
#include "fockopa/opa.hpp"
#include "fockopa/parse.hpp"
#include "fockopa/sigma.hpp"
#include "test_util.hpp"

using namespace fockopa;
using namespace fockopa::testutil;
using cd = std::complex<double>;

namespace {

/// Hand-built two-block triangular form with 1x1 contractive blocks, as the
/// linearization of (1-x1)(1-x2) produces.
TriangularPencilForm two_block_form() {
    LinearizeResult lin = linearize(parse_poly("(1 - x1)*(1 - x2)"));
    return burnside_triangularize(lin.pencil.coeff);
}

}  // namespace

TEST_CASE("pi coefficients") {
    CHECK(pi_coeffs(0) == std::vector<double>{0.5});
    std::vector<double> p1 = pi_coeffs(1);
    CHECK(p1[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(p1[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    CHECK(pi_sup_norm_exact(7) == Rational(4));
    for (int n : {0, 1, 5, 20, 50}) {
        CHECK(pi_sup_norm_exact(n) == Rational(n + 1, 2));
        std::vector<double> c = pi_coeffs(n);
        CHECK(c.front() == doctest::Approx(double(n + 1) / (n + 2)).epsilon(1e-15));
        for (std::size_t k = 0; k + 1 < c.size(); ++k) CHECK(c[k] > c[k + 1]);
        for (double v : c) {
            CHECK(v > 0.0);
            CHECK(v <= 1.0);
        }
        CHECK(pi_coeff_exact(n, 0) == Rational(n + 1, n + 2));
    }
}

TEST_CASE("pi of a pencil") {
    SUBCASE("degree zero is the half identity") {
        StructuredPoly p = pi_of_pencil(MatrixTuple::zero(2, 2), 0);
        CHECK(p.mult_bound() == doctest::Approx(0.5).epsilon(1e-15));
        PolyC e = p.expand();
        CHECK(e.terms().size() == 1);
        CHECK(e.coeff(Word::empty())(0, 0) == cd(0.5));
    }
    SUBCASE("d=1 scalar pencil expands to the commutative approximant") {
        MatrixTuple one({Eigen::MatrixXcd::Identity(1, 1)});
        for (int n : {1, 3, 6}) {
            PolyC e = pi_of_pencil(one, n).expand();
            std::vector<double> c = pi_coeffs(n);
            for (int k = 0; k <= n; ++k) {
                std::vector<std::int32_t> w(std::size_t(k), 1);
                CHECK(std::abs(e.coeff(Word(std::move(w)))(0, 0) - cd(c[std::size_t(k)])) < 1e-15);
            }
        }
    }
    SUBCASE("rejects non-contractive tuples") {
        MatrixTuple big({2.0 * Eigen::MatrixXcd::Identity(2, 2)});
        CHECK_THROWS_AS(pi_of_pencil(big, 3), PreconditionError);
    }
    SUBCASE("multiplier bound ledger is (n+1)/2 and the truncated norm stays below it") {
        MatrixTuple half({unit(2, 0, 1) / std::sqrt(2.0), unit(2, 1, 0) / std::sqrt(2.0)});
        StructuredPoly p = pi_of_pencil(half, 3);
        CHECK(p.mult_bound() == doctest::Approx(2.0).epsilon(1e-15));
        double lower = multiplier_norm_lower_bound(p.expand(), 2);
        CHECK(lower <= 2.0 + 1e-8);
    }
}

TEST_CASE("pi residual closed form") {
    SUBCASE("d=1 scalar gives exactly 1/(n+2)") {
        MatrixTuple one({Eigen::MatrixXcd::Identity(1, 1)});
        for (int n : {0, 1, 4, 9}) CHECK(pi_residual_norm_sq(one, n) == doctest::Approx(1.0 / (n + 2)).epsilon(1e-13));
    }
    SUBCASE("zero tuple at level m gives m/4 at n = 0") {
        for (int m : {1, 2, 3}) CHECK(pi_residual_norm_sq(MatrixTuple::zero(2, m), 0) == doctest::Approx(m / 4.0).epsilon(1e-15));
    }
    SUBCASE("matches the dense expansion for small cases") {
        std::mt19937_64 rng(191);
        for (int rep = 0; rep < 6; ++rep) {
            int m = 1 + rep % 2;
            MatrixTuple a = random_tuple(2, m, rng);
            double cn = col_norm(a);
            a = a.scaled((0.4 + 0.15 * (rep % 4)) / cn);
            for (int n = 0; n <= 4; ++n) {
                PolyC pi = pi_of_pencil(a, n).expand();
                PolyC pencil = pencil_to_poly(a);
                PolyC res = sub(mul(pi, pencil), PolyC::identity(m, 2));
                CHECK(pi_residual_norm_sq(a, n) == doctest::Approx(norm_sq(res)).epsilon(1e-10));
            }
        }
    }
    SUBCASE("explicit constant bound (level + c^2 (n+1)) / (n+2)^2") {
        std::mt19937_64 rng(193);
        MatrixTuple a = random_tuple(2, 2, rng);
        a = a.scaled(0.9 / col_norm(a));
        double c_sq = structural_power_norm_sq(a, 1);
        for (int n : {1, 3, 7}) {
            double bound = (2.0 + c_sq * (n + 1)) / double((n + 2) * (n + 2));
            CHECK(pi_residual_norm_sq(a, n) <= bound + 1e-13);
        }
    }
}

TEST_CASE("half-flip pencil: structural residual equals dense expansion at n = 3") {
    MatrixTuple half({unit(2, 0, 1) / std::sqrt(2.0), unit(2, 1, 0) / std::sqrt(2.0)});
    PolyC res = sub(mul(pi_of_pencil(half, 3).expand(), pencil_to_poly(half)), PolyC::identity(2, 2));
    CHECK(pi_residual_norm_sq(half, 3) == doctest::Approx(norm_sq(res)).epsilon(1e-12));
}

TEST_CASE("blockwise decomposition brackets the exact residual") {
    TriangularPencilForm form = two_block_form();
    SigmaBuild sb = sigma_build(form, 2, 8LL);
    SigmaResidual exact = sigma_residual_norm_sq(form, sb, SigmaResidualMode::Exact);
    SigmaResidual cert = sigma_residual_norm_sq(form, sb, SigmaResidualMode::Blockwise);
    // diagonal contributions are exact closed forms; the off-diagonal part of
    // the exact residual is what remains, and the certified bound covers it
    double diag = pi_residual_norm_sq(form.diag_block(0), 2) + pi_residual_norm_sq(form.diag_block(1), 2);
    double off_exact = exact.value - diag;
    CHECK(off_exact >= -1e-10);
    CHECK(off_exact <= cert.levels.back().offdiagonal + 1e-10);
}

TEST_CASE("structured polynomials compose and expand consistently") {
    std::mt19937_64 rng(197);
    MatrixTuple m1 = random_tuple(2, 2, rng);
    m1 = m1.scaled(0.8 / col_norm(m1));
    StructuredPoly pi3 = pi_of_pencil(m1, 3);
    CHECK(pi3.degree() == 3);

    std::vector<Eigen::MatrixXcd> y{random_matrix(2, 2, rng), random_matrix(2, 2, rng)};
    StructuredPoly yx = StructuredPoly::linear_term(y);
    CHECK(yx.degree() == 1);
    CHECK(yx.mult_bound() == doctest::Approx(col_norm_general(y)).epsilon(1e-12));

    StructuredPoly prod = StructuredPoly::product({pi3, yx});
    CHECK(prod.degree() == 4);
    PolyC dense = mul(pi3.expand(), yx.expand());
    CHECK(norm_sq(sub(prod.expand(), dense)) < 1e-20);

    // norm of a degree-separated pencil power combination equals the
    // structural sum (homogeneous orthogonality)
    std::vector<double> coeffs{0.3, 0.0, 0.7, 0.1};
    StructuredPoly series = StructuredPoly::pencil_series(m1, coeffs, 1.1);
    double structural = 0;
    std::vector<double> powers = structural_power_norms_sq(m1, 3);
    for (std::size_t k = 0; k < coeffs.size(); ++k) structural += coeffs[k] * coeffs[k] * powers[k];
    CHECK(norm_sq(series.expand()) == doctest::Approx(structural).epsilon(1e-12));

    CHECK_THROWS_AS(pi_of_pencil(m1, 40).expand(100), CapacityError);
}

TEST_CASE("sigma base case equals pi of the first block") {
    TriangularPencilForm form = two_block_form();
    REQUIRE(form.blocks() == 2);
    // restrict to the leading block only
    TriangularPencilForm single;
    single.similarity = Eigen::MatrixXcd::Identity(1, 1);
    single.conjugated = form.diag_block(0);
    single.block_sizes = {1};
    single.zero_block = {false};
    SigmaBuild sb = sigma_build(single, 3);
    CHECK(sb.ledger.size() == 1);
    PolyC direct = pi_of_pencil(form.diag_block(0), 3).expand();
    CHECK(norm_sq(sub(sb.sigma.expand(), direct)) == 0.0);
    SigmaResidual res = sigma_residual_norm_sq(single, sb, SigmaResidualMode::Blockwise);
    CHECK(res.value == doctest::Approx(pi_residual_norm_sq(form.diag_block(0), 3)).epsilon(1e-13));
}

TEST_CASE("two-block sigma: ledger, residuals, optimality") {
    TriangularPencilForm form = two_block_form();
    REQUIRE(form.blocks() == 2);

    SUBCASE("degree ledger with the default inner degree") {
        for (int n : {2, 3}) {
            SigmaBuild sb = sigma_build(form, n);
            long long n_cubed = (long long)n * n * n;
            CHECK(sb.ledger.back().inner_degree == n_cubed);
            CHECK(sb.ledger.back().degree_bound == 1 + n + n_cubed);
            CHECK(sb.sigma.degree() <= sb.ledger.back().degree_bound);
            CHECK(sb.sigma.degree() == 1 + n + n_cubed);  // realized by the corrector
        }
    }

    SUBCASE("exact residual sits below the certified bound and above the optimum") {
        for (auto [n, over] : std::vector<std::pair<int, long long>>{{1, 2}, {2, 8}, {2, 3}}) {
            SigmaBuild sb = sigma_build(form, n, over);
            SigmaResidual exact = sigma_residual_norm_sq(form, sb, SigmaResidualMode::Exact);
            SigmaResidual cert = sigma_residual_norm_sq(form, sb, SigmaResidualMode::Blockwise);
            CHECK(exact.value <= cert.value + 1e-10);

            if (sb.sigma.degree() <= 6) {  // the dense factorization stays cheap here
                MonicPencil pencil{form.conjugated};
                OpaResult opt = solve_opa(pencil.to_poly(), int(sb.sigma.degree()));
                CHECK(opt.residual <= exact.value + 1e-10);
                // the graded elimination gives the same optimum
                OpaResult fast = pencil_opa(pencil, int(sb.sigma.degree()));
                CHECK(fast.residual == doctest::Approx(opt.residual).epsilon(1e-9));
            }
        }
    }

    SUBCASE("off-diagonal certified bound scales like 1/n at the default inner degree") {
        // n-independent constant K = colY^2 (1 + c^2): the ledger bound is
        // ((n+1)/2 colY)^2 (m + c^2(N+1))/(N+2)^2 <= K (n+1)^2/(4 n^3) <= K/n
        double col_y = 0, c_sq = structural_power_norm_sq(form.diag_block(1), 1);
        {
            SigmaBuild probe = sigma_build(form, 2);
            col_y = probe.ledger.back().offdiag_col_norm;
        }
        double k_const = col_y * col_y * (1.0 + c_sq);
        for (int n : {2, 3, 4, 5}) {
            SigmaBuild sb = sigma_build(form, n);
            SigmaResidual cert = sigma_residual_norm_sq(form, sb, SigmaResidualMode::Blockwise);
            CHECK(cert.levels.back().offdiagonal <= k_const / n + 1e-12);
        }
    }
}

TEST_CASE("zero blocks cancel their corrector exactly") {
    // block-triangular tuple with a zero second block
    Eigen::MatrixXcd a1(2, 2), a2(2, 2);
    a1 << 0.6, 0.4, 0.0, 0.0;
    a2 << cd(0, 0.5), -0.3, 0.0, 0.0;
    TriangularPencilForm form;
    form.similarity = Eigen::MatrixXcd::Identity(2, 2);
    form.conjugated = MatrixTuple({a1, a2});
    form.block_sizes = {1, 1};
    form.zero_block = {false, true};

    SigmaBuild sb = sigma_build(form, 3);
    SigmaResidual exact = sigma_residual_norm_sq(form, sb, SigmaResidualMode::Exact);
    SigmaResidual cert = sigma_residual_norm_sq(form, sb, SigmaResidualMode::Blockwise);
    // the only residual is the diagonal pi residual of block 1
    double diag = pi_residual_norm_sq(form.diag_block(0), 3);
    CHECK(cert.value == doctest::Approx(diag).epsilon(1e-13));
    CHECK(exact.value == doctest::Approx(diag).epsilon(1e-10));
    CHECK(cert.levels[1].offdiagonal == 0.0);
}

TEST_CASE("sigma rejects bad inputs") {
    TriangularPencilForm form = two_block_form();
    CHECK_THROWS_AS(sigma_build(form, 0), PreconditionError);

    TriangularPencilForm bad = form;
    bad.conjugated = bad.conjugated.scaled(3.0);
    CHECK_THROWS_AS(sigma_build(bad, 2), PreconditionError);
}

TEST_CASE("sigma report carries the ledger") {
    TriangularPencilForm form = two_block_form();
    SigmaBuild sb = sigma_build(form, 2, 8LL);
    SigmaResidual cert = sigma_residual_norm_sq(form, sb, SigmaResidualMode::Blockwise);
    std::string rep = sigma_report(sb, cert);
    CHECK(rep.find("level 2") != std::string::npos);
    CHECK(rep.find("certified residual bound") != std::string::npos);
}
