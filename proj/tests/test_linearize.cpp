#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fockopa/linearize.hpp"
#include "fockopa/parse.hpp"
#include "test_util.hpp"

using namespace fockopa;
using namespace fockopa::testutil;

namespace {

std::vector<CoeffMat<RatC>> exact_flip_point() {
    CoeffMat<RatC> e12(2, 2), e21(2, 2);
    e12(0, 1) = RatC(1);
    e21(1, 0) = RatC(1);
    return {e12, e21};
}

}  // namespace

TEST_CASE("1 - x1*x2 linearizes to a verified 2x2 pencil") {
    PolyQ f = parse_poly("1 - x1*x2");
    LinearizeResult lin = linearize(f);
    CHECK(lin.pencil.size() == 2);
    CHECK(lin.pencil_poly.degree() == 1);
    CHECK(verify_stable_assoc(f, lin.pencil_poly, lin.witness));
    CHECK(lin.witness.d1 == 2);
    CHECK(lin.witness.d2 == 2);

    // the bordered matrix is [[1, x],[y, 1]] up to the fixed sign bookkeeping
    PolyQ expected(2, 2, 2);
    expected.add_entry_term(Word::empty(), 0, 0, RatC(1));
    expected.add_entry_term(Word::empty(), 1, 1, RatC(1));
    expected.add_entry_term(Word::single(1), 0, 1, RatC(1));
    expected.add_entry_term(Word::single(2), 1, 0, RatC(1));
    CHECK(lin.pencil_poly == expected);
}

TEST_CASE("a monic pencil passes through unchanged with identity witness") {
    PolyQ pencil(2, 2, 2);
    pencil.add_entry_term(Word::empty(), 0, 0, RatC(1));
    pencil.add_entry_term(Word::empty(), 1, 1, RatC(1));
    pencil.add_entry_term(Word::single(1), 0, 1, RatC(Rational(1, 2)));
    LinearizeResult lin = linearize(pencil);
    CHECK(lin.pencil_poly == pencil);
    CHECK(lin.witness.p == PolyQ::identity(2, 2));
    CHECK(lin.witness.q == PolyQ::identity(2, 2));
    CHECK(lin.witness.d1 == 0);
    CHECK(verify_stable_assoc(pencil, lin.pencil_poly, lin.witness));
}

TEST_CASE("1 - x1*x2*x1 gives a 3x3 pencil with symbolic verification") {
    PolyQ f = parse_poly("1 - x1*x2*x1");
    LinearizeResult lin = linearize(f);
    CHECK(lin.pencil.size() == 3);
    CHECK(verify_stable_assoc(f, lin.pencil_poly, lin.witness));

    // zero-locus spot check at (E12, E21): dets agree (both nonzero here)
    RatC df = exact_eval_det(f, exact_flip_point());
    RatC dg = exact_eval_det(lin.pencil_poly, exact_flip_point());
    CHECK(df == RatC(1));
    CHECK((dg.is_zero() == df.is_zero()));
}

TEST_CASE("(1-x1)(1-x2) linearizes at size 2") {
    PolyQ f = parse_poly("(1 - x1)*(1 - x2)");
    LinearizeResult lin = linearize(f);
    // bordered size bound: 1 + sum over degree>=2 monomials of (deg - 1)
    CHECK(lin.pencil.size() == 2);
    CHECK(verify_stable_assoc(f, lin.pencil_poly, lin.witness));
}

TEST_CASE("bordered size grows by one per removed term") {
    std::mt19937_64 rng(151);
    for (int rep = 0; rep < 10; ++rep) {
        PolyQ f = random_rational_poly(2, 3, 4, rng);
        // force F(0) = I
        PolyQ one = PolyQ::identity(1, 2);
        f = add(sub(f, PolyQ::constant(f.coeff(Word::empty()), 2)), one);
        LinearizeResult lin = linearize(f);
        long long budget = 1;
        for (const auto& [w, c] : f.terms())
            if (w.length() >= 2) budget += long(w.length()) - 1;
        CHECK(lin.pencil.size() <= budget);
        CHECK(verify_stable_assoc(f, lin.pencil_poly, lin.witness));
        // pencil shape: degree <= 1 and constant term exactly the identity
        CHECK(lin.pencil_poly.degree().value_or(0) <= 1);
        CHECK(lin.pencil_poly.coeff(Word::empty()) == CoeffMat<RatC>::identity(lin.pencil.size()));
    }
}

TEST_CASE("rejects non-monic constant term and non-square input") {
    CHECK_THROWS_AS(linearize(parse_poly("2 - x1")), PreconditionError);
    PolyQ rect(1, 2, 1);
    rect.add_entry_term(Word::empty(), 0, 0, RatC(1));
    CHECK_THROWS_AS(linearize(rect), ShapeError);
}

TEST_CASE("verification fails loudly on a corrupted witness") {
    PolyQ f = parse_poly("1 - x1*x2");
    LinearizeResult lin = linearize(f);
    StableAssocWitness bad = lin.witness;
    bad.q.add_entry_term(Word::single(2), 0, 0, RatC(Rational(1, 7)));
    VerifyReport rep = verify_stable_assoc(f, lin.pencil_poly, bad);
    CHECK(!rep.ok);
    CHECK(!rep.detail.empty());
}

TEST_CASE("witness composition is transitive") {
    PolyQ f = parse_poly("1 - x1*x2*x1");
    LinearizeResult lin = linearize(f);

    // second hop: conjugate the pencil by a constant permutation-like GL move
    PolyQ g = lin.pencil_poly;
    const int n = g.rows();
    PolyQ p = PolyQ::identity(n, g.d());
    p.add_entry_term(Word::empty(), 0, 1, RatC(2));  // row op
    PolyQ p_inv = PolyQ::identity(n, g.d());
    p_inv.add_entry_term(Word::empty(), 0, 1, RatC(-2));
    StableAssocWitness second;
    second.padded_size = n;
    second.f = g;
    second.g = mul(p, g);
    second.p = p;
    second.p_inv = p_inv;
    second.q = PolyQ::identity(n, g.d());
    second.q_inv = second.q;
    second.d1 = 0;
    second.d2 = 0;
    REQUIRE(verify_stable_assoc(g, second.g, second));

    StableAssocWitness chained = compose_witness(lin.witness, second);
    CHECK(verify_stable_assoc(f, second.g, chained));
}

TEST_CASE("zero locus agreement between a polynomial and its pencil") {
    PolyQ f = parse_poly("1 - x1*x2");
    LinearizeResult lin = linearize(f);

    // planted singular point: determinants vanish exactly in rational arithmetic
    RatC df = exact_eval_det(f, exact_flip_point());
    RatC dg = exact_eval_det(lin.pencil_poly, exact_flip_point());
    CHECK(df.is_zero());
    CHECK(dg.is_zero());

    ZeroLocusReport rep = zero_locus_agreement(to_numeric(f), to_numeric(lin.pencil_poly), 200, 2024,
                                               {flip_tuple()});
    CHECK(rep.all_agree);
    CHECK(rep.samples.front().planted);
    CHECK(rep.samples.front().zero_f);
    CHECK(rep.samples.front().zero_g);
    // row-ball samples of a radius-one pencil produce no false zeros
    int random_zeros = 0;
    for (std::size_t i = 1; i < rep.samples.size(); ++i) random_zeros += rep.samples[i].zero_g ? 1 : 0;
    CHECK(random_zeros == 0);
}

TEST_CASE("identical polynomials agree trivially") {
    PolyC f = parse_poly_numeric("1 - x1 - x2", 2);
    ZeroLocusReport rep = zero_locus_agreement(f, f, 30, 7);
    CHECK(rep.all_agree);
}

TEST_CASE("sandwich constants") {
    SUBCASE("identity witness gives C = 1, D = 0") {
        PolyQ f = parse_poly("1 - x1");
        LinearizeResult lin = linearize(f);  // already a pencil
        SandwichConstants sc = decay_sandwich_constants(lin.witness);
        CHECK(sc.c1 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(sc.c2 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(sc.d1 == 0);
        CHECK(sc.d2 == 0);
    }
    SUBCASE("higman witness for 1 - x1*x2") {
        LinearizeResult lin = linearize(parse_poly("1 - x1*x2"));
        SandwichConstants sc = decay_sandwich_constants(lin.witness);
        CHECK(sc.d1 == 2);  // deg P = deg Q = 1
        CHECK(sc.d2 == 2);
        CHECK(sc.c1 >= 1.0);
        CHECK(sc.q_mult_lower <= sc.c1 + 1e-9);  // lower bound below the certified product
    }
}

TEST_CASE("witness documents round-trip and match the golden file") {
    LinearizeResult lin = linearize(parse_poly("1 - x1*x2"));
    std::string doc = witness_to_json(lin.witness);
    StableAssocWitness back = witness_from_json(doc);
    CHECK(verify_stable_assoc(back.f, back.g, back));
    CHECK(back.padded_size == lin.witness.padded_size);
    CHECK(back.p == lin.witness.p);
    CHECK(back.q == lin.witness.q);

    std::ifstream golden("tests/golden/witness_1mxy.json");
    if (!golden) golden.open("../tests/golden/witness_1mxy.json");
    REQUIRE_MESSAGE(bool(golden), "golden witness file present");
    std::stringstream buf;
    buf << golden.rdbuf();
    StableAssocWitness pinned = witness_from_json(buf.str());
    CHECK(pinned.g == lin.witness.g);
    CHECK(verify_stable_assoc(pinned.f, pinned.g, pinned));
}
