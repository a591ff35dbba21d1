#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fockopa/parse.hpp"
#include "test_util.hpp"

using namespace fockopa;
using namespace fockopa::testutil;

TEST_CASE("grammar cases from the text format") {
    PolyQ p = parse_poly("1 - x1*x2");
    CHECK(p.d() == 2);
    PolyQ want(1, 1, 2);
    want.add_entry_term(Word::empty(), 0, 0, RatC(1));
    want.add_entry_term(Word(std::vector<std::int32_t>{1, 2}), 0, 0, RatC(-1));
    CHECK(p == want);

    PolyQ q = parse_poly("x1 - x1*x2*x1");
    CHECK(q.degree() == 3);
    CHECK(q.coeff(Word::single(1))(0, 0) == RatC(1));
    CHECK(q.coeff(Word(std::vector<std::int32_t>{1, 2, 1}))(0, 0) == RatC(-1));

    PolyQ c = parse_poly("(0.5+0.5i) x2");
    CHECK(c.d() == 2);
    CHECK(c.terms().size() == 1);
    CHECK(c.coeff(Word::single(2))(0, 0) == RatC(Rational(1, 2), Rational(1, 2)));
}

TEST_CASE("decimal literals convert exactly") {
    CHECK(rational_from_decimal("0.5") == Rational(1, 2));
    CHECK(rational_from_decimal("1.25") == Rational(5, 4));
    CHECK(rational_from_decimal("3e-2") == Rational(3, 100));
    CHECK(rational_from_decimal("2/3") == Rational(2, 3));
    CHECK(rational_to_string(Rational(1, 2)) == "0.5");
    CHECK(rational_to_string(Rational(2, 3)) == "2/3");
    CHECK(rational_to_string(Rational(-7, 4)) == "-1.75");
    CHECK(rational_to_string(Rational(5)) == "5");
}

TEST_CASE("products and grouping are parsed noncommutatively") {
    PolyQ f = parse_poly("(1 - x1)*(1 - x2)");
    CHECK(f == parse_poly("1 - x1 - x2 + x1*x2"));
    PolyQ g = parse_poly("(1 - x2)*(1 - x1)");
    CHECK(g == parse_poly("1 - x1 - x2 + x2*x1"));
    CHECK(!(f == g));
    CHECK(parse_poly("2 x1") == parse_poly("2*x1"));
}

TEST_CASE("format then parse is the identity on canonical forms") {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 30; ++rep) {
        PolyQ p = random_rational_poly(3, 3, 5, rng);
        CHECK(parse_poly(format_poly(p), 3) == p);
    }
    // numeric round-trip through shortest-representation doubles
    for (int rep = 0; rep < 20; ++rep) {
        PolyC p = random_scalar_poly(2, 3, 4, rng);
        PolyC back = parse_poly_numeric(format_poly(p), 2);
        CHECK(norm_sq(sub(p, back)) < 1e-24);
    }
}

TEST_CASE("parse errors carry byte offsets") {
    try {
        parse_poly("1 + @");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 4);
    }
    try {
        parse_poly("x0 + 1");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 0);
    }
    CHECK_THROWS_AS(parse_poly("x3", 2), ParseError);       // above explicit d
    CHECK_THROWS_AS(parse_poly("(1 - x1", 2), ParseError);  // unbalanced
    CHECK_THROWS_AS(parse_poly(""), ParseError);
}

TEST_CASE("matrix polynomial documents round-trip") {
    PolyQ m(2, 2, 2);
    m.add_entry_term(Word::empty(), 0, 0, RatC(1));
    m.add_entry_term(Word::empty(), 1, 1, RatC(1));
    m.add_entry_term(Word::single(1), 0, 1, RatC(Rational(2, 3)));
    m.add_entry_term(Word(std::vector<std::int32_t>{2, 1}), 1, 0, RatC(Rational(-1), Rational(1, 2)));
    std::string doc = matrix_poly_to_json(m);
    PolyQ back = matrix_poly_from_json(doc);
    CHECK(back == m);
}

TEST_CASE("formatting canonicalizes term order") {
    PolyQ p = parse_poly("x1*x2 + 1 - x2");
    CHECK(format_poly(p) == "1 - x2 + x1*x2");
}
