#ifndef FOCKOPA_PARSE_HPP
#define FOCKOPA_PARSE_HPP

#include <optional>
#include <string>

#include "fockopa/freepoly.hpp"

namespace fockopa {

/// Parses the polynomial text grammar into exact rational coefficients.
///
///   poly    := [sign] term (('+'|'-') term)*
///   term    := factor (['*'] factor)*
///   factor  := complex | real | letter | '(' poly ')'
///   complex := '(' real ('+'|'-') real 'i' ')'
///   letter  := 'x' positive-integer
///   real    := decimal (optional exponent) or integer fraction "p/q"
///
/// Whitespace is insignificant. Decimal literals convert exactly.
/// If d is given, letter indices above it are rejected; otherwise d is the
/// largest letter index used (at least 1).
PolyQ parse_poly(const std::string& text, std::optional<int> d = std::nullopt);

inline PolyC parse_poly_numeric(const std::string& text, std::optional<int> d = std::nullopt) {
    return to_numeric(parse_poly(text, d));
}

/// Canonical text form: graded-lex term order, exact coefficients.
/// parse(format(p)) == p for every canonical p.
std::string format_poly(const PolyQ& p);
std::string format_poly(const PolyC& p);

/// JSON document for matrix polynomials:
/// {"rows": k, "cols": k2, "d": d, "entries": [{"i":0,"j":1,"poly":"..."}]}
/// Entries are 0-based; omitted entries are zero.
std::string matrix_poly_to_json(const PolyQ& p);
PolyQ matrix_poly_from_json(const std::string& json_text);

}  // namespace fockopa

#endif
