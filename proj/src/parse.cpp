#include "fockopa/parse.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdio>

#include "fockopa/errors.hpp"

namespace fockopa {

Rational rational_from_decimal(const std::string& text) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
    // fraction form p/q
    if (text.find('/') != std::string::npos) {
        auto slash = text.find('/');
        boost::multiprecision::cpp_int num(text.substr(i, slash - i));
        boost::multiprecision::cpp_int den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        Rational r(num, den);
        return negative ? -r : r;
    }
    boost::multiprecision::cpp_int mantissa = 0;
    long frac_digits = 0;
    bool any = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
        mantissa = mantissa * 10 + (text[i] - '0');
        any = true;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            mantissa = mantissa * 10 + (text[i] - '0');
            ++frac_digits;
            any = true;
        }
    }
    if (!any) throw std::invalid_argument("no digits in numeric literal");
    long exp10 = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = text[i++] == '-';
        if (i >= text.size()) throw std::invalid_argument("empty exponent");
        long e = 0;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) e = e * 10 + (text[i] - '0');
        exp10 = eneg ? -e : e;
    }
    if (i != text.size()) throw std::invalid_argument("trailing characters in numeric literal");
    Rational r(mantissa);
    long shift = exp10 - frac_digits;
    boost::multiprecision::cpp_int p10 = 1;
    for (long k = 0; k < std::abs(shift); ++k) p10 *= 10;
    if (shift >= 0)
        r *= Rational(p10);
    else
        r /= Rational(p10);
    return negative ? -r : r;
}

std::string rational_to_string(const Rational& r) {
    using boost::multiprecision::cpp_int;
    cpp_int num = numerator(r), den = denominator(r);
    // decimal rendering is exact iff den = 2^a 5^b
    cpp_int d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    if (d != 1) return num.str() + "/" + den.str();
    if (den == 1) return num.str();
    int digits = std::max(twos, fives);
    cpp_int scaled = num;
    for (int k = 0; k < digits; ++k) scaled *= 10;
    scaled /= den;
    bool neg = scaled < 0;
    std::string s = cpp_int(boost::multiprecision::abs(scaled)).str();
    if (int(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return (neg ? "-" : "") + s;
}

namespace {

class Parser {
   public:
    Parser(const std::string& text, std::optional<int> d) : text_(text), d_limit_(d) {}

    PolyQ run() {
        skip_ws();
        PolyQ p = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        int d = d_limit_.value_or(std::max(max_letter_, 1));
        return rebase(p, d);
    }

   private:
    const std::string& text_;
    std::size_t pos_ = 0;
    std::optional<int> d_limit_;
    int max_letter_ = 0;

    // The working d while parsing; widened at the end.
    static constexpr int kWorkD = 1 << 20;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool peek_is(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool consume(char c) {
        if (peek_is(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    static PolyQ rebase(const PolyQ& p, int d) {
        PolyQ r(p.rows(), p.cols(), d);
        for (const auto& [w, c] : p.terms()) r.add_term(w, c);
        return r;
    }

    PolyQ parse_sum() {
        skip_ws();
        bool neg_first = false;
        if (consume('-'))
            neg_first = true;
        else
            consume('+');
        PolyQ acc = parse_term();
        if (neg_first) acc = neg(acc);
        for (;;) {
            skip_ws();
            if (consume('+'))
                acc = add(acc, parse_term());
            else if (consume('-'))
                acc = sub(acc, parse_term());
            else
                break;
        }
        return acc;
    }

    PolyQ parse_term() {
        PolyQ acc = parse_factor();
        for (;;) {
            skip_ws();
            if (consume('*')) {
                acc = mul(acc, parse_factor());
                continue;
            }
            // juxtaposition: a factor can start with digit, '(' or 'x'
            if (pos_ < text_.size()) {
                char c = text_[pos_];
                if (std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'x') {
                    acc = mul(acc, parse_factor());
                    continue;
                }
            }
            break;
        }
        return acc;
    }

    PolyQ parse_factor() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("expected coefficient or letter", pos_);
        char c = text_[pos_];
        if (c == '(') return parse_paren();
        if (c == 'x') return parse_letter();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            Rational r = parse_real();
            PolyQ p(1, 1, kWorkD);
            p.add_entry_term(Word::empty(), 0, 0, RatC(r));
            return p;
        }
        throw ParseError("expected coefficient or letter", pos_);
    }

    PolyQ parse_paren() {
        std::size_t open = pos_;
        ++pos_;  // '('
        // complex coefficient lookahead: real sign real 'i' ')'
        std::size_t save = pos_;
        try {
            skip_ws();
            Rational re = parse_signed_real();
            skip_ws();
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
                bool negim = text_[pos_] == '-';
                ++pos_;
                skip_ws();
                Rational im = parse_real();
                skip_ws();
                if (pos_ < text_.size() && text_[pos_] == 'i') {
                    ++pos_;
                    skip_ws();
                    if (pos_ < text_.size() && text_[pos_] == ')') {
                        ++pos_;
                        PolyQ p(1, 1, kWorkD);
                        p.add_entry_term(Word::empty(), 0, 0, RatC(re, negim ? -im : im));
                        return p;
                    }
                }
            }
        } catch (const ParseError&) {
            // fall through to grouped subexpression
        }
        pos_ = save;
        PolyQ inner = parse_sum();
        skip_ws();
        if (!consume(')')) throw ParseError("unbalanced parenthesis", open);
        return inner;
    }

    PolyQ parse_letter() {
        std::size_t at = pos_;
        ++pos_;  // 'x'
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError("letter must be x<positive-integer>", at);
        long idx = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            idx = idx * 10 + (text_[pos_] - '0');
            if (idx > kWorkD) throw ParseError("letter index out of range", at);
            ++pos_;
        }
        if (idx < 1) throw ParseError("letter index out of range", at);
        if (d_limit_ && idx > *d_limit_) throw ParseError("letter index out of range", at);
        max_letter_ = std::max(max_letter_, int(idx));
        PolyQ p(1, 1, kWorkD);
        p.add_entry_term(Word::single(std::int32_t(idx)), 0, 0, RatC(1));
        return p;
    }

    Rational parse_signed_real() {
        skip_ws();
        bool negv = false;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) negv = text_[pos_++] == '-';
        Rational r = parse_real();
        return negv ? -r : r;
    }

    Rational parse_real() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                ++pos_;
            } else if ((c == 'e' || c == 'E') && pos_ + 1 < text_.size() &&
                       (std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) || text_[pos_ + 1] == '+' ||
                        text_[pos_ + 1] == '-')) {
                pos_ += 2;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            } else if (c == '/' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                ++pos_;
            } else {
                break;
            }
        }
        if (pos_ == start) throw ParseError("expected number", start);
        try {
            return rational_from_decimal(text_.substr(start, pos_ - start));
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad numeric literal: ") + e.what(), start);
        }
    }
};

std::string format_ratc(const RatC& z, bool& pure_one, bool& negative) {
    pure_one = false;
    negative = false;
    if (z.is_real()) {
        Rational r = z.re;
        if (r < 0) {
            negative = true;
            r = -r;
        }
        if (r == 1) {
            pure_one = true;
            return "1";
        }
        return rational_to_string(r);
    }
    std::string re = rational_to_string(z.re);
    std::string im = rational_to_string(boost::multiprecision::abs(z.im));
    return "(" + re + (z.im < 0 ? "-" : "+") + im + "i)";
}

std::string format_double(double v) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        double back = 0;
        std::sscanf(buf, "%lg", &back);
        if (back == v) break;
    }
    return buf;
}

std::string format_cd(const std::complex<double>& z, bool& pure_one, bool& negative) {
    pure_one = false;
    negative = false;
    if (z.imag() == 0.0) {
        double r = z.real();
        if (r < 0) {
            negative = true;
            r = -r;
        }
        if (r == 1.0) {
            pure_one = true;
            return "1";
        }
        return format_double(r);
    }
    return "(" + format_double(z.real()) + (z.imag() < 0 ? "-" : "+") + format_double(std::abs(z.imag())) + "i)";
}

template <class T, class Fmt>
std::string format_scalar_poly(const MatrixFreePoly<T>& p, Fmt fmt) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : p.terms()) {
        bool one = false, negv = false;
        std::string cs = fmt(c(0, 0), one, negv);
        if (first) {
            if (negv) out += "-";
            first = false;
        } else {
            out += negv ? " - " : " + ";
        }
        if (w.is_empty()) {
            out += cs;
        } else if (one) {
            out += w.str();
        } else {
            out += cs + " " + w.str();
        }
    }
    return out;
}

}  // namespace

PolyQ parse_poly(const std::string& text, std::optional<int> d) {
    if (d && *d < 1) throw PreconditionError("parse_poly: d must be >= 1");
    return Parser(text, d).run();
}

std::string format_poly(const PolyQ& p) {
    if (p.rows() != 1 || p.cols() != 1) throw ShapeError("format_poly: scalar polynomial expected");
    return format_scalar_poly(p, format_ratc);
}

std::string format_poly(const PolyC& p) {
    if (p.rows() != 1 || p.cols() != 1) throw ShapeError("format_poly: scalar polynomial expected");
    return format_scalar_poly(p, format_cd);
}

std::string matrix_poly_to_json(const PolyQ& p) {
    nlohmann::json j;
    j["rows"] = p.rows();
    j["cols"] = p.cols();
    j["d"] = p.d();
    auto entries = nlohmann::json::array();
    for (int i = 0; i < p.rows(); ++i)
        for (int c = 0; c < p.cols(); ++c) {
            PolyQ e = scalar_entry(p, i, c);
            if (e.is_zero()) continue;
            entries.push_back({{"i", i}, {"j", c}, {"poly", format_poly(e)}});
        }
    j["entries"] = std::move(entries);
    return j.dump(2);
}

PolyQ matrix_poly_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    int rows = j.at("rows").get<int>();
    int cols = j.at("cols").get<int>();
    int d = j.at("d").get<int>();
    PolyQ p(rows, cols, d);
    for (const auto& e : j.at("entries")) {
        int i = e.at("i").get<int>();
        int c = e.at("j").get<int>();
        if (i < 0 || i >= rows || c < 0 || c >= cols) throw ShapeError("matrix poly document: entry out of range");
        PolyQ ep = parse_poly(e.at("poly").get<std::string>(), d);
        for (const auto& [w, m] : ep.terms()) p.add_entry_term(w, i, c, m(0, 0));
    }
    return p;
}

}  // namespace fockopa
