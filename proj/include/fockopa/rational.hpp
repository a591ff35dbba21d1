#ifndef FOCKOPA_RATIONAL_HPP
#define FOCKOPA_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>

namespace fockopa {

using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

/// Gaussian rational: exact complex scalar for the symbolic coefficient mode.
struct RatC {
    Rational re{0};
    Rational im{0};

    RatC() = default;
    RatC(Rational r) : re(std::move(r)) {}
    RatC(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    RatC(int v) : re(v) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    friend RatC operator+(const RatC& a, const RatC& b) { return {a.re + b.re, a.im + b.im}; }
    friend RatC operator-(const RatC& a, const RatC& b) { return {a.re - b.re, a.im - b.im}; }
    friend RatC operator-(const RatC& a) { return {-a.re, -a.im}; }
    friend RatC operator*(const RatC& a, const RatC& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend RatC operator/(const RatC& a, const RatC& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("RatC: division by zero");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    RatC& operator+=(const RatC& b) { return *this = *this + b; }
    RatC& operator-=(const RatC& b) { return *this = *this - b; }
    RatC& operator*=(const RatC& b) { return *this = *this * b; }

    friend bool operator==(const RatC& a, const RatC& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const RatC& a, const RatC& b) { return !(a == b); }

    RatC conj() const { return {re, -im}; }
    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

/// Exact conversion of a decimal literal ("1.25", "3e-2", "7/3") to a rational.
/// Throws std::invalid_argument on malformed input.
Rational rational_from_decimal(const std::string& text);

/// Renders r in decimal when the denominator is of the form 2^a 5^b,
/// otherwise as "p/q".
std::string rational_to_string(const Rational& r);

}  // namespace fockopa

#endif
