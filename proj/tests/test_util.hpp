#ifndef FOCKOPA_TEST_UTIL_HPP
#define FOCKOPA_TEST_UTIL_HPP

#include <map>
#include <random>
#include <vector>

#include "fockopa/freepoly.hpp"
#include "fockopa/sampling.hpp"
#include "fockopa/tuple.hpp"

namespace fockopa::testutil {

/// Brute-force convolution oracle for scalar polynomial products, written
/// against plain maps so it shares nothing with mul().
inline std::map<std::vector<int>, std::complex<double>> naive_product(
    const std::map<std::vector<int>, std::complex<double>>& p,
    const std::map<std::vector<int>, std::complex<double>>& q) {
    std::map<std::vector<int>, std::complex<double>> r;
    for (const auto& [w, a] : p)
        for (const auto& [v, b] : q) {
            std::vector<int> u = w;
            u.insert(u.end(), v.begin(), v.end());
            r[u] += a * b;
        }
    for (auto it = r.begin(); it != r.end();)
        it = std::abs(it->second) < 1e-15 ? r.erase(it) : std::next(it);
    return r;
}

inline std::map<std::vector<int>, std::complex<double>> as_map(const PolyC& p) {
    std::map<std::vector<int>, std::complex<double>> r;
    for (const auto& [w, c] : p.terms()) {
        std::vector<int> key(w.letters().begin(), w.letters().end());
        r[key] = c(0, 0);
    }
    return r;
}

/// Random scalar PolyC with support size `terms` and words of length ≤ deg.
inline PolyC random_scalar_poly(int d, int deg, int terms, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> len(0, deg), letter(1, d);
    std::normal_distribution<double> g;
    PolyC p(1, 1, d);
    for (int t = 0; t < terms; ++t) {
        std::vector<std::int32_t> w(std::size_t(len(rng)));
        for (auto& l : w) l = letter(rng);
        p.add_entry_term(Word(std::move(w)), 0, 0, {g(rng), g(rng)});
    }
    return p;
}

/// Random matrix PolyC (rows×cols) with small support.
inline PolyC random_matrix_poly(int rows, int cols, int d, int deg, int terms, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> len(0, deg), letter(1, d);
    std::normal_distribution<double> g;
    PolyC p(rows, cols, d);
    for (int t = 0; t < terms; ++t) {
        std::vector<std::int32_t> w(std::size_t(len(rng)));
        for (auto& l : w) l = letter(rng);
        CoeffMat<std::complex<double>> c(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) c(i, j) = {g(rng), g(rng)};
        p.add_term(Word(std::move(w)), std::move(c));
    }
    return p;
}

/// Random exact polynomial with small integer coefficients.
inline PolyQ random_rational_poly(int d, int deg, int terms, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> len(0, deg), letter(1, d), coef(-4, 4);
    PolyQ p(1, 1, d);
    for (int t = 0; t < terms; ++t) {
        std::vector<std::int32_t> w(std::size_t(len(rng)));
        for (auto& l : w) l = letter(rng);
        p.add_entry_term(Word(std::move(w)), 0, 0, RatC(Rational(coef(rng)), Rational(coef(rng))));
    }
    return p;
}

inline Eigen::MatrixXcd unit(int m, int i, int j) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(m, m);
    e(i, j) = 1.0;
    return e;
}

/// The flip tuple (E12, E21): irreducible, Ψ(I) = I, radius 1.
inline MatrixTuple flip_tuple() { return MatrixTuple({unit(2, 0, 1), unit(2, 1, 0)}); }

}  // namespace fockopa::testutil

#endif
