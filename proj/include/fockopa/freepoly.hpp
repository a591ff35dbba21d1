#ifndef FOCKOPA_FREEPOLY_HPP
#define FOCKOPA_FREEPOLY_HPP

#include <complex>
#include <map>
#include <optional>
#include <utility>

#include "fockopa/coeffmat.hpp"
#include "fockopa/errors.hpp"
#include "fockopa/word.hpp"

namespace fockopa {

/// Finitely supported map from words to rows×cols coefficient matrices over
/// d letters. Canonical form: no stored coefficient block is negligible.
/// Values are immutable in spirit; every operation returns a fresh value.
template <class T>
class MatrixFreePoly {
   public:
    using Coeff = CoeffMat<T>;
    using TermMap = std::map<Word, Coeff>;

    MatrixFreePoly() = default;
    MatrixFreePoly(int rows, int cols, int d) : rows_(rows), cols_(cols), d_(d) {
        if (rows < 1 || cols < 1 || d < 0) throw ShapeError("MatrixFreePoly: bad dimensions");
    }

    static MatrixFreePoly zero(int rows, int cols, int d) { return MatrixFreePoly(rows, cols, d); }
    static MatrixFreePoly identity(int k, int d) {
        MatrixFreePoly p(k, k, d);
        p.add_term(Word::empty(), Coeff::identity(k));
        return p;
    }
    static MatrixFreePoly constant(Coeff c, int d) {
        MatrixFreePoly p(c.rows(), c.cols(), d);
        p.add_term(Word::empty(), std::move(c));
        return p;
    }
    /// The scalar monomial c·x^w as a 1×1 polynomial.
    static MatrixFreePoly monomial(const Word& w, const T& c, int d) {
        MatrixFreePoly p(1, 1, d);
        Coeff m(1, 1);
        m(0, 0) = c;
        p.add_term(w, std::move(m));
        return p;
    }
    static MatrixFreePoly letter(std::int32_t j, int d) {
        if (j < 1 || j > d) throw ShapeError("letter index out of range");
        return monomial(Word::single(j), ScalarOps<T>::one(), d);
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int d() const { return d_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    /// Degree of the zero polynomial is absent (no integer sentinel).
    std::optional<int> degree() const {
        if (terms_.empty()) return std::nullopt;
        return int(terms_.rbegin()->first.length());
    }

    Coeff coeff(const Word& w) const {
        auto it = terms_.find(w);
        if (it != terms_.end()) return it->second;
        return Coeff(rows_, cols_);
    }

    void add_term(const Word& w, Coeff c) {
        if (c.rows() != rows_ || c.cols() != cols_) throw ShapeError("term block has wrong shape");
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            if (!c.negligible()) terms_.emplace(w, std::move(c));
        } else {
            it->second = it->second + c;
            if (it->second.negligible()) terms_.erase(it);
        }
    }
    /// Adds v to the (i,j) entry's coefficient at word w.
    void add_entry_term(const Word& w, int i, int j, const T& v) {
        Coeff c(rows_, cols_);
        c(i, j) = v;
        add_term(w, std::move(c));
    }

    bool operator==(const MatrixFreePoly& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_ && terms_ == o.terms_;
    }

   private:
    int rows_ = 1, cols_ = 1, d_ = 0;
    TermMap terms_;
};

using PolyC = MatrixFreePoly<std::complex<double>>;
using PolyQ = MatrixFreePoly<RatC>;

namespace detail {
template <class T>
void require_same_algebra(const MatrixFreePoly<T>& p, const MatrixFreePoly<T>& q) {
    if (p.d() != q.d()) throw ShapeError("letter counts differ");
}
}  // namespace detail

template <class T>
MatrixFreePoly<T> add(const MatrixFreePoly<T>& p, const MatrixFreePoly<T>& q) {
    detail::require_same_algebra(p, q);
    if (p.rows() != q.rows() || p.cols() != q.cols()) throw ShapeError("add: shape mismatch");
    MatrixFreePoly<T> r = p;
    for (const auto& [w, c] : q.terms()) r.add_term(w, c);
    return r;
}

template <class T>
MatrixFreePoly<T> neg(const MatrixFreePoly<T>& p) {
    MatrixFreePoly<T> r(p.rows(), p.cols(), p.d());
    for (const auto& [w, c] : p.terms()) r.add_term(w, -c);
    return r;
}

template <class T>
MatrixFreePoly<T> sub(const MatrixFreePoly<T>& p, const MatrixFreePoly<T>& q) {
    return add(p, neg(q));
}

template <class T>
MatrixFreePoly<T> scale(const MatrixFreePoly<T>& p, const T& c) {
    MatrixFreePoly<T> r(p.rows(), p.cols(), p.d());
    for (const auto& [w, m] : p.terms()) r.add_term(w, m.scaled(c));
    return r;
}

/// Free-algebra product: the coefficient of u in pq is the sum of p_w q_v
/// over all splittings u = wv.
template <class T>
MatrixFreePoly<T> mul(const MatrixFreePoly<T>& p, const MatrixFreePoly<T>& q) {
    detail::require_same_algebra(p, q);
    if (p.cols() != q.rows()) throw ShapeError("mul: inner dimensions differ");
    MatrixFreePoly<T> r(p.rows(), q.cols(), p.d());
    for (const auto& [w, a] : p.terms())
        for (const auto& [v, b] : q.terms()) r.add_term(w.concat(v), a * b);
    return r;
}

/// Left shift by the letter x_i: prepends the letter to every word.
/// Coincides with mul(x_i·I, p) and is an isometry for the coefficient norm.
template <class T>
MatrixFreePoly<T> lshift(std::int32_t i, const MatrixFreePoly<T>& p) {
    if (i < 1 || i > p.d()) throw ShapeError("lshift: letter index out of range");
    MatrixFreePoly<T> r(p.rows(), p.cols(), p.d());
    for (const auto& [w, c] : p.terms()) r.add_term(w.prepended(i), c);
    return r;
}

/// Orthogonal projection onto words of length ≤ n.
template <class T>
MatrixFreePoly<T> truncate(const MatrixFreePoly<T>& p, int n) {
    if (n < 0) throw PreconditionError("truncate: n must be >= 0");
    MatrixFreePoly<T> r(p.rows(), p.cols(), p.d());
    for (const auto& [w, c] : p.terms())
        if (int(w.length()) <= n) r.add_term(w, c);
    return r;
}

/// ⟨p,q⟩ = Σ_w tr(q_w^* p_w).
inline std::complex<double> inner(const PolyC& p, const PolyC& q) {
    if (p.rows() != q.rows() || p.cols() != q.cols() || p.d() != q.d())
        throw ShapeError("inner: shape mismatch");
    std::complex<double> s = 0;
    for (const auto& [w, a] : p.terms()) {
        auto it = q.terms().find(w);
        if (it == q.terms().end()) continue;
        const auto& b = it->second;
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) s += a(i, j) * std::conj(b(i, j));
    }
    return s;
}

inline double norm_sq(const PolyC& p) {
    double s = 0;
    for (const auto& [w, a] : p.terms())
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) s += std::norm(a(i, j));
    return s;
}

/// Exact squared coefficient norm for the rational mode.
inline Rational norm_sq_exact(const PolyQ& p) {
    Rational s = 0;
    for (const auto& [w, a] : p.terms())
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) {
                const RatC& z = a(i, j);
                s += z.re * z.re + z.im * z.im;
            }
    return s;
}

inline PolyC to_numeric(const PolyQ& p) {
    PolyC r(p.rows(), p.cols(), p.d());
    for (const auto& [w, a] : p.terms()) {
        CoeffMat<std::complex<double>> c(a.rows(), a.cols());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j).to_complex();
        r.add_term(w, std::move(c));
    }
    return r;
}

/// p ⊕ I_{n−k} for square p of size k ≤ n.
template <class T>
MatrixFreePoly<T> pad_with_identity(const MatrixFreePoly<T>& p, int n) {
    if (p.rows() != p.cols()) throw ShapeError("pad: square input required");
    if (n < p.rows()) throw ShapeError("pad: target smaller than source");
    MatrixFreePoly<T> r(n, n, p.d());
    for (const auto& [w, c] : p.terms()) {
        CoeffMat<T> big(n, n);
        for (int i = 0; i < c.rows(); ++i)
            for (int j = 0; j < c.cols(); ++j) big(i, j) = c(i, j);
        r.add_term(w, std::move(big));
    }
    for (int i = p.rows(); i < n; ++i) r.add_entry_term(Word::empty(), i, i, ScalarOps<T>::one());
    return r;
}

/// The 1×1 polynomial at entry (i,j) of p.
template <class T>
MatrixFreePoly<T> scalar_entry(const MatrixFreePoly<T>& p, int i, int j) {
    MatrixFreePoly<T> r(1, 1, p.d());
    for (const auto& [w, c] : p.terms()) {
        CoeffMat<T> m(1, 1);
        m(0, 0) = c(i, j);
        r.add_term(w, std::move(m));
    }
    return r;
}

/// Block diagonal direct sum.
template <class T>
MatrixFreePoly<T> direct_sum(const MatrixFreePoly<T>& p, const MatrixFreePoly<T>& q) {
    detail::require_same_algebra(p, q);
    MatrixFreePoly<T> r(p.rows() + q.rows(), p.cols() + q.cols(), p.d());
    for (const auto& [w, c] : p.terms()) {
        CoeffMat<T> big(r.rows(), r.cols());
        for (int i = 0; i < c.rows(); ++i)
            for (int j = 0; j < c.cols(); ++j) big(i, j) = c(i, j);
        r.add_term(w, std::move(big));
    }
    for (const auto& [w, c] : q.terms()) {
        CoeffMat<T> big(r.rows(), r.cols());
        for (int i = 0; i < c.rows(); ++i)
            for (int j = 0; j < c.cols(); ++j) big(p.rows() + i, p.cols() + j) = c(i, j);
        r.add_term(w, std::move(big));
    }
    return r;
}

}  // namespace fockopa

#endif
