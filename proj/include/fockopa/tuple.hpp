#ifndef FOCKOPA_TUPLE_HPP
#define FOCKOPA_TUPLE_HPP

#include <Eigen/Dense>

#include <vector>

#include "fockopa/errors.hpp"
#include "fockopa/freepoly.hpp"
#include "fockopa/word.hpp"

namespace fockopa {

/// A point X = (X_1,…,X_d) of m×m complex matrices.
class MatrixTuple {
   public:
    MatrixTuple() = default;
    explicit MatrixTuple(std::vector<Eigen::MatrixXcd> mats) : x_(std::move(mats)) {
        if (x_.empty()) throw ShapeError("MatrixTuple: needs at least one matrix");
        level_ = int(x_.front().rows());
        for (const auto& m : x_)
            if (m.rows() != level_ || m.cols() != level_)
                throw ShapeError("MatrixTuple: all matrices must share one square dimension");
    }

    static MatrixTuple zero(int d, int m) {
        return MatrixTuple(std::vector<Eigen::MatrixXcd>(d, Eigen::MatrixXcd::Zero(m, m)));
    }

    int d() const { return int(x_.size()); }
    int level() const { return level_; }
    const Eigen::MatrixXcd& mat(int j) const { return x_[j]; }
    const std::vector<Eigen::MatrixXcd>& mats() const { return x_; }

    /// Entrywise-adjoint tuple X* = (X_1^*, …, X_d^*).
    MatrixTuple adjoint_tuple() const {
        std::vector<Eigen::MatrixXcd> v;
        v.reserve(x_.size());
        for (const auto& m : x_) v.push_back(m.adjoint());
        return MatrixTuple(std::move(v));
    }

    MatrixTuple scaled(std::complex<double> c) const {
        std::vector<Eigen::MatrixXcd> v;
        v.reserve(x_.size());
        for (const auto& m : x_) v.push_back(c * m);
        return MatrixTuple(std::move(v));
    }

    /// S⁻¹ X S, letterwise.
    MatrixTuple conjugated(const Eigen::MatrixXcd& s) const {
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(s);
        std::vector<Eigen::MatrixXcd> v;
        v.reserve(x_.size());
        for (const auto& m : x_) v.push_back(lu.solve(m * s));
        return MatrixTuple(std::move(v));
    }

    MatrixTuple direct_sum(const MatrixTuple& o) const {
        if (d() != o.d()) throw ShapeError("direct_sum: letter counts differ");
        std::vector<Eigen::MatrixXcd> v;
        for (int j = 0; j < d(); ++j) {
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(level_ + o.level_, level_ + o.level_);
            m.topLeftCorner(level_, level_) = x_[j];
            m.bottomRightCorner(o.level_, o.level_) = o.x_[j];
            v.push_back(std::move(m));
        }
        return MatrixTuple(std::move(v));
    }

    /// Square diagonal sub-tuple at offset r0 with size s.
    MatrixTuple block(int r0, int s) const {
        std::vector<Eigen::MatrixXcd> v;
        v.reserve(x_.size());
        for (const auto& m : x_) v.push_back(m.block(r0, r0, s, s));
        return MatrixTuple(std::move(v));
    }

    /// X^w = X_{i1}···X_{im}; the empty word gives the identity.
    Eigen::MatrixXcd word_eval(const Word& w) const {
        Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(level_, level_);
        for (auto l : w.letters()) r = r * x_[l - 1];
        return r;
    }

    double max_entry_norm() const {
        double s = 0;
        for (const auto& m : x_) s = std::max(s, m.cwiseAbs().maxCoeff());
        return s;
    }

   private:
    int level_ = 0;
    std::vector<Eigen::MatrixXcd> x_;
};

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

/// F(X) = Σ_w A_w ⊗ X^w, a (k·m)×(k′·m) matrix.
inline Eigen::MatrixXcd eval(const PolyC& f, const MatrixTuple& x) {
    if (f.d() != x.d()) throw ShapeError("eval: letter counts differ");
    const int m = x.level();
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(f.rows() * m, f.cols() * m);
    for (const auto& [w, c] : f.terms()) {
        Eigen::MatrixXcd a(c.rows(), c.cols());
        for (int i = 0; i < c.rows(); ++i)
            for (int j = 0; j < c.cols(); ++j) a(i, j) = c(i, j);
        r += kron(a, x.word_eval(w));
    }
    return r;
}

}  // namespace fockopa

#endif
