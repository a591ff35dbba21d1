#ifndef FOCKOPA_COEFFMAT_HPP
#define FOCKOPA_COEFFMAT_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "fockopa/errors.hpp"
#include "fockopa/rational.hpp"

namespace fockopa {

/// Scalar policy shared by the floating and exact coefficient modes.
template <class T>
struct ScalarOps;

template <>
struct ScalarOps<std::complex<double>> {
    static std::complex<double> zero() { return {0.0, 0.0}; }
    static std::complex<double> one() { return {1.0, 0.0}; }
    static std::complex<double> conj(const std::complex<double>& z) { return std::conj(z); }
    // floating-mode pruning threshold, absolute
    static bool negligible(const std::complex<double>& z) { return std::abs(z) <= 1e-14; }
    static std::complex<double> to_complex(const std::complex<double>& z) { return z; }
};

template <>
struct ScalarOps<RatC> {
    static RatC zero() { return RatC(); }
    static RatC one() { return RatC(1); }
    static RatC conj(const RatC& z) { return z.conj(); }
    static bool negligible(const RatC& z) { return z.is_zero(); }
    static std::complex<double> to_complex(const RatC& z) { return z.to_complex(); }
};

/// Minimal dense matrix over an arbitrary scalar; row-major storage.
/// Used for polynomial coefficient blocks in both numeric and exact mode.
template <class T>
class CoeffMat {
   public:
    CoeffMat() = default;
    CoeffMat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, ScalarOps<T>::zero()) {}

    static CoeffMat identity(int n) {
        CoeffMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = ScalarOps<T>::one();
        return m;
    }
    static CoeffMat scalar(int n, const T& v) {
        CoeffMat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = v;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    bool negligible() const {
        for (const auto& v : a_)
            if (!ScalarOps<T>::negligible(v)) return false;
        return true;
    }

    bool operator==(const CoeffMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    CoeffMat operator+(const CoeffMat& o) const {
        require_same_shape(o);
        CoeffMat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] + o.a_[i];
        return r;
    }
    CoeffMat operator-(const CoeffMat& o) const {
        require_same_shape(o);
        CoeffMat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] - o.a_[i];
        return r;
    }
    CoeffMat operator-() const {
        CoeffMat r = *this;
        for (auto& v : r.a_) v = -v;
        return r;
    }
    CoeffMat operator*(const CoeffMat& o) const {
        if (cols_ != o.rows_) throw ShapeError("CoeffMat: product shape mismatch");
        CoeffMat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& v = (*this)(i, k);
                if (ScalarOps<T>::negligible(v)) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) = r(i, j) + v * o(k, j);
            }
        return r;
    }
    CoeffMat scaled(const T& c) const {
        CoeffMat r = *this;
        for (auto& v : r.a_) v = v * c;
        return r;
    }
    CoeffMat adjoint() const {
        CoeffMat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = ScalarOps<T>::conj((*this)(i, j));
        return r;
    }

   private:
    void require_same_shape(const CoeffMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("CoeffMat: shape mismatch");
    }
    int rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

}  // namespace fockopa

#endif
