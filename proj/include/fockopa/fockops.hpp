#ifndef FOCKOPA_FOCKOPS_HPP
#define FOCKOPA_FOCKOPS_HPP

#include <Eigen/Dense>

#include "fockopa/basis.hpp"
#include "fockopa/freepoly.hpp"
#include "fockopa/tuple.hpp"

namespace fockopa {

/// Matrix of P ↦ F·P for square k×k F, from coefficients on words of length
/// ≤ n to words of length ≤ n + deg F, in the word ⊗ matrix-unit basis with
/// column-stacked k×k blocks. Applying it to the stacked coefficient vector
/// of P reproduces the coefficients of mul(F, P).
Eigen::MatrixXcd left_mult_matrix(const PolyC& f, int n, std::size_t capacity = kDefaultBasisCapacity);

/// Matrix of the right action r ↦ r·F on 1×k row coefficient vectors
/// (each word slot stores the transposed row). Used by the approximant
/// solver, where the rows of the unknown decouple.
Eigen::MatrixXcd right_mult_matrix(const PolyC& f, int n, std::size_t capacity = kDefaultBasisCapacity);

/// ‖X‖_row = ‖Σ X_j X_j^*‖^{1/2} and ‖X‖_col = ‖Σ X_j^* X_j‖^{1/2}.
double row_norm(const MatrixTuple& x);
double col_norm(const MatrixTuple& x);
/// Column norm of a rectangular letterwise block (off-diagonal pencil data).
double col_norm_general(const std::vector<Eigen::MatrixXcd>& y);

/// Exact left-multiplier norm of the homogeneous pencil A₁x₁+…+A_dx_d,
/// which equals ‖A‖_col.
double pencil_mult_norm(const MatrixTuple& a);

/// The m²×m² matrix of T ↦ Σ_j X_j T X_j^* under column-stacking vec.
class CpMapMatrix {
   public:
    explicit CpMapMatrix(MatrixTuple x);

    const MatrixTuple& source() const { return x_; }
    const Eigen::MatrixXcd& matrix() const { return k_; }

    /// Ψ_X(T), computed directly from the tuple.
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& t) const;

   private:
    MatrixTuple x_;
    Eigen::MatrixXcd k_;
};

inline CpMapMatrix cp_map(const MatrixTuple& x) { return CpMapMatrix(x); }

/// tr(Φ^k(I)) with Φ(T) = Σ_j M_j^* T M_j; equals the squared coefficient
/// norm of the expanded (Mx)^k without word expansion.
double structural_power_norm_sq(const MatrixTuple& m, int k);
/// All values for k = 0..kmax in one backward pass.
std::vector<double> structural_power_norms_sq(const MatrixTuple& m, int kmax);

/// Largest singular value of left_mult_matrix(P, n): a certified,
/// nondecreasing-in-n lower bound for the left multiplier norm of P.
double multiplier_norm_lower_bound(const PolyC& p, int n, std::size_t capacity = kDefaultBasisCapacity);

/// Operator 2-norm via hermitian eigensolve of the Gram matrix.
double operator_norm(const Eigen::MatrixXcd& m);

/// Debug helper: dense matrix as CSV ("re+imi" cells).
std::string matrix_to_csv(const Eigen::MatrixXcd& m);

}  // namespace fockopa

#endif
