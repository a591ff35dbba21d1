#ifndef FOCKOPA_SIGMA_HPP
#define FOCKOPA_SIGMA_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fockopa/freepoly.hpp"
#include "fockopa/rational.hpp"
#include "fockopa/specrad.hpp"

namespace fockopa {

/// Lazily expandable matrix polynomial built from pencil powers, products
/// and block assembly. Carries a degree ledger and a certified left
/// multiplier bound alongside the structure, so norms of astronomically
/// large combinations stay computable without word expansion.
class StructuredPoly {
   public:
    static StructuredPoly constant(Eigen::MatrixXcd c, int d);
    static StructuredPoly identity(int m, int d);
    /// Σ_k coeffs[k] · (Mx)^k.
    static StructuredPoly pencil_series(MatrixTuple m, std::vector<double> coeffs, double mult_bound);
    /// Yx = Σ Y_j x_j with rectangular letterwise blocks.
    static StructuredPoly linear_term(std::vector<Eigen::MatrixXcd> y);
    static StructuredPoly product(std::vector<StructuredPoly> factors);
    static StructuredPoly scaled(double c, StructuredPoly inner);
    /// [[a, b], [0, c]].
    static StructuredPoly block2x2(StructuredPoly a, StructuredPoly b, StructuredPoly c);

    int rows() const;
    int cols() const;
    int d() const;
    long long degree() const;      // realized degree of the structure
    double mult_bound() const;     // certified left multiplier bound

    /// Dense expansion; throws CapacityError when the stored term count
    /// would exceed the cap.
    PolyC expand(std::size_t term_capacity = 200000) const;

    struct Node;
    StructuredPoly() = default;  // empty handle; assign before use
    explicit StructuredPoly(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    const std::shared_ptr<const Node>& node() const { return node_; }

   private:
    std::shared_ptr<const Node> node_;
};

/// One-variable optimal approximant coefficients for 1−z at degree n:
/// entry k is (n+1−k)/(n+2).
std::vector<double> pi_coeffs(int n);
Rational pi_coeff_exact(int n, int k);
/// Exact sup-norm Σ_k pi_coeffs = (n+1)/2.
Rational pi_sup_norm_exact(int n);

/// π_n(Mx) for a column contraction M; the recorded multiplier bound is the
/// disk sup norm (n+1)/2 (von Neumann).
StructuredPoly pi_of_pencil(const MatrixTuple& m, int n);

/// Exact value of ‖π_n(Mx)(I−Mx) − I‖²: the telescoped residual is
/// −(1/(n+2)) Σ_{k=0}^{n+1} (Mx)^k (the constant term survives), and the
/// homogeneous degrees are orthogonal, so the squared norm is
/// (1/(n+2)²) Σ_{k=0}^{n+1} structural_power_norm_sq(M, k).
double pi_residual_norm_sq(const MatrixTuple& m, int n);

struct SigmaLevel {
    int block = 0;               // 0-based diagonal block index
    bool zero_block = false;
    long long inner_degree = 0;  // N used for the off-diagonal corrector
    long long degree_bound = 0;  // budget (j−1) + n + … + n^{3^{j−1}}
    long long realized_degree = 0;
    double mult_bound_budget = 0; // n^{1+3+…+3^{j−1}} scale with constants
    double mult_bound = 0;       // tree-certified
    double offdiag_col_norm = 0; // ‖Yx‖_mult for this level
};

struct SigmaBuild {
    StructuredPoly sigma;
    int n = 0;
    std::optional<long long> n_override;
    std::vector<SigmaLevel> ledger;
};

/// The recursive construction: level 1 is π_n(M^{(1)}x); each following
/// level wraps [[σ, r], [0, q]] with q = π_n(M^{(j)}x) and
/// r = −σ·(Yx)·π_N(M^{(j)}x), N = n^{3^{j−1}} unless overridden.
/// Zero diagonal blocks take q = I and the corrector cancels exactly.
SigmaBuild sigma_build(const TriangularPencilForm& form, int n,
                       std::optional<long long> n_override = std::nullopt);

enum class SigmaResidualMode { Exact, Blockwise };

struct SigmaResidualLevel {
    int block = 0;
    double diagonal = 0.0;       // closed-form π residual (0 for zero blocks)
    double offdiagonal = 0.0;    // certified bound (0 at level 1 / zero blocks)
    double sigma_mult_bound = 0.0;
    double y_col_norm = 0.0;
    double pi_tail_residual = 0.0;
};

struct SigmaResidual {
    double value = 0.0;          // exact squared norm, or certified upper bound
    bool certified_upper_bound = false;
    std::vector<SigmaResidualLevel> levels;  // blockwise ledger
};

/// ‖σ (I − Āx) − I‖²: exact dense expansion, or the blockwise certified
/// upper bound assembled from closed-form diagonal residuals and the
/// multiplier-chain estimate for the off-diagonal correctors.
SigmaResidual sigma_residual_norm_sq(const TriangularPencilForm& form, const SigmaBuild& build,
                                     SigmaResidualMode mode, std::size_t term_capacity = 200000);

std::string sigma_report(const SigmaBuild& build, const SigmaResidual& res);
/// The same ledger as a JSON document (per-level bounds plus the mode).
std::string sigma_report_json(const SigmaBuild& build, const SigmaResidual& res);

}  // namespace fockopa

#endif
