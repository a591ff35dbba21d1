#ifndef FOCKOPA_OPA_HPP
#define FOCKOPA_OPA_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fockopa/basis.hpp"
#include "fockopa/freepoly.hpp"
#include "fockopa/specrad.hpp"

namespace fockopa {

struct OpaOptions {
    std::size_t capacity = kDefaultBasisCapacity;  // max words in the unknown's basis
    // Dense pivoted COD up to this many columns; above it, blocked
    // Householder QR with a rank check and pivoted fallback.
    Eigen::Index pivoted_max_cols = 1024;
    double rank_tol = 1e-10;
};

struct OpaDiagnostics {
    double normal_residual = 0.0;  // ‖M^*(Mx − b)‖_∞ over the row solves
    double cond_estimate = 0.0;    // |R_00| / |R_kk| from the QR factor
    Eigen::Index rank = 0;
    Eigen::Index cols = 0;
    bool rank_deficient = false;   // minimum-norm solution selected
    std::string method;            // "cod", "qr", "qr+cod", "pencil-elimination"
};

struct OpaResult {
    int n = 0;
    PolyC approximant;   // P_n
    double residual = 0; // c_n = ‖P_n F − I‖², recomputed by convolution
    OpaDiagnostics diag;
};

/// Least-squares minimizer of ‖P F − I‖² over k×k matrix polynomials P of
/// degree ≤ n. The k rows decouple into independent solves sharing one QR
/// factorization of the right-multiplication matrix.
OpaResult solve_opa(const PolyC& f, int n, const OpaOptions& opts = {});

/// Same minimizer for a monic pencil, via backward elimination over word
/// length: an O(n·d·m³) route used as the independent cross-check and for
/// degrees where the dense factorization is impractical.
OpaResult pencil_opa(const MonicPencil& pencil, int n);

struct DecayRow {
    int n = 0;
    double c_n = 0.0;
    std::size_t basis_words = 0;
    double time_ms = 0.0;
};

struct DecayTable {
    std::string descriptor;
    std::vector<DecayRow> rows;
    std::pair<int, int> window{0, 0};
    double slope = 0.0;            // log-log fit over the window
    std::optional<int> atoms;      // ℓ when known
    std::optional<double> guaranteed_exponent;  // 1/3^{ℓ−1}
};

DecayTable decay_table(const PolyC& f, int n_max, std::pair<int, int> window, const OpaOptions& opts = {});

/// CSV with header `n,c_n,degree_basis_size,time_ms`, 17 significant digits.
std::string decay_csv(const DecayTable& t);

/// Log-log least squares slope of c against n over [window.first, window.second].
double loglog_slope(const std::vector<DecayRow>& rows, std::pair<int, int> window);

struct CyclicityReport {
    bool constant_term_singular = false;
    std::optional<double> pencil_rho;      // absent when no pencil exists
    bool nonsingular_in_row_ball = false;  // ρ ≤ 1 verdict
    double c_last = 0.0;
    double threshold = 0.0;
    bool decayed_below_threshold = false;
    bool consistent = false;
    DecayTable table;
};

/// Links the zero-set verdict (ρ of the linearized pencil) with the observed
/// decay of c_n. Takes exact input because the linearization is symbolic.
CyclicityReport cyclicity_verdict(const PolyQ& f, int n_max, double threshold, const OpaOptions& opts = {});

/// Squared norm of the evaluation functional P ↦ P(X) at a strict row-ball
/// point: Σ_k tr(Ψ_X^k(I)), summed to convergence with the geometric tail
/// bound m‖X‖_row^{2k}. Throws for ‖X‖_row ≥ 1.
double evaluation_functional_norm_sq(const MatrixTuple& x, double tail_tol = 1e-12);

/// If det F(X) = 0 at a strict row-ball point X, then every c_n is at least
/// 1 / evaluation_functional_norm_sq(X): a singular matrix is at Frobenius
/// distance ≥ 1 from the identity, and evaluation is bounded.
double singular_point_lower_bound(const MatrixTuple& x, double tail_tol = 1e-12);

}  // namespace fockopa

#endif
