#ifndef FOCKOPA_LINEARIZE_HPP
#define FOCKOPA_LINEARIZE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fockopa/freepoly.hpp"
#include "fockopa/specrad.hpp"
#include "fockopa/tuple.hpp"

namespace fockopa {

/// Certificate that P (F ⊕ I) Q = G with exactly invertible P, Q.
/// All polynomials carry exact rational coefficients.
struct StableAssocWitness {
    int padded_size = 0;  // N
    PolyQ f;              // original, k×k
    PolyQ g;              // partner, N×N (the pencil occupies the full size)
    PolyQ p, q;           // GL_N certificates
    PolyQ p_inv, q_inv;   // exact inverses
    int d1 = 0;           // deg P + deg Q
    int d2 = 0;           // deg P_inv + deg Q_inv
};

struct LinearizeResult {
    MonicPencil pencil;      // numeric coefficient tuple A with L = I − Ax
    PolyQ pencil_poly;       // the same pencil with exact coefficients
    StableAssocWitness witness;
};

/// Higman-trick linearization of a square F with F(0) = I (exact mode):
/// repeatedly borders away the graded-lex-largest term of degree ≥ 2,
/// recording the elementary row/column operations into the witness.
/// Inputs that are already monic pencils pass through with P = Q = I.
LinearizeResult linearize(const PolyQ& f);

struct VerifyReport {
    bool ok = true;
    std::string detail;  // first differing word / entry when !ok
    explicit operator bool() const { return ok; }
};

/// Exact check of P (F ⊕ I) Q = G plus both two-sided inverse identities.
VerifyReport verify_stable_assoc(const PolyQ& f, const PolyQ& g, const StableAssocWitness& w);

/// Chains two witnesses (F ∼ G, G ∼ H) into a witness for F ∼ H.
StableAssocWitness compose_witness(const StableAssocWitness& fg, const StableAssocWitness& gh);

struct ZeroLocusSample {
    int level = 0;
    bool planted = false;
    double abs_det_f = 0.0, abs_det_g = 0.0;
    bool zero_f = false, zero_g = false;
    bool agree = true;
};

struct ZeroLocusReport {
    std::vector<ZeroLocusSample> samples;
    bool all_agree = true;
    int zeros_found = 0;
};

/// Compares |det F(X)| and |det G(X)| on seeded random tuples at levels 1..3
/// plus caller-planted points; flags disagreement of zero/nonzero status at
/// the given tolerance.
ZeroLocusReport zero_locus_agreement(const PolyC& f, const PolyC& g, int samples, std::uint64_t seed,
                                     const std::vector<MatrixTuple>& planted = {}, double tol = 1e-9);

struct SandwichConstants {
    double c1 = 1.0;  // certified bound, F-side residual controls G-side
    double c2 = 1.0;  // reverse direction
    int d1 = 0;       // deg P + deg Q
    int d2 = 0;       // deg P_inv + deg Q_inv
    // diagnostics: truncated multiplier-norm lower bounds for the factors
    double q_mult_lower = 0.0, q_inv_mult_lower = 0.0;
};

/// Degree shifts from the witness and certified conjugation-norm bounds via
/// coefficient ℓ¹ sums (Σ_w ‖coef‖_op bounds the multiplier norm on both
/// sides because every shift is an isometry).
SandwichConstants decay_sandwich_constants(const StableAssocWitness& w);

/// JSON round-trip for witnesses (matrix polynomial documents).
std::string witness_to_json(const StableAssocWitness& w);
StableAssocWitness witness_from_json(const std::string& text);

/// Exact determinant of eval(F, X) for exact F at an exact matrix point,
/// via fraction-free Gaussian elimination. X entries are Gaussian rationals.
RatC exact_eval_det(const PolyQ& f, const std::vector<CoeffMat<RatC>>& x);

}  // namespace fockopa

#endif
