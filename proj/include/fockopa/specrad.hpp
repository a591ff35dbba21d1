#ifndef FOCKOPA_SPECRAD_HPP
#define FOCKOPA_SPECRAD_HPP

#include <cstdint>
#include <vector>

#include "fockopa/fockops.hpp"
#include "fockopa/tuple.hpp"

namespace fockopa {

/// ρ(X): square root of the spectral radius of the completely positive map
/// T ↦ Σ X_j T X_j^*. Invariant under similarity and entrywise adjoint.
/// Jointly nilpotent tuples return exactly 0. Dense eigensolve for level
/// ≤ 60, shifted power iteration above.
double outer_spectral_radius(const MatrixTuple& x);

/// True iff the unital algebra generated by the tuple is the full matrix
/// algebra (span of evaluated words reaches dimension m²).
bool is_irreducible(const MatrixTuple& a, double rank_tol = 1e-9);

/// Finite test: Ψ_A^m(I) = 0 at m = level.
bool is_jointly_nilpotent(const MatrixTuple& a);

/// For irreducible A with ρ(A) ≤ 1: an invertible S with
/// col_norm(S⁻¹AS) ≤ 1 (= ρ(A) up to roundoff). Built from the top
/// eigenvector of the matrix of Ψ_{A*} (quantum Perron–Frobenius).
Eigen::MatrixXcd similarity_to_column_contraction(const MatrixTuple& a);

/// Block upper-triangular similarity data for a coefficient tuple:
/// S⁻¹AS has diagonal blocks that are zero or irreducible, each conjugated
/// to a column contraction; off-diagonal letterwise blocks are arbitrary.
struct TriangularPencilForm {
    Eigen::MatrixXcd similarity;          // S
    MatrixTuple conjugated;               // Ā = S⁻¹AS, block upper triangular
    std::vector<int> block_sizes;         // m_1..m_ℓ
    std::vector<bool> zero_block;         // per diagonal block

    int blocks() const { return int(block_sizes.size()); }
    int block_offset(int k) const {
        int off = 0;
        for (int i = 0; i < k; ++i) off += block_sizes[i];
        return off;
    }
    MatrixTuple diag_block(int k) const { return conjugated.block(block_offset(k), block_sizes[k]); }
    /// Off-diagonal letterwise data of the pencil I − Āx above block j:
    /// the (rows 0..offset(j)) × (block j) slice of −Ā.
    std::vector<Eigen::MatrixXcd> pencil_offdiag(int j) const {
        int off = block_offset(j);
        std::vector<Eigen::MatrixXcd> y;
        y.reserve(conjugated.d());
        for (int l = 0; l < conjugated.d(); ++l)
            y.push_back(-conjugated.mat(l).block(0, off, off, block_sizes[j]));
        return y;
    }
    /// The full pencil I − Āx as a matrix polynomial.
    PolyC pencil_poly() const;
};

/// Burnside triangularization followed by the per-block contraction step.
/// Requires ρ(A) ≤ 1 + 1e-10. Deterministic given the seed.
TriangularPencilForm burnside_triangularize(const MatrixTuple& a, std::uint64_t seed = 0x5eedULL);

/// Monic linear pencil L_A(x) = I − A₁x₁ − … − A_dx_d.
struct MonicPencil {
    MatrixTuple coeff;  // A

    int size() const { return coeff.level(); }
    int d() const { return coeff.d(); }
    /// I − Σ A_j ⊗ X_j.
    Eigen::MatrixXcd eval_at(const MatrixTuple& x) const;
    PolyC to_poly() const;
};

/// I − Āx for a tuple (helper shared with the triangular form).
PolyC pencil_to_poly(const MatrixTuple& a);

}  // namespace fockopa

#endif
