#include "fockopa/specrad.hpp"

#include <random>
#include <sstream>

#include "fockopa/errors.hpp"
#include "fockopa/sampling.hpp"

namespace fockopa {

namespace {

Eigen::VectorXcd vec_of(const Eigen::MatrixXcd& m) {
    return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, int m) {
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), m, m);
}

bool nilpotent_witness_exact_zero(const MatrixTuple& a, Eigen::MatrixXcd& last) {
    // Ψ_A^m(I); exact-zero entries propagate for structurally nilpotent input
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(a.level(), a.level());
    for (int k = 0; k < a.level(); ++k) {
        Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(a.level(), a.level());
        for (int j = 0; j < a.d(); ++j) next += a.mat(j) * t * a.mat(j).adjoint();
        t = std::move(next);
    }
    last = t;
    return t.cwiseAbs().maxCoeff() == 0.0;
}

/// Orthonormal span tracker with a relative rank tolerance.
class SpanBasis {
   public:
    SpanBasis(Eigen::Index dim, double rel_tol) : dim_(dim), rel_tol_(rel_tol) {}

    bool insert(Eigen::VectorXcd v) {
        double scale = v.norm();
        if (scale == 0.0) return false;
        for (int pass = 0; pass < 2; ++pass)  // twice-is-enough reorthogonalization
            for (const auto& b : basis_) v -= b.dot(v) * b;
        double rem = v.norm();
        borderline_ = std::max(borderline_, rem > rel_tol_ * scale ? 0.0 : rem / scale);
        if (rem <= rel_tol_ * scale) return false;
        basis_.push_back(v / rem);
        return true;
    }

    std::size_t size() const { return basis_.size(); }
    const std::vector<Eigen::VectorXcd>& vectors() const { return basis_; }
    double borderline() const { return borderline_; }

   private:
    Eigen::Index dim_;
    double rel_tol_;
    double borderline_ = 0.0;
    std::vector<Eigen::VectorXcd> basis_;
};

/// Dimension of the unital algebra generated by the tuple, together with an
/// orthonormal basis of its vec'd span.
SpanBasis algebra_span(const MatrixTuple& a, double rank_tol) {
    const int m = a.level();
    SpanBasis span(m * m, rank_tol);
    std::vector<Eigen::MatrixXcd> frontier;
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(m, m);
    span.insert(vec_of(eye));
    frontier.push_back(eye);
    while (!frontier.empty() && span.size() < std::size_t(m) * m) {
        std::vector<Eigen::MatrixXcd> next;
        for (const auto& b : frontier)
            for (int j = 0; j < a.d(); ++j) {
                Eigen::MatrixXcd c = a.mat(j) * b;
                if (span.insert(vec_of(c))) next.push_back(std::move(c));
            }
        frontier = std::move(next);
    }
    return span;
}

/// Smallest invariant subspace containing v, as an orthonormal basis.
std::vector<Eigen::VectorXcd> orbit_of(const MatrixTuple& a, const Eigen::VectorXcd& v, double rank_tol) {
    SpanBasis span(a.level(), rank_tol);
    std::vector<Eigen::VectorXcd> frontier;
    if (span.insert(v)) frontier.push_back(v / v.norm());
    while (!frontier.empty() && span.size() < std::size_t(a.level())) {
        std::vector<Eigen::VectorXcd> next;
        for (const auto& b : frontier)
            for (int j = 0; j < a.d(); ++j) {
                Eigen::VectorXcd c = a.mat(j) * b;
                if (span.insert(c)) next.push_back(c.normalized());
            }
        frontier = std::move(next);
    }
    return span.vectors();
}

Eigen::MatrixXcd orthonormal_completion(const std::vector<Eigen::VectorXcd>& part, int m) {
    Eigen::MatrixXcd v(m, part.size());
    for (std::size_t i = 0; i < part.size(); ++i) v.col(Eigen::Index(i)) = part[i];
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(v);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(m, m);
    return q;  // first part.size() columns span the subspace
}

struct SplitResult {
    Eigen::MatrixXcd similarity;
    std::vector<int> sizes;
};

constexpr double kRankTol = 1e-9;

/// Recursive invariant-subspace decomposition: returns unitary S with
/// S^* A S block upper triangular and irreducible (or 1×1) diagonal blocks.
SplitResult decompose(const MatrixTuple& a, std::mt19937_64& rng) {
    const int m = a.level();
    if (m == 1) return {Eigen::MatrixXcd::Identity(1, 1), {1}};

    SpanBasis alg = algebra_span(a, kRankTol);
    if (alg.size() == std::size_t(m) * m) return {Eigen::MatrixXcd::Identity(m, m), {m}};

    // Reducible: hunt for a proper invariant subspace via eigenvectors of
    // generic algebra elements, on both the tuple and its adjoint.
    std::vector<Eigen::VectorXcd> found;
    for (int attempt = 0; attempt < 12 && found.empty(); ++attempt) {
        Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(m, m);
        std::normal_distribution<double> g;
        for (const auto& b : alg.vectors()) r += std::complex<double>(g(rng), g(rng)) * unvec(b, m);
        for (int side = 0; side < 2 && found.empty(); ++side) {
            const MatrixTuple& tup = side == 0 ? a : a.adjoint_tuple();
            Eigen::MatrixXcd rside = side == 0 ? r : Eigen::MatrixXcd(r.adjoint());
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(rside);
            for (int e = 0; e < m; ++e) {
                auto orb = orbit_of(tup, es.eigenvectors().col(e), kRankTol);
                if (orb.empty() || orb.size() >= std::size_t(m)) continue;
                if (side == 0) {
                    found = orb;
                } else {
                    // co-invariant subspace: its orthocomplement is invariant
                    Eigen::MatrixXcd q = orthonormal_completion(orb, m);
                    found.clear();
                    for (int c = int(orb.size()); c < m; ++c) found.push_back(q.col(c));
                }
                break;
            }
        }
    }
    if (found.empty()) {
        std::ostringstream os;
        os << "invariant subspace detection unstable at level " << m << " (algebra dim " << alg.size()
           << ", borderline ratio " << alg.borderline() << ")";
        throw NumericalDegeneracyError(os.str());
    }

    Eigen::MatrixXcd q = orthonormal_completion(found, m);
    const int s = int(found.size());
    MatrixTuple rotated = a.conjugated(q);  // q unitary: block upper triangular
    SplitResult top = decompose(rotated.block(0, s), rng);
    SplitResult bot = decompose(rotated.block(s, m - s), rng);
    Eigen::MatrixXcd combined = Eigen::MatrixXcd::Zero(m, m);
    combined.topLeftCorner(s, s) = top.similarity;
    combined.bottomRightCorner(m - s, m - s) = bot.similarity;
    SplitResult out;
    out.similarity = q * combined;
    out.sizes = top.sizes;
    out.sizes.insert(out.sizes.end(), bot.sizes.begin(), bot.sizes.end());
    return out;
}

}  // namespace

double outer_spectral_radius(const MatrixTuple& x) {
    Eigen::MatrixXcd witness;
    if (nilpotent_witness_exact_zero(x, witness)) return 0.0;

    const int m = x.level();
    if (m <= 60) {
        CpMapMatrix psi(x);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(psi.matrix(), /*computeEigenvectors=*/false);
        double top = es.eigenvalues().cwiseAbs().maxCoeff();
        return std::sqrt(std::max(top, 0.0));
    }

    // Shifted power iteration on Ψ_X acting on matrices; the shift makes the
    // Perron eigenvalue strictly dominant over other peripheral spectrum.
    double scale = 0.0;
    for (int j = 0; j < x.d(); ++j) scale = std::max(scale, x.mat(j).norm());
    if (scale == 0.0) return 0.0;
    MatrixTuple y = x.scaled(1.0 / scale);
    double shift = double(x.d());
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(m, m);
    double lambda = 0.0;
    for (int it = 0; it < 20000; ++it) {
        Eigen::MatrixXcd next = shift * t;
        for (int j = 0; j < y.d(); ++j) next += y.mat(j) * t * y.mat(j).adjoint();
        double nn = next.norm();
        next /= nn;
        if (std::abs(nn - lambda) <= 1e-13 * nn && it > 10) {
            lambda = nn;
            break;
        }
        lambda = nn;
        t = std::move(next);
    }
    double rho_sq = std::max(lambda - shift, 0.0);
    return scale * std::sqrt(rho_sq);
}

bool is_irreducible(const MatrixTuple& a, double rank_tol) {
    const std::size_t full = std::size_t(a.level()) * a.level();
    return algebra_span(a, rank_tol).size() == full;
}

bool is_jointly_nilpotent(const MatrixTuple& a) {
    Eigen::MatrixXcd witness;
    if (nilpotent_witness_exact_zero(a, witness)) return true;
    double scale = a.max_entry_norm();
    if (scale == 0.0) return true;
    MatrixTuple y = a.scaled(1.0 / scale);
    Eigen::MatrixXcd w2;
    nilpotent_witness_exact_zero(y, w2);
    return w2.cwiseAbs().maxCoeff() <= 1e-12;
}

Eigen::MatrixXcd similarity_to_column_contraction(const MatrixTuple& a) {
    if (!is_irreducible(a)) throw PreconditionError("similarity_to_column_contraction: tuple is not irreducible");
    double rho = outer_spectral_radius(a);
    if (rho > 1.0 + 1e-7)
        throw InfeasibleError("similarity_to_column_contraction: outer spectral radius " + std::to_string(rho) +
                              " exceeds 1");

    const int m = a.level();
    CpMapMatrix psi(a);
    Eigen::MatrixXcd adj = psi.matrix().adjoint();  // matrix of Ψ_{A*}
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(adj);
    double rho_sq = rho * rho;
    int pf = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < adj.rows(); ++i) {
        double dist = std::abs(es.eigenvalues()(i) - std::complex<double>(rho_sq, 0.0));
        if (dist < best) {
            best = dist;
            pf = i;
        }
    }
    double mult_tol = 1e-8 * std::max(1.0, rho_sq);
    for (int i = 0; i < adj.rows(); ++i) {
        if (i == pf) continue;
        if (std::abs(es.eigenvalues()(i) - es.eigenvalues()(pf)) <= mult_tol)
            throw NumericalDegeneracyError(
                "Perron eigenvalue of the adjoint map is nearly multiple; gap " +
                std::to_string(std::abs(es.eigenvalues()(i) - es.eigenvalues()(pf))));
    }

    Eigen::MatrixXcd w = unvec(es.eigenvectors().col(pf), m);
    // fix the eigenvector phase so the trace is real positive, then symmetrize
    std::complex<double> tr = w.trace();
    if (std::abs(tr) < 1e-14 * w.norm())
        throw NumericalDegeneracyError("Perron eigenvector has vanishing trace; cannot fix phase");
    w *= std::conj(tr) / std::abs(tr);
    w = ((w + w.adjoint()) / 2.0).eval();
    w /= operator_norm(w);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> wes(w);
    double lmin = wes.eigenvalues().minCoeff();
    if (lmin > -1e-10 && lmin <= 0.0) {
        w += 1e-12 * Eigen::MatrixXcd::Identity(m, m);
        wes.compute(w);
        lmin = wes.eigenvalues().minCoeff();
    }
    if (lmin <= 0.0)
        throw NumericalDegeneracyError("Perron eigenvector is not positive definite (min eigenvalue " +
                                       std::to_string(lmin) + ")");
    Eigen::VectorXd inv_sqrt = wes.eigenvalues().cwiseSqrt().cwiseInverse();
    Eigen::MatrixXcd s = wes.eigenvectors() * inv_sqrt.asDiagonal() * wes.eigenvectors().adjoint();
    return s;  // S = W^{-1/2}; then Σ (S⁻¹A_jS)^*(S⁻¹A_jS) = ρ²·I
}

PolyC pencil_to_poly(const MatrixTuple& a) {
    const int m = a.level();
    PolyC p(m, m, a.d());
    CoeffMat<std::complex<double>> eye(m, m);
    for (int i = 0; i < m; ++i) eye(i, i) = 1.0;
    p.add_term(Word::empty(), std::move(eye));
    for (int j = 0; j < a.d(); ++j) {
        CoeffMat<std::complex<double>> c(m, m);
        for (int r = 0; r < m; ++r)
            for (int cc = 0; cc < m; ++cc) c(r, cc) = -a.mat(j)(r, cc);
        p.add_term(Word::single(j + 1), std::move(c));
    }
    return p;
}

PolyC TriangularPencilForm::pencil_poly() const { return pencil_to_poly(conjugated); }

Eigen::MatrixXcd MonicPencil::eval_at(const MatrixTuple& x) const {
    const int n = size() * x.level();
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(n, n);
    for (int j = 0; j < d(); ++j) r -= kron(coeff.mat(j), x.mat(j));
    return r;
}

PolyC MonicPencil::to_poly() const { return pencil_to_poly(coeff); }

TriangularPencilForm burnside_triangularize(const MatrixTuple& a, std::uint64_t seed) {
    double rho = outer_spectral_radius(a);
    if (rho > 1.0 + 1e-7)
        throw PreconditionError("burnside_triangularize: outer spectral radius " + std::to_string(rho) +
                                " exceeds 1");

    std::mt19937_64 rng(seed);
    SplitResult split = decompose(a, rng);

    MatrixTuple rotated = a.conjugated(split.similarity);
    const double block_tol = 1e-10 * std::max(1.0, a.max_entry_norm());

    TriangularPencilForm form;
    form.block_sizes = split.sizes;
    form.zero_block.resize(split.sizes.size());

    // contraction step per irreducible diagonal block
    Eigen::MatrixXcd contraction = Eigen::MatrixXcd::Identity(a.level(), a.level());
    int off = 0;
    for (std::size_t k = 0; k < split.sizes.size(); ++k) {
        int s = split.sizes[k];
        MatrixTuple blk = rotated.block(off, s);
        bool zero = blk.max_entry_norm() <= block_tol;
        form.zero_block[k] = zero;
        if (!zero) {
            Eigen::MatrixXcd sk = similarity_to_column_contraction(blk);
            contraction.block(off, off, s, s) = sk;
        }
        off += s;
    }

    form.similarity = split.similarity * contraction;
    form.conjugated = a.conjugated(form.similarity);

    // zero out the strictly-lower rounding residue left by the similarity
    std::vector<Eigen::MatrixXcd> cleaned;
    for (int j = 0; j < a.d(); ++j) {
        Eigen::MatrixXcd mj = form.conjugated.mat(j);
        int ro = 0;
        for (std::size_t k = 0; k < split.sizes.size(); ++k) {
            int s = split.sizes[k];
            if (ro + s < a.level()) mj.block(ro + s, ro, a.level() - ro - s, s).setZero();
            ro += s;
        }
        cleaned.push_back(std::move(mj));
    }
    form.conjugated = MatrixTuple(std::move(cleaned));
    return form;
}

}  // namespace fockopa
