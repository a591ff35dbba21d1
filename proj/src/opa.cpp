#include "fockopa/opa.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fockopa/errors.hpp"
#include "fockopa/fockops.hpp"
#include "fockopa/linearize.hpp"
#include "fockopa/parse.hpp"

namespace fockopa {

namespace {

PolyC assemble_rows(const Eigen::MatrixXcd& sol, const TruncatedBasis& dom, int k, int d) {
    // sol: (dom.size()·k) × k, column i = transposed row i of P
    PolyC p(k, k, d);
    for (std::size_t v = 0; v < dom.size(); ++v) {
        CoeffMat<std::complex<double>> c(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) c(i, j) = sol(Eigen::Index(v) * k + j, i);
        p.add_term(dom.word(v), std::move(c));
    }
    return p;
}

double verified_residual(const PolyC& p, const PolyC& f) {
    PolyC r = sub(mul(p, f), PolyC::identity(f.rows(), f.d()));
    return norm_sq(r);
}

}  // namespace

OpaResult solve_opa(const PolyC& f, int n, const OpaOptions& opts) {
    if (f.rows() != f.cols()) throw ShapeError("solve_opa: square polynomial required");
    if (f.is_zero()) throw PreconditionError("solve_opa: F must be nonzero");
    if (n < 0) throw PreconditionError("solve_opa: n must be >= 0");
    const int k = f.rows();
    const int d = f.d();

    TruncatedBasis dom(d, n, opts.capacity);
    Eigen::MatrixXcd m = right_mult_matrix(f, n, opts.capacity);

    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(m.rows(), k);
    for (int i = 0; i < k; ++i) rhs(i, i) = 1.0;  // e_i^T at the empty word

    OpaResult out;
    out.n = n;
    out.diag.cols = m.cols();

    Eigen::MatrixXcd sol;
    if (m.cols() <= opts.pivoted_max_cols) {
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(m);
        cod.setThreshold(opts.rank_tol);
        sol = cod.solve(rhs);
        out.diag.rank = cod.rank();
        out.diag.method = "cod";
        const auto& r = cod.matrixQTZ();
        double top = std::abs(r(0, 0));
        double bottom = out.diag.rank > 0 ? std::abs(r(out.diag.rank - 1, out.diag.rank - 1)) : 0.0;
        out.diag.cond_estimate = bottom > 0 ? top / bottom : std::numeric_limits<double>::infinity();
    } else {
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
        Eigen::VectorXd rdiag = qr.matrixQR().diagonal().head(m.cols()).cwiseAbs();
        double dmax = rdiag.maxCoeff();
        double dmin = rdiag.minCoeff();
        if (dmin <= opts.rank_tol * std::max(dmax, 1.0)) {
            // suspicious diagonal: redo with the rank-revealing path
            Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(m);
            cod.setThreshold(opts.rank_tol);
            sol = cod.solve(rhs);
            out.diag.rank = cod.rank();
            out.diag.method = "qr+cod";
            out.diag.cond_estimate = dmin > 0 ? dmax / dmin : std::numeric_limits<double>::infinity();
        } else {
            sol = qr.solve(rhs);
            out.diag.rank = m.cols();
            out.diag.method = "qr";
            out.diag.cond_estimate = dmax / dmin;
        }
    }
    out.diag.rank_deficient = out.diag.rank < m.cols();
    out.diag.normal_residual = (m.adjoint() * (m * sol - rhs)).cwiseAbs().maxCoeff();

    out.approximant = assemble_rows(sol, dom, k, d);
    out.residual = verified_residual(out.approximant, f);
    return out;
}

OpaResult pencil_opa(const MonicPencil& pencil, int n) {
    if (n < 0) throw PreconditionError("pencil_opa: n must be >= 0");
    const int m = pencil.size();
    const int d = pencil.d();
    const MatrixTuple& a = pencil.coeff;
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(m, m);

    // Backward pass over word length. tail[l] is the PSD matrix of the
    // optimal cost of all residuals at lengths > l, as a quadratic form in
    // the coefficient rows at length l.
    std::vector<Eigen::MatrixXcd> tail(std::size_t(n) + 1);
    Eigen::MatrixXcd cur = Eigen::MatrixXcd::Zero(m, m);
    for (int j = 0; j < d; ++j) cur += a.mat(j) * a.mat(j).adjoint();
    tail[std::size_t(n)] = cur;
    for (int l = n - 1; l >= 0; --l) {
        Eigen::MatrixXcd inv = (eye + cur).llt().solve(eye);
        Eigen::MatrixXcd gain = eye - inv;
        Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(m, m);
        for (int j = 0; j < d; ++j) next += a.mat(j) * gain * a.mat(j).adjoint();
        cur = ((next + next.adjoint()) / 2.0).eval();
        tail[std::size_t(l)] = cur;
    }

    std::vector<Eigen::MatrixXcd> prop(std::size_t(n) + 1);  // (I + tail[l])^{-1}
    for (int l = 0; l <= n; ++l) prop[std::size_t(l)] = (eye + tail[std::size_t(l)]).llt().solve(eye);

    OpaResult out;
    out.n = n;
    out.diag.method = "pencil-elimination";
    out.diag.cols = Eigen::Index(TruncatedBasis::word_count(d, n)) * m;
    out.diag.rank = out.diag.cols;

    // c_n = tr(I − (I + tail[0])^{-1})
    out.residual = (eye - prop[0]).real().trace();

    // Forward pass: coefficient at word (j1..jl) is prop[0]·A_{j1}·prop[1]···
    PolyC p(m, m, d);
    struct Frame {
        Word w;
        Eigen::MatrixXcd coeff;
    };
    std::vector<Frame> frontier{{Word::empty(), prop[0]}};
    {
        CoeffMat<std::complex<double>> c0(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) c0(i, j) = prop[0](i, j);
        p.add_term(Word::empty(), std::move(c0));
    }
    for (int l = 1; l <= n; ++l) {
        std::vector<Frame> next;
        next.reserve(frontier.size() * std::size_t(d));
        for (const auto& fr : frontier)
            for (int j = 0; j < d; ++j) {
                Frame nf{fr.w.appended(j + 1), fr.coeff * a.mat(j) * prop[std::size_t(l)]};
                CoeffMat<std::complex<double>> c(m, m);
                for (int i = 0; i < m; ++i)
                    for (int jj = 0; jj < m; ++jj) c(i, jj) = nf.coeff(i, jj);
                p.add_term(nf.w, std::move(c));
                next.push_back(std::move(nf));
            }
        frontier = std::move(next);
    }
    out.approximant = std::move(p);
    double check = verified_residual(out.approximant, pencil.to_poly());
    out.diag.normal_residual = std::abs(check - out.residual);
    out.residual = check;
    return out;
}

double loglog_slope(const std::vector<DecayRow>& rows, std::pair<int, int> window) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const auto& r : rows) {
        if (r.n < window.first || r.n > window.second || r.n < 1) continue;
        if (r.c_n <= 0) continue;
        double x = std::log10(double(r.n)), y = std::log10(r.c_n);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 2) return 0.0;
    double denom = cnt * sxx - sx * sx;
    if (denom == 0) return 0.0;
    return (cnt * sxy - sx * sy) / denom;
}

DecayTable decay_table(const PolyC& f, int n_max, std::pair<int, int> window, const OpaOptions& opts) {
    if (n_max < 2) throw PreconditionError("decay_table: n_max must be >= 2");
    if (window.first < 2 || window.second > n_max || window.first > window.second)
        throw PreconditionError("decay_table: window must lie in [2, n_max]");
    DecayTable t;
    t.window = window;
    t.descriptor = f.rows() == 1 ? format_poly(f) : "matrix polynomial " + std::to_string(f.rows()) + "x" +
                                                        std::to_string(f.cols());
    double prev = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= n_max; ++n) {
        auto t0 = std::chrono::steady_clock::now();
        OpaResult r = solve_opa(f, n, opts);
        auto t1 = std::chrono::steady_clock::now();
        DecayRow row;
        row.n = n;
        row.c_n = r.residual;
        row.basis_words = TruncatedBasis::word_count(f.d(), n);
        row.time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (row.c_n > prev + 1e-12)
            throw NumericalDegeneracyError("decay_table: c_n failed to be nonincreasing at n=" + std::to_string(n));
        prev = row.c_n;
        t.rows.push_back(row);
    }
    t.slope = loglog_slope(t.rows, window);
    return t;
}

std::string decay_csv(const DecayTable& t) {
    std::ostringstream os;
    os << "n,c_n,degree_basis_size,time_ms\n";
    char buf[64];
    for (const auto& r : t.rows) {
        std::snprintf(buf, sizeof buf, "%.17g", r.c_n);
        os << r.n << ',' << buf << ',' << r.basis_words << ',';
        std::snprintf(buf, sizeof buf, "%.3f", r.time_ms);
        os << buf << '\n';
    }
    return os.str();
}

double evaluation_functional_norm_sq(const MatrixTuple& x, double tail_tol) {
    double r = row_norm(x);
    if (r >= 1.0)
        throw PreconditionError("evaluation_functional_norm_sq: point must lie strictly inside the row ball");
    const int m = x.level();
    double total = 0.0;
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(m, m);
    double r2 = r * r;
    for (int k = 0;; ++k) {
        total += t.real().trace();
        // remaining tail: sum_{j>k} tr Psi^j(I) <= m r^{2(k+1)} / (1 - r^2)
        double tail = m * std::pow(r2, k + 1) / (1.0 - r2);
        if (tail <= tail_tol * std::max(total, 1.0)) break;
        Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(m, m);
        for (int j = 0; j < x.d(); ++j) next += x.mat(j) * t * x.mat(j).adjoint();
        t = std::move(next);
        if (k > 1000000) throw NumericalDegeneracyError("evaluation functional sum failed to converge");
    }
    return total;
}

double singular_point_lower_bound(const MatrixTuple& x, double tail_tol) {
    return 1.0 / evaluation_functional_norm_sq(x, tail_tol);
}

CyclicityReport cyclicity_verdict(const PolyQ& f, int n_max, double threshold, const OpaOptions& opts) {
    CyclicityReport rep;
    rep.threshold = threshold;

    PolyC fn = to_numeric(f);
    rep.table = decay_table(fn, n_max, {2, n_max}, opts);
    rep.c_last = rep.table.rows.back().c_n;
    rep.decayed_below_threshold = rep.c_last < threshold;

    // pencil verdict needs F(0) = I; normalize by the exact inverse of the
    // constant term when it exists
    auto c0 = f.coeff(Word::empty());
    CoeffMat<RatC> inv(f.rows(), f.rows());
    bool invertible = true;
    {
        // rational Gauss-Jordan
        CoeffMat<RatC> a = c0;
        inv = CoeffMat<RatC>::identity(f.rows());
        for (int col = 0; col < f.rows() && invertible; ++col) {
            int pivot = -1;
            for (int r = col; r < f.rows(); ++r)
                if (!a(r, col).is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) {
                invertible = false;
                break;
            }
            if (pivot != col)
                for (int cc = 0; cc < f.rows(); ++cc) {
                    std::swap(a(pivot, cc), a(col, cc));
                    std::swap(inv(pivot, cc), inv(col, cc));
                }
            RatC piv = a(col, col);
            for (int cc = 0; cc < f.rows(); ++cc) {
                a(col, cc) = a(col, cc) / piv;
                inv(col, cc) = inv(col, cc) / piv;
            }
            for (int r = 0; r < f.rows(); ++r) {
                if (r == col || a(r, col).is_zero()) continue;
                RatC factor = a(r, col);
                for (int cc = 0; cc < f.rows(); ++cc) {
                    a(r, cc) = a(r, cc) - factor * a(col, cc);
                    inv(r, cc) = inv(r, cc) - factor * inv(col, cc);
                }
            }
        }
    }
    if (!invertible) {
        rep.constant_term_singular = true;  // 0 lies in the zero locus
        rep.nonsingular_in_row_ball = false;
        rep.consistent = !rep.decayed_below_threshold;
        return rep;
    }

    PolyQ monic = mul(PolyQ::constant(inv, f.d()), f);
    LinearizeResult lin = linearize(monic);
    rep.pencil_rho = outer_spectral_radius(lin.pencil.coeff);
    rep.nonsingular_in_row_ball = *rep.pencil_rho <= 1.0 + 1e-7;
    rep.consistent = rep.nonsingular_in_row_ball == rep.decayed_below_threshold;
    return rep;
}

}  // namespace fockopa
