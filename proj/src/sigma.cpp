#include "fockopa/sigma.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <variant>

#include "fockopa/errors.hpp"
#include "fockopa/fockops.hpp"

namespace fockopa {

namespace {

CoeffMat<std::complex<double>> to_coeff(const Eigen::MatrixXcd& m) {
    CoeffMat<std::complex<double>> c(int(m.rows()), int(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) c(i, j) = m(i, j);
    return c;
}

struct ConstantNode {
    Eigen::MatrixXcd c;
    int d;
};
struct PencilSeriesNode {
    MatrixTuple m;
    std::vector<double> coeffs;
};
struct LinearTermNode {
    std::vector<Eigen::MatrixXcd> y;
};
struct ProductNode {
    std::vector<StructuredPoly> factors;
};
struct ScaledNode {
    double c;
    StructuredPoly inner;
};
struct Block2x2Node {
    StructuredPoly a, b, cc;
};

}  // namespace

struct StructuredPoly::Node {
    std::variant<ConstantNode, PencilSeriesNode, LinearTermNode, ProductNode, ScaledNode, Block2x2Node> v;
    int rows = 0, cols = 0, d = 0;
    long long degree = 0;
    double mult_bound = 0.0;
};

namespace {

StructuredPoly make_node(typename std::decay_t<decltype(std::declval<StructuredPoly::Node>().v)> v, int rows,
                         int cols, int d, long long degree, double mult_bound) {
    auto n = std::make_shared<StructuredPoly::Node>();
    n->v = std::move(v);
    n->rows = rows;
    n->cols = cols;
    n->d = d;
    n->degree = degree;
    n->mult_bound = mult_bound;
    return StructuredPoly(std::move(n));
}

}  // namespace

StructuredPoly StructuredPoly::constant(Eigen::MatrixXcd c, int d) {
    int r = int(c.rows()), cl = int(c.cols());
    double nb = operator_norm(c);
    return make_node(ConstantNode{std::move(c), d}, r, cl, d, 0, nb);
}

StructuredPoly StructuredPoly::identity(int m, int d) {
    return constant(Eigen::MatrixXcd::Identity(m, m), d);
}

StructuredPoly StructuredPoly::pencil_series(MatrixTuple m, std::vector<double> coeffs, double mult_bound) {
    long long deg = 0;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (coeffs[k] != 0.0) deg = (long long)k;
    int lvl = m.level(), d = m.d();
    return make_node(PencilSeriesNode{std::move(m), std::move(coeffs)}, lvl, lvl, d, deg, mult_bound);
}

StructuredPoly StructuredPoly::linear_term(std::vector<Eigen::MatrixXcd> y) {
    if (y.empty()) throw ShapeError("linear_term: needs at least one letter");
    int r = int(y.front().rows()), c = int(y.front().cols());
    double cn = col_norm_general(y);
    int d = int(y.size());
    return make_node(LinearTermNode{std::move(y)}, r, c, d, 1, cn);
}

StructuredPoly StructuredPoly::product(std::vector<StructuredPoly> factors) {
    if (factors.empty()) throw ShapeError("product: needs factors");
    long long deg = 0;
    double mb = 1.0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        deg += factors[i].degree();
        mb *= factors[i].mult_bound();
        if (i + 1 < factors.size() && factors[i].cols() != factors[i + 1].rows())
            throw ShapeError("product: inner dimensions differ");
    }
    int r = factors.front().rows(), c = factors.back().cols(), d = factors.front().d();
    return make_node(ProductNode{std::move(factors)}, r, c, d, deg, mb);
}

StructuredPoly StructuredPoly::scaled(double c, StructuredPoly inner) {
    int r = inner.rows(), cl = inner.cols(), d = inner.d();
    long long deg = inner.degree();
    double mb = std::abs(c) * inner.mult_bound();
    return make_node(ScaledNode{c, std::move(inner)}, r, cl, d, deg, mb);
}

StructuredPoly StructuredPoly::block2x2(StructuredPoly a, StructuredPoly b, StructuredPoly c) {
    if (a.rows() != a.cols() || c.rows() != c.cols()) throw ShapeError("block2x2: diagonal blocks must be square");
    if (b.rows() != a.rows() || b.cols() != c.cols()) throw ShapeError("block2x2: off-diagonal block shape");
    int n = a.rows() + c.rows(), d = a.d();
    long long deg = std::max({a.degree(), b.degree(), c.degree()});
    // [[a,b],[0,c]] = diag(a,c) + corner(b): bound max(‖a‖,‖c‖) + ‖b‖
    double mb = std::max(a.mult_bound(), c.mult_bound()) + b.mult_bound();
    return make_node(Block2x2Node{std::move(a), std::move(b), std::move(c)}, n, n, d, deg, mb);
}

int StructuredPoly::rows() const { return node_->rows; }
int StructuredPoly::cols() const { return node_->cols; }
int StructuredPoly::d() const { return node_->d; }
long long StructuredPoly::degree() const { return node_->degree; }
double StructuredPoly::mult_bound() const { return node_->mult_bound; }

namespace {

void check_capacity(const PolyC& p, std::size_t cap) {
    if (p.terms().size() > cap)
        throw CapacityError("structured expansion exceeds " + std::to_string(cap) + " stored terms");
}

PolyC expand_node(const StructuredPoly& sp, std::size_t cap);

PolyC expand_pencil_series(const PencilSeriesNode& n, int d, std::size_t cap) {
    const int m = n.m.level();
    PolyC out(m, m, d);
    if (!n.coeffs.empty() && n.coeffs[0] != 0.0)
        out.add_term(Word::empty(), to_coeff(n.coeffs[0] * Eigen::MatrixXcd::Identity(m, m)));
    // degree-k layer carries the products M^w over |w| = k
    std::vector<std::pair<Word, Eigen::MatrixXcd>> layer{{Word::empty(), Eigen::MatrixXcd::Identity(m, m)}};
    for (std::size_t k = 1; k < n.coeffs.size(); ++k) {
        std::vector<std::pair<Word, Eigen::MatrixXcd>> next;
        next.reserve(layer.size() * std::size_t(d));
        for (const auto& [w, mat] : layer)
            for (int j = 0; j < d; ++j) next.emplace_back(w.appended(j + 1), mat * n.m.mat(j));
        layer = std::move(next);
        if (layer.size() > cap) throw CapacityError("pencil power expansion exceeds term capacity");
        if (n.coeffs[k] == 0.0) continue;
        for (const auto& [w, mat] : layer) out.add_term(w, to_coeff(n.coeffs[k] * mat));
        check_capacity(out, cap);
    }
    return out;
}

PolyC expand_node(const StructuredPoly& sp, std::size_t cap) {
    const auto& node = *sp.node();
    return std::visit(
        [&](const auto& n) -> PolyC {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ConstantNode>) {
                PolyC p(int(n.c.rows()), int(n.c.cols()), node.d);
                p.add_term(Word::empty(), to_coeff(n.c));
                return p;
            } else if constexpr (std::is_same_v<T, PencilSeriesNode>) {
                return expand_pencil_series(n, node.d, cap);
            } else if constexpr (std::is_same_v<T, LinearTermNode>) {
                PolyC p(node.rows, node.cols, node.d);
                for (int j = 0; j < node.d; ++j) p.add_term(Word::single(j + 1), to_coeff(n.y[std::size_t(j)]));
                return p;
            } else if constexpr (std::is_same_v<T, ProductNode>) {
                PolyC acc = expand_node(n.factors.front(), cap);
                for (std::size_t i = 1; i < n.factors.size(); ++i) {
                    acc = mul(acc, expand_node(n.factors[i], cap));
                    check_capacity(acc, cap);
                }
                return acc;
            } else if constexpr (std::is_same_v<T, ScaledNode>) {
                return scale(expand_node(n.inner, cap), std::complex<double>(n.c, 0.0));
            } else {
                PolyC a = expand_node(n.a, cap);
                PolyC b = expand_node(n.b, cap);
                PolyC c = expand_node(n.cc, cap);
                const int top = a.rows(), bot = c.rows();
                PolyC out(top + bot, top + bot, node.d);
                for (const auto& [w, cm] : a.terms()) {
                    CoeffMat<std::complex<double>> big(top + bot, top + bot);
                    for (int i = 0; i < top; ++i)
                        for (int j = 0; j < top; ++j) big(i, j) = cm(i, j);
                    out.add_term(w, std::move(big));
                }
                for (const auto& [w, cm] : b.terms()) {
                    CoeffMat<std::complex<double>> big(top + bot, top + bot);
                    for (int i = 0; i < top; ++i)
                        for (int j = 0; j < bot; ++j) big(i, top + j) = cm(i, j);
                    out.add_term(w, std::move(big));
                }
                for (const auto& [w, cm] : c.terms()) {
                    CoeffMat<std::complex<double>> big(top + bot, top + bot);
                    for (int i = 0; i < bot; ++i)
                        for (int j = 0; j < bot; ++j) big(top + i, top + j) = cm(i, j);
                    out.add_term(w, std::move(big));
                }
                check_capacity(out, cap);
                return out;
            }
        },
        node.v);
}

}  // namespace

PolyC StructuredPoly::expand(std::size_t term_capacity) const { return expand_node(*this, term_capacity); }

std::vector<double> pi_coeffs(int n) {
    if (n < 0) throw PreconditionError("pi_coeffs: n must be >= 0");
    std::vector<double> c(std::size_t(n) + 1);
    for (int k = 0; k <= n; ++k) c[std::size_t(k)] = double(n + 1 - k) / double(n + 2);
    return c;
}

Rational pi_coeff_exact(int n, int k) { return Rational(n + 1 - k, n + 2); }

Rational pi_sup_norm_exact(int n) {
    Rational s = 0;
    for (int k = 0; k <= n; ++k) s += pi_coeff_exact(n, k);
    return s;
}

StructuredPoly pi_of_pencil(const MatrixTuple& m, int n) {
    if (col_norm(m) > 1.0 + 1e-8)
        throw PreconditionError("pi_of_pencil: coefficient tuple must be a column contraction");
    return StructuredPoly::pencil_series(m, pi_coeffs(n), double(n + 1) / 2.0);
}

double pi_residual_norm_sq(const MatrixTuple& m, int n) {
    if (col_norm(m) > 1.0 + 1e-8)
        throw PreconditionError("pi_residual_norm_sq: coefficient tuple must be a column contraction");
    std::vector<double> powers = structural_power_norms_sq(m, n + 1);
    double s = 0;
    for (double v : powers) s += v;
    double denom = double(n + 2);
    return s / (denom * denom);
}

namespace {

long long pow_ll(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > (1LL << 62) / std::max(base, 1LL)) throw CapacityError("inner degree overflows the ledger");
        r *= base;
    }
    return r;
}

}  // namespace

SigmaBuild sigma_build(const TriangularPencilForm& form, int n, std::optional<long long> n_override) {
    if (n < 1) throw PreconditionError("sigma_build: n must be >= 1");
    const int ell = form.blocks();
    for (int k = 0; k < ell; ++k)
        if (!form.zero_block[std::size_t(k)] && col_norm(form.diag_block(k)) > 1.0 + 1e-8)
            throw PreconditionError("sigma_build: diagonal block " + std::to_string(k) +
                                    " is not a column contraction");

    SigmaBuild out;
    out.n = n;
    out.n_override = n_override;
    const int d = form.conjugated.d();

    auto q_for = [&](int k, int deg) {
        if (form.zero_block[std::size_t(k)])
            return StructuredPoly::identity(form.block_sizes[std::size_t(k)], d);
        return pi_of_pencil(form.diag_block(k), deg);
    };

    StructuredPoly sigma = q_for(0, n);
    long long budget_degree = n;
    double budget_mult = double(n + 1) / 2.0;
    {
        SigmaLevel lvl;
        lvl.block = 0;
        lvl.zero_block = form.zero_block[0];
        lvl.inner_degree = 0;
        lvl.degree_bound = n;
        lvl.realized_degree = sigma.degree();
        lvl.mult_bound_budget = budget_mult;
        lvl.mult_bound = sigma.mult_bound();
        out.ledger.push_back(lvl);
    }

    for (int j = 1; j < ell; ++j) {
        // adding block j (0-based) on top of j existing blocks: N = n^{3^j}
        long long n_inner = n_override ? *n_override : pow_ll(n, [&] {
            int e = 1;
            for (int i = 0; i < j; ++i) e *= 3;
            return e;
        }());
        if (n_inner > 10'000'000) throw CapacityError("sigma_build: inner degree too large to materialize");

        std::vector<Eigen::MatrixXcd> y = form.pencil_offdiag(j);
        StructuredPoly yx = StructuredPoly::linear_term(y);
        StructuredPoly q = q_for(j, n);

        StructuredPoly r = form.zero_block[std::size_t(j)]
                               ? StructuredPoly::product({StructuredPoly::scaled(-1.0, sigma), yx})
                               : StructuredPoly::product({StructuredPoly::scaled(-1.0, sigma), yx,
                                                          pi_of_pencil(form.diag_block(j), int(n_inner))});

        SigmaLevel lvl;
        lvl.block = j;
        lvl.zero_block = form.zero_block[std::size_t(j)];
        lvl.inner_degree = n_inner;
        budget_degree += 1 + n_inner;
        lvl.degree_bound = budget_degree;
        lvl.offdiag_col_norm = col_norm_general(y);
        budget_mult = budget_mult * lvl.offdiag_col_norm * double(n_inner + 1) / 2.0 +
                     std::max(budget_mult, double(n + 1) / 2.0);
        lvl.mult_bound_budget = budget_mult;

        sigma = StructuredPoly::block2x2(sigma, r, q);
        lvl.realized_degree = sigma.degree();
        lvl.mult_bound = sigma.mult_bound();
        out.ledger.push_back(lvl);
    }
    out.sigma = sigma;
    return out;
}

SigmaResidual sigma_residual_norm_sq(const TriangularPencilForm& form, const SigmaBuild& build,
                                     SigmaResidualMode mode, std::size_t term_capacity) {
    SigmaResidual res;
    if (mode == SigmaResidualMode::Exact) {
        PolyC sig = build.sigma.expand(term_capacity);
        PolyC pencil = form.pencil_poly();
        PolyC r = sub(mul(sig, pencil), PolyC::identity(sig.rows(), sig.d()));
        res.value = norm_sq(r);
        res.certified_upper_bound = false;
        return res;
    }

    res.certified_upper_bound = true;
    const int ell = form.blocks();
    double total = 0.0;
    double sigma_mult_prev = 0.0;
    for (int j = 0; j < ell; ++j) {
        SigmaResidualLevel lvl;
        lvl.block = j;
        if (!form.zero_block[std::size_t(j)]) lvl.diagonal = pi_residual_norm_sq(form.diag_block(j), build.n);
        if (j > 0 && !form.zero_block[std::size_t(j)]) {
            long long n_inner = build.ledger[std::size_t(j)].inner_degree;
            lvl.sigma_mult_bound = sigma_mult_prev;
            lvl.y_col_norm = build.ledger[std::size_t(j)].offdiag_col_norm;
            lvl.pi_tail_residual = pi_residual_norm_sq(form.diag_block(j), int(n_inner));
            double factor = lvl.sigma_mult_bound * lvl.y_col_norm;
            lvl.offdiagonal = factor * factor * lvl.pi_tail_residual;
        }
        total += lvl.diagonal + lvl.offdiagonal;
        res.levels.push_back(lvl);
        sigma_mult_prev = build.ledger[std::size_t(j)].mult_bound;
    }
    res.value = total;
    return res;
}

std::string sigma_report_json(const SigmaBuild& build, const SigmaResidual& res) {
    nlohmann::json j;
    j["n"] = build.n;
    if (build.n_override) j["inner_degree_override"] = *build.n_override;
    j["mode"] = res.certified_upper_bound ? "blockwise-certified" : "exact-expansion";
    j["residual"] = res.value;
    auto levels = nlohmann::json::array();
    for (std::size_t i = 0; i < build.ledger.size(); ++i) {
        const SigmaLevel& l = build.ledger[i];
        nlohmann::json e;
        e["block"] = l.block + 1;
        e["zero_block"] = l.zero_block;
        e["inner_degree"] = l.inner_degree;
        e["degree_bound"] = l.degree_bound;
        e["realized_degree"] = l.realized_degree;
        e["mult_bound"] = l.mult_bound;
        if (i < res.levels.size()) {
            e["diagonal_residual"] = res.levels[i].diagonal;
            e["offdiagonal_bound"] = res.levels[i].offdiagonal;
        }
        levels.push_back(std::move(e));
    }
    j["levels"] = std::move(levels);
    return j.dump(2);
}

std::string sigma_report(const SigmaBuild& build, const SigmaResidual& res) {
    std::ostringstream os;
    os << "sigma construction: n=" << build.n;
    if (build.n_override) os << " (inner degree override " << *build.n_override << ")";
    os << "\n";
    for (const auto& l : build.ledger) {
        os << "  level " << (l.block + 1) << (l.zero_block ? " [zero block]" : "") << ": inner degree "
           << l.inner_degree << ", degree bound " << l.degree_bound << ", realized " << l.realized_degree
           << ", mult bound " << l.mult_bound << "\n";
    }
    os << (res.certified_upper_bound ? "  certified residual bound: " : "  exact residual: ") << res.value << "\n";
    for (const auto& l : res.levels) {
        os << "    block " << (l.block + 1) << ": diagonal " << l.diagonal << ", offdiagonal " << l.offdiagonal;
        if (l.offdiagonal > 0)
            os << " (= (" << l.sigma_mult_bound << " x " << l.y_col_norm << ")^2 x " << l.pi_tail_residual << ")";
        os << "\n";
    }
    return os.str();
}

}  // namespace fockopa
