#include "fockopa/linearize.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "fockopa/errors.hpp"
#include "fockopa/parse.hpp"
#include "fockopa/sampling.hpp"

namespace fockopa {

namespace {

bool constant_term_is_identity(const PolyQ& f) {
    auto c = f.coeff(Word::empty());
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j)
            if (c(i, j) != (i == j ? RatC(1) : RatC(0))) return false;
    return true;
}

struct HighTerm {
    Word w;
    int row = 0, col = 0;
    RatC value;
    bool found = false;
};

/// Graded-lex-largest term of degree ≥ 2 across all entries; ties between
/// entries broken by (row, col).
HighTerm pick_term(const PolyQ& f) {
    HighTerm best;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        if (it->first.length() < 2) break;
        for (int i = 0; i < f.rows() && !best.found; ++i)
            for (int j = 0; j < f.cols() && !best.found; ++j)
                if (!it->second(i, j).is_zero()) {
                    best = {it->first, i, j, it->second(i, j), true};
                }
        if (best.found) return best;
    }
    return best;
}

PolyQ identity_poly(int n, int d) { return PolyQ::identity(n, d); }

/// I + c·x^w at entry (r, c).
PolyQ elementary(int n, int d, const Word& w, int row, int col, const RatC& value) {
    PolyQ e = identity_poly(n, d);
    e.add_entry_term(w, row, col, value);
    return e;
}

bool is_identity(const PolyQ& p) {
    if (p.rows() != p.cols()) return false;
    return p == PolyQ::identity(p.rows(), p.d());
}

int poly_degree(const PolyQ& p) { return p.degree().value_or(0); }

double coeff_op_norm(const CoeffMat<std::complex<double>>& c) {
    Eigen::MatrixXcd m(c.rows(), c.cols());
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j) m(i, j) = c(i, j);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double l1_mult_bound(const PolyQ& p) {
    double s = 0.0;
    PolyC pn = to_numeric(p);
    for (const auto& [w, c] : pn.terms()) s += coeff_op_norm(c);
    return s;
}

}  // namespace

LinearizeResult linearize(const PolyQ& f) {
    if (f.rows() != f.cols()) throw ShapeError("linearize: square polynomial required");
    if (!constant_term_is_identity(f))
        throw PreconditionError(
            "linearize: F(0) must be the identity (pre-multiply by F(0)^{-1} if invertible)");

    const int d = f.d();
    // bordered size budget: one step per unit of excess degree
    long long size_budget = f.rows();
    for (const auto& [w, c] : f.terms())
        if (w.length() >= 2) size_budget += long(w.length()) - 1;

    PolyQ work = f;
    PolyQ p = identity_poly(f.rows(), d), q = p, p_inv = p, q_inv = p;

    while (true) {
        HighTerm t = pick_term(work);
        if (!t.found) break;
        const int n = work.rows();
        const int nn = n + 1;

        // remove c·x^w from entry (r,c) by bordering: the Schur identity
        // needs a·b = −c·x^w, with a = −c·x_{i1} peeled from the left.
        Word head = Word::single(t.w.letter(0));
        Word tail = t.w.suffix_from(1);

        PolyQ grown = pad_with_identity(work, nn);
        grown.add_entry_term(t.w, t.row, t.col, -t.value);          // cancel the term
        grown.add_entry_term(head, t.row, nn - 1, -t.value);        // a
        grown.add_entry_term(tail, nn - 1, t.col, RatC(1));         // b

        PolyQ p_step = elementary(nn, d, head, t.row, nn - 1, -t.value);
        PolyQ p_step_inv = elementary(nn, d, head, t.row, nn - 1, t.value);
        PolyQ q_step = elementary(nn, d, tail, nn - 1, t.col, RatC(1));
        PolyQ q_step_inv = elementary(nn, d, tail, nn - 1, t.col, RatC(-1));

        p = mul(p_step, pad_with_identity(p, nn));
        p_inv = mul(pad_with_identity(p_inv, nn), p_step_inv);
        q = mul(pad_with_identity(q, nn), q_step);
        q_inv = mul(q_step_inv, pad_with_identity(q_inv, nn));
        work = std::move(grown);
    }

    if (work.rows() > size_budget)
        throw NumericalDegeneracyError("linearize: bordered size exceeded its budget");

    LinearizeResult out;
    out.pencil_poly = work;
    const int n = work.rows();

    std::vector<Eigen::MatrixXcd> coeffs(std::size_t(d), Eigen::MatrixXcd::Zero(n, n));
    for (const auto& [w, c] : work.terms()) {
        if (w.is_empty()) continue;
        int j = w.letter(0) - 1;
        for (int r = 0; r < n; ++r)
            for (int cc = 0; cc < n; ++cc) coeffs[j](r, cc) -= c(r, cc).to_complex();
    }
    out.pencil = MonicPencil{MatrixTuple(std::move(coeffs))};

    out.witness.padded_size = n;
    out.witness.f = f;
    out.witness.g = work;
    out.witness.p = std::move(p);
    out.witness.q = std::move(q);
    out.witness.p_inv = std::move(p_inv);
    out.witness.q_inv = std::move(q_inv);
    out.witness.d1 = poly_degree(out.witness.p) + poly_degree(out.witness.q);
    out.witness.d2 = poly_degree(out.witness.p_inv) + poly_degree(out.witness.q_inv);
    return out;
}

VerifyReport verify_stable_assoc(const PolyQ& f, const PolyQ& g, const StableAssocWitness& w) {
    VerifyReport rep;
    auto mismatch = [&](const PolyQ& a, const PolyQ& b, const char* what) {
        if (a == b) return false;
        PolyQ diff = sub(a, b);
        std::ostringstream os;
        os << what << ": first differing word " << diff.terms().begin()->first.str();
        rep.ok = false;
        rep.detail = os.str();
        return true;
    };

    const int n = w.padded_size;
    if (g.rows() != n) {
        rep.ok = false;
        rep.detail = "partner size does not match padded size";
        return rep;
    }
    if (mismatch(mul(w.p, mul(pad_with_identity(f, n), w.q)), g, "padding identity")) return rep;
    PolyQ eye = PolyQ::identity(n, f.d());
    if (mismatch(mul(w.p, w.p_inv), eye, "P·P_inv")) return rep;
    if (mismatch(mul(w.p_inv, w.p), eye, "P_inv·P")) return rep;
    if (mismatch(mul(w.q, w.q_inv), eye, "Q·Q_inv")) return rep;
    if (mismatch(mul(w.q_inv, w.q), eye, "Q_inv·Q")) return rep;
    return rep;
}

StableAssocWitness compose_witness(const StableAssocWitness& fg, const StableAssocWitness& gh) {
    if (!(fg.g == gh.f)) throw PreconditionError("compose_witness: middle polynomials differ");
    if (fg.g.rows() > gh.padded_size)
        throw ShapeError("compose_witness: middle polynomial larger than second padding");
    const int n = gh.padded_size;
    StableAssocWitness out;
    out.padded_size = n;
    out.f = fg.f;
    out.g = gh.g;
    out.p = mul(gh.p, pad_with_identity(fg.p, n));
    out.p_inv = mul(pad_with_identity(fg.p_inv, n), gh.p_inv);
    out.q = mul(pad_with_identity(fg.q, n), gh.q);
    out.q_inv = mul(gh.q_inv, pad_with_identity(fg.q_inv, n));
    out.d1 = poly_degree(out.p) + poly_degree(out.q);
    out.d2 = poly_degree(out.p_inv) + poly_degree(out.q_inv);
    return out;
}

ZeroLocusReport zero_locus_agreement(const PolyC& f, const PolyC& g, int samples, std::uint64_t seed,
                                     const std::vector<MatrixTuple>& planted, double tol) {
    if (samples < 1) throw PreconditionError("zero_locus_agreement: samples must be >= 1");
    if (f.rows() != f.cols() || g.rows() != g.cols()) throw ShapeError("zero_locus_agreement: square inputs");
    ZeroLocusReport rep;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.15, 0.95);
    auto probe = [&](const MatrixTuple& x, bool is_planted) {
        ZeroLocusSample s;
        s.level = x.level();
        s.planted = is_planted;
        s.abs_det_f = std::abs(eval(f, x).determinant());
        s.abs_det_g = std::abs(eval(g, x).determinant());
        s.zero_f = s.abs_det_f <= tol;
        s.zero_g = s.abs_det_g <= tol;
        s.agree = s.zero_f == s.zero_g;
        rep.all_agree = rep.all_agree && s.agree;
        if (s.zero_f || s.zero_g) ++rep.zeros_found;
        rep.samples.push_back(s);
    };
    for (const auto& x : planted) probe(x, true);
    for (int i = 0; i < samples; ++i) {
        int level = 1 + int(i % 3);
        probe(random_row_contraction(f.d(), level, radius(rng), rng), false);
    }
    return rep;
}

SandwichConstants decay_sandwich_constants(const StableAssocWitness& w) {
    SandwichConstants c;
    c.d1 = w.d1;
    c.d2 = w.d2;
    double lq = l1_mult_bound(w.q);
    double lqi = l1_mult_bound(w.q_inv);
    c.c1 = lqi * lq;
    c.c2 = lq * lqi;
    int n_probe = 2;
    c.q_mult_lower = multiplier_norm_lower_bound(to_numeric(w.q), n_probe);
    c.q_inv_mult_lower = multiplier_norm_lower_bound(to_numeric(w.q_inv), n_probe);
    return c;
}

std::string witness_to_json(const StableAssocWitness& w) {
    nlohmann::json j;
    j["N"] = w.padded_size;
    j["D1"] = w.d1;
    j["D2"] = w.d2;
    j["F"] = nlohmann::json::parse(matrix_poly_to_json(w.f));
    j["G"] = nlohmann::json::parse(matrix_poly_to_json(w.g));
    j["P"] = nlohmann::json::parse(matrix_poly_to_json(w.p));
    j["Q"] = nlohmann::json::parse(matrix_poly_to_json(w.q));
    j["P_inv"] = nlohmann::json::parse(matrix_poly_to_json(w.p_inv));
    j["Q_inv"] = nlohmann::json::parse(matrix_poly_to_json(w.q_inv));
    return j.dump(2);
}

StableAssocWitness witness_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    StableAssocWitness w;
    w.padded_size = j.at("N").get<int>();
    w.d1 = j.at("D1").get<int>();
    w.d2 = j.at("D2").get<int>();
    w.f = matrix_poly_from_json(j.at("F").dump());
    w.g = matrix_poly_from_json(j.at("G").dump());
    w.p = matrix_poly_from_json(j.at("P").dump());
    w.q = matrix_poly_from_json(j.at("Q").dump());
    w.p_inv = matrix_poly_from_json(j.at("P_inv").dump());
    w.q_inv = matrix_poly_from_json(j.at("Q_inv").dump());
    return w;
}

RatC exact_eval_det(const PolyQ& f, const std::vector<CoeffMat<RatC>>& x) {
    if (f.rows() != f.cols()) throw ShapeError("exact_eval_det: square polynomial required");
    if (int(x.size()) != f.d()) throw ShapeError("exact_eval_det: point has wrong letter count");
    const int m = x.empty() ? 1 : x.front().rows();
    const int n = f.rows() * m;

    auto word_eval = [&](const Word& w) {
        CoeffMat<RatC> r = CoeffMat<RatC>::identity(m);
        for (auto l : w.letters()) r = r * x[std::size_t(l - 1)];
        return r;
    };
    CoeffMat<RatC> a(n, n);
    for (const auto& [w, c] : f.terms()) {
        CoeffMat<RatC> xw = word_eval(w);
        for (int bi = 0; bi < f.rows(); ++bi)
            for (int bj = 0; bj < f.cols(); ++bj) {
                if (c(bi, bj).is_zero()) continue;
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j)
                        a(bi * m + i, bj * m + j) += c(bi, bj) * xw(i, j);
            }
    }
    // rational Gaussian elimination with partial (first nonzero) pivoting
    RatC det(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!a(r, col).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) return RatC(0);
        if (pivot != col) {
            for (int cc = 0; cc < n; ++cc) std::swap(a(pivot, cc), a(col, cc));
            det = -det;
        }
        det = det * a(col, col);
        for (int r = col + 1; r < n; ++r) {
            if (a(r, col).is_zero()) continue;
            RatC factor = a(r, col) / a(col, col);
            for (int cc = col; cc < n; ++cc) a(r, cc) = a(r, cc) - factor * a(col, cc);
        }
    }
    return det;
}

}  // namespace fockopa
