#include "fockopa/fockops.hpp"

#include <sstream>

namespace fockopa {

namespace {

Eigen::MatrixXcd coeff_to_eigen(const CoeffMat<std::complex<double>>& c) {
    Eigen::MatrixXcd m(c.rows(), c.cols());
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j) m(i, j) = c(i, j);
    return m;
}

}  // namespace

Eigen::MatrixXcd left_mult_matrix(const PolyC& f, int n, std::size_t capacity) {
    if (f.rows() != f.cols()) throw ShapeError("left_mult_matrix: square polynomial required");
    const int k = f.rows();
    const int degf = f.degree().value_or(0);
    TruncatedBasis dom(f.d(), n, capacity);
    // the range side grows by deg F; it is bounded by memory, not by the
    // requested basis capacity
    TruncatedBasis ran(f.d(), n + degf, capacity * 8);
    const std::size_t kk = std::size_t(k) * k;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(ran.size() * kk), Eigen::Index(dom.size() * kk));
    const Eigen::MatrixXcd ik = Eigen::MatrixXcd::Identity(k, k);
    for (const auto& [w, c] : f.terms()) {
        Eigen::MatrixXcd blk = kron(ik, coeff_to_eigen(c));  // vec(F_w P) = (I ⊗ F_w) vec(P)
        for (std::size_t vi = 0; vi < dom.size(); ++vi) {
            std::size_t ui = ran.index(w.concat(dom.word(vi)));
            m.block(Eigen::Index(ui * kk), Eigen::Index(vi * kk), Eigen::Index(kk), Eigen::Index(kk)) += blk;
        }
    }
    return m;
}

Eigen::MatrixXcd right_mult_matrix(const PolyC& f, int n, std::size_t capacity) {
    if (f.rows() != f.cols()) throw ShapeError("right_mult_matrix: square polynomial required");
    const int k = f.rows();
    const int degf = f.degree().value_or(0);
    TruncatedBasis dom(f.d(), n, capacity);
    TruncatedBasis ran(f.d(), n + degf, capacity * 8);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(ran.size() * k), Eigen::Index(dom.size() * k));
    for (const auto& [w, c] : f.terms()) {
        Eigen::MatrixXcd blk = coeff_to_eigen(c).transpose();  // (r F_w)^T = F_w^T r^T
        for (std::size_t vi = 0; vi < dom.size(); ++vi) {
            std::size_t ui = ran.index(dom.word(vi).concat(w));
            m.block(Eigen::Index(ui * k), Eigen::Index(vi * k), k, k) += blk;
        }
    }
    return m;
}

double operator_norm(const Eigen::MatrixXcd& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Eigen::MatrixXcd gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    double top = es.eigenvalues().maxCoeff();
    return std::sqrt(std::max(top, 0.0));
}

double row_norm(const MatrixTuple& x) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(x.level(), x.level());
    for (int j = 0; j < x.d(); ++j) s += x.mat(j) * x.mat(j).adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

double col_norm(const MatrixTuple& x) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(x.level(), x.level());
    for (int j = 0; j < x.d(); ++j) s += x.mat(j).adjoint() * x.mat(j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

double col_norm_general(const std::vector<Eigen::MatrixXcd>& y) {
    if (y.empty()) return 0.0;
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(y.front().cols(), y.front().cols());
    for (const auto& m : y) s += m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

double pencil_mult_norm(const MatrixTuple& a) { return col_norm(a); }

CpMapMatrix::CpMapMatrix(MatrixTuple x) : x_(std::move(x)) {
    const int m = x_.level();
    k_ = Eigen::MatrixXcd::Zero(m * m, m * m);
    // vec(X T X^*) = (conj(X) ⊗ X) vec(T) under column stacking
    for (int j = 0; j < x_.d(); ++j) k_ += kron(x_.mat(j).conjugate(), x_.mat(j));
}

Eigen::MatrixXcd CpMapMatrix::apply(const Eigen::MatrixXcd& t) const {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(x_.level(), x_.level());
    for (int j = 0; j < x_.d(); ++j) r += x_.mat(j) * t * x_.mat(j).adjoint();
    return r;
}

std::vector<double> structural_power_norms_sq(const MatrixTuple& m, int kmax) {
    if (kmax < 0) throw PreconditionError("structural_power_norms_sq: kmax must be >= 0");
    std::vector<double> out;
    out.reserve(kmax + 1);
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(m.level(), m.level());
    out.push_back(double(m.level()));
    for (int k = 1; k <= kmax; ++k) {
        Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(m.level(), m.level());
        for (int j = 0; j < m.d(); ++j) next += m.mat(j).adjoint() * t * m.mat(j);
        t = std::move(next);
        out.push_back(t.real().trace());
    }
    return out;
}

double structural_power_norm_sq(const MatrixTuple& m, int k) {
    return structural_power_norms_sq(m, k).back();
}

double multiplier_norm_lower_bound(const PolyC& p, int n, std::size_t capacity) {
    return operator_norm(left_mult_matrix(p, n, capacity));
}

std::string matrix_to_csv(const Eigen::MatrixXcd& m) {
    std::ostringstream os;
    os.precision(17);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << ',';
            os << m(i, j).real();
            if (m(i, j).imag() != 0) os << (m(i, j).imag() > 0 ? "+" : "") << m(i, j).imag() << 'i';
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace fockopa
