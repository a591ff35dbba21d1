#include "fockopa/sampling.hpp"

#include "fockopa/fockops.hpp"

namespace fockopa {

Eigen::MatrixXcd random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            double re = g(rng), im = g(rng);
            m(i, j) = std::complex<double>(re, im);
        }
    return m;
}

MatrixTuple random_tuple(int d, int m, std::mt19937_64& rng) {
    std::vector<Eigen::MatrixXcd> v;
    v.reserve(d);
    for (int j = 0; j < d; ++j) v.push_back(random_matrix(m, m, rng));
    return MatrixTuple(std::move(v));
}

MatrixTuple random_row_contraction(int d, int m, double target, std::mt19937_64& rng) {
    MatrixTuple x = random_tuple(d, m, rng);
    double r = row_norm(x);
    if (r == 0.0) return x;
    return x.scaled(target / r);
}

Eigen::MatrixXcd random_invertible(int n, std::mt19937_64& rng) {
    for (;;) {
        Eigen::MatrixXcd s = random_matrix(n, n, rng);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s);
        double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
        if (cond < 1e6) return s;
    }
}

}  // namespace fockopa
