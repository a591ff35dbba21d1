#ifndef FOCKOPA_SAMPLING_HPP
#define FOCKOPA_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "fockopa/tuple.hpp"

namespace fockopa {

/// Seeded complex Gaussian matrix (entries N(0,1) + iN(0,1)).
Eigen::MatrixXcd random_matrix(int rows, int cols, std::mt19937_64& rng);

/// Seeded tuple of Gaussian m×m matrices.
MatrixTuple random_tuple(int d, int m, std::mt19937_64& rng);

/// Gaussian tuple rescaled so that ‖X‖_row equals target (< 1 for a strict
/// row contraction).
MatrixTuple random_row_contraction(int d, int m, double target, std::mt19937_64& rng);

/// Random invertible matrix (resampled until comfortably conditioned).
Eigen::MatrixXcd random_invertible(int n, std::mt19937_64& rng);

}  // namespace fockopa

#endif
