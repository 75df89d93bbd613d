#pragma once
#include <Eigen/Dense>

#include "lmg/reduce.hpp"

namespace lmg {

// Eigenvalues of rho in [-kPsdClamp, 0) are treated as roundoff drift of a
// PSD matrix and clamped to zero; anything below is a genuine failure.
inline constexpr double kPsdClamp = 1e-10;

// Base-2 von Neumann entropy -sum_i w_i log2 w_i (0 log 0 = 0), in bits.
// Rejects trace deviating from 1 beyond 1e-8 and eigenvalues below the
// clamp window.  Result is clipped to [0, log2(dim)] against roundoff.
double von_neumann_entropy(const ReducedDensity& rho);

// Ascending eigenvalues of a real symmetric matrix (LAPACK dsyevd).
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m);

}  // namespace lmg
