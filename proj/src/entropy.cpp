#include "lmg/entropy.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>

namespace lmg {

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
    init_numeric_runtime();
    const lapack_int n = static_cast<lapack_int>(m.rows());
    Eigen::MatrixXd a = m;  // dsyevd overwrites its input
    Eigen::VectorXd w(n);
    lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, w.data());
    if (info != 0)
        throw compute_error("dsyevd failed on " + std::to_string(n) + "x" + std::to_string(n) +
                            " matrix (info=" + std::to_string(info) + ")");
    return w;
}

double von_neumann_entropy(const ReducedDensity& rho) {
    const int dim = rho.block_size + 1;
    if (rho.matrix.rows() != dim || rho.matrix.cols() != dim)
        throw validation_error("von_neumann_entropy: matrix/block_size mismatch");
    const double tr = rho.trace();
    if (std::abs(tr - 1.0) > 1e-8)
        throw validation_error("von_neumann_entropy: trace deviates from 1 by " +
                               std::to_string(tr - 1.0));

    const Eigen::VectorXd w = symmetric_eigenvalues(rho.matrix);
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
        double lam = w[i];
        if (lam < 0.0) {
            if (lam < -kPsdClamp)
                throw compute_error("density matrix eigenvalue " + std::to_string(lam) +
                                    " below the PSD clamp window");
            lam = 0.0;  // roundoff drift
        }
        if (lam > 0.0) s -= lam * std::log2(lam);
    }
    // |w| can exceed 1 by ~1e-16 and drag the sum a hair negative.
    if (s < 0.0) s = 0.0;
    const double cap = std::log2(static_cast<double>(dim));
    if (s > cap) s = cap;
    return s;
}

}  // namespace lmg
