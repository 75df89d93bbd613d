#pragma once
#include <Eigen/Dense>

#include "lmg/params.hpp"

namespace lmg {

// Amplitudes P_{n_e} of a permutation-symmetric pure state over the Dicke
// basis |N, n_e>, n_e = 0..N (n_e = number of excited spins).
struct DickeVector {
    int n_spins = 0;
    Eigen::VectorXd amplitudes;  // size N+1, unit 2-norm

    double norm_sq() const { return amplitudes.squaredNorm(); }
};

// H restricted to the symmetric subspace, written with collective operators
// J_a = (1/2) sum_i s_a^i, J = N/2, M = n_e - N/2:
//
//   H = -(lambda/N)(1+gamma)(J^2 - Jz^2 - N/2) - 2 h Jz
//       -(lambda/2N)(1-gamma)(J+^2 + J-^2)
//
// J+^2 / J-^2 move n_e by 2, so only the diagonal and the second
// off-diagonal are populated and H splits into even/odd n_e parity blocks,
// each tridiagonal in its own index.
struct BandedHamiltonian {
    int n_spins = 0;
    Eigen::VectorXd diagonal;            // <n_e|H|n_e>, size N+1
    Eigen::VectorXd second_offdiagonal;  // <n_e+2|H|n_e>, size N-1

    double max_abs() const;
    Eigen::VectorXd apply(const Eigen::VectorXd& v) const;  // H v
};

enum class Parity { even, odd };

struct GroundState {
    ModelParams params;
    double energy = 0.0;
    DickeVector vector;
    Parity parity = Parity::even;
    double eigensolve_residual = 0.0;  // ||H v - E v||_2
};

// Matrix elements, evaluated per the collective form above:
//   diagonal[n_e]        = -(lambda/N)(1+gamma)(J(J+1) - M^2 - N/2) - 2 h M
//   offdiag[n_e -> n_e+2] = -(lambda/2N)(1-gamma) c+(M) c+(M+1),
//   c+(M) = sqrt(J(J+1) - M(M+1))
BandedHamiltonian build_hamiltonian(const ModelParams& p);

// Global minimum over both parity blocks.  A degenerate pair (gap below
// 1e-12 |E|, the broken-phase quasi-doublet) resolves to the even block.
// Sign fixed by making the largest-magnitude amplitude positive; the
// residual ||Hv - Ev|| is recorded and checked against
// 1e-9 * max|H| * (N+1).  Non-convergence throws compute_error.
GroundState ground_state(const ModelParams& p);

// Lowest eigenpair of a symmetric tridiagonal block (LAPACK dstevr, index
// range 1..1).  diag/off are consumed.  Throws compute_error on failure.
double lowest_tridiagonal_eigenpair(Eigen::VectorXd diag, Eigen::VectorXd off,
                                    Eigen::VectorXd& vec_out);

// Full ascending eigenvalue list of one parity block (used for gap and
// spectrum sanity checks).
Eigen::VectorXd parity_block_spectrum(const BandedHamiltonian& H, Parity parity);

}  // namespace lmg
