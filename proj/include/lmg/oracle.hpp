#pragma once
#include <Eigen/Dense>
#include <cstdint>

#include "lmg/hamiltonian.hpp"

// Full 2^N reference implementation.  Everything here works on the complete
// Hilbert space with explicit Pauli products and index-summation partial
// traces — no symmetric-subspace shortcuts — so it independently validates
// the banded solver, the Schmidt-split reduction and the correlation
// hierarchy.  Dense and single-threaded on purpose: test code, clarity over
// speed, N <= 12.
namespace lmg::oracle {

// Basis convention: computational index x in [0, 2^N), bit i of x = state of
// spin i, bit value 1 = excited.  sz|1> = +|1>, sz|0> = -|0>, matching the
// collective-operator form where M = n_e - N/2 and the field term is -2hM.
Eigen::MatrixXd full_hamiltonian(const ModelParams& p);  // N <= 12

struct FullState {
    int n_spins = 0;
    Eigen::VectorXd amplitudes;  // length 2^N
    double energy = 0.0;
};

// Ground state of the dense H.  A quasi-degenerate lowest pair (broken
// phase) is rotated onto parity eigenstates ((-1)^{n_e}) and the even one is
// returned, mirroring the banded solver's tie-break.  Largest-magnitude
// amplitude made positive.
FullState full_ground_state(const ModelParams& p);

// |N, n_e> expansion of a symmetric state into the full basis:
// amplitude(x) = P_{popcount(x)} / sqrt(C(N, popcount(x))).
Eigen::VectorXd embed_dicke(const DickeVector& v);

// rho over the spins selected by keep_mask, by explicit summation over the
// complementary spins.  Dimension 2^popcount(keep_mask).
Eigen::MatrixXd partial_trace(const Eigen::VectorXd& psi, int n_spins,
                              std::uint32_t keep_mask);

// Base-2 entropy of a small dense density matrix (same clamp policy as the
// main path).
double entropy_bits(const Eigen::MatrixXd& rho);

// Correlation hierarchy from explicit partial traces over the contiguous
// blocks {0..k-1}, {k..2k-1}, ..., plus the remainder block; each block's
// entropy is computed separately (no permutation-symmetry assumption).
// N <= 10.
double correlations_above_k(const FullState& s, int k);
double genuine_k(const FullState& s, int k);

// All of S^{1->N}..S^{N->N} in one pass: S(rho_full) — the expensive 2^N
// eigensolve — is diagonalized once and shared across k, the per-k block
// entropies stay independent.  Index k-1.
std::vector<double> correlations_above_all(const FullState& s);

}  // namespace lmg::oracle
