#pragma once
#include <Eigen/Dense>

#include "lmg/hamiltonian.hpp"

namespace lmg {

// Reduced density matrix of a k-spin block in the k-spin Dicke basis
// |k, j>, j = 0..k.  Real symmetric, trace 1, PSD up to roundoff.
struct ReducedDensity {
    int block_size = 0;      // k
    Eigen::MatrixXd matrix;  // (k+1) x (k+1)

    double trace() const { return matrix.trace(); }
};

// Partial trace over L = N - k spins via the Schmidt split of Dicke states:
// |N, n_e> = sum_l sqrt(C(L,l) C(k, n_e-l) / C(N, n_e)) |L, l> |k, n_e-l>.
// Entry (a, b) accumulates, over l = 0..L,
//
//   exp( ln C(L,l) + [ln C(k,a) + ln C(k,b)]/2
//                  - [ln C(N,a+l) + ln C(N,b+l)]/2 ) * P_{a+l} * P_{b+l},
//
// one exp per (a, b, l) triple so no raw binomial is ever formed.  Out-of-
// range coefficients vanish through the -inf sentinel of log_binomial.
//
// reduce() splits the entry list across OpenMP threads; reduce_serial() is
// the plain reference loop.  Both run the l-sum of every entry in identical
// order, so the results are bitwise identical.
ReducedDensity reduce(const DickeVector& state, int k);
ReducedDensity reduce_serial(const DickeVector& state, int k);

}  // namespace lmg
