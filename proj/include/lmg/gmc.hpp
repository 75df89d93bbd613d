#pragma once
#include <optional>
#include <vector>

#include "lmg/entropy.hpp"

namespace lmg {

// Per-state memo of block entropies S(rho_k).  The correlation hierarchy
// touches every k once, and S(rho_N) enters every order, so each entropy is
// computed a single time.  For N/2 < k < N the Schmidt duality of the pure
// global state, S(rho_k) = S(rho_{N-k}), routes the work through the smaller
// complement block; k = N itself is always evaluated directly (purity is
// checked by the result, never assumed).  Not thread-safe; use one cache per
// thread.
class EntropyCache {
public:
    explicit EntropyCache(DickeVector state);

    // S(rho_k) in bits; k = 0 is the empty block (entropy 0).
    double entropy(int k);

    const DickeVector& state() const { return state_; }

private:
    DickeVector state_;
    std::vector<std::optional<double>> memo_;
};

struct GmcSpectrum {
    int n_spins = 0;
    double total = 0.0;           // S^{1->N} = N S(rho_1) - S(rho_N)
    std::vector<double> above_k;  // S^{k->N}, index k-1, for k = 1..N
    std::vector<double> genuine;  // S^k, index k-2, for k = 2..N

    double above(int k) const { return above_k.at(k - 1); }
    double genuine_order(int k) const { return genuine.at(k - 2); }
};

// Correlations of order higher than k: with m = floor(N/k) size-k clusters
// plus an N mod k remainder cluster,
//   S^{k->N} = m S(rho_k) + [N mod k > 0] S(rho_{N mod k}) - S(rho_N).
double correlations_above_k(EntropyCache& ents, int k);
double correlations_above_k(const DickeVector& state, int k);

// Genuine k-partite correlations S^k = S^{k-1 -> N} - S^{k -> N}, k >= 2.
double genuine_k(EntropyCache& ents, int k);
double genuine_k(const DickeVector& state, int k);

// Full hierarchy.  Asserts the telescoping sum rule
// sum_{k=2..N} S^k = S^{1->N} to 1e-8 and warns (stderr) about any genuine
// value below -1e-9.  gmc_spectrum() computes the per-k entropies in an
// OpenMP loop, gmc_spectrum_serial() in a plain loop; outputs are bitwise
// identical.
GmcSpectrum gmc_spectrum(const DickeVector& state);
GmcSpectrum gmc_spectrum_serial(const DickeVector& state);

}  // namespace lmg
