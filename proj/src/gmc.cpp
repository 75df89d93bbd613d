#include "lmg/gmc.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

namespace lmg {

EntropyCache::EntropyCache(DickeVector state) : state_(std::move(state)) {
    if (state_.n_spins < 1 || state_.amplitudes.size() != state_.n_spins + 1)
        throw validation_error("EntropyCache: malformed Dicke vector");
    memo_.assign(state_.n_spins + 1, std::nullopt);
}

double EntropyCache::entropy(int k) {
    const int N = state_.n_spins;
    if (k < 0 || k > N)
        throw validation_error("EntropyCache: k=" + std::to_string(k) + " outside 0..N");
    if (k == 0) return 0.0;
    if (memo_[k]) return *memo_[k];
    // S(rho_k) = S(rho_{N-k}) for the pure global state (Schmidt duality);
    // evaluating the smaller block halves the worst-case work.  k = N is
    // computed as-is: the global purity is a result, not an input.
    const int kk = (k < N && N - k < k) ? N - k : k;
    const double s = von_neumann_entropy(reduce(state_, kk));
    memo_[k] = s;
    memo_[kk] = s;
    return s;
}

double correlations_above_k(EntropyCache& ents, int k) {
    const int N = ents.state().n_spins;
    if (k < 1 || k > N)
        throw validation_error("correlations_above_k: k=" + std::to_string(k) + " outside 1..N");
    const int m = N / k, rem = N % k;
    double s = m * ents.entropy(k) - ents.entropy(N);
    if (rem != 0) s += ents.entropy(rem);
    return s;
}

double correlations_above_k(const DickeVector& state, int k) {
    EntropyCache ents(state);
    return correlations_above_k(ents, k);
}

double genuine_k(EntropyCache& ents, int k) {
    const int N = ents.state().n_spins;
    if (k < 2 || k > N)
        throw validation_error("genuine_k: k=" + std::to_string(k) + " outside 2..N");
    return correlations_above_k(ents, k - 1) - correlations_above_k(ents, k);
}

double genuine_k(const DickeVector& state, int k) {
    EntropyCache ents(state);
    return genuine_k(ents, k);
}

namespace {

GmcSpectrum assemble_spectrum(const DickeVector& state, bool parallel) {
    const int N = state.n_spins;
    if (N < 2) throw validation_error("gmc_spectrum: need N >= 2");
    if (std::abs(state.norm_sq() - 1.0) > 1e-12)
        throw validation_error("gmc_spectrum: state not normalized");

    // Distinct blocks actually needed: 1..floor(N/2) plus N (duality covers
    // the rest).  Each job is independent -> parallel over k.
    std::vector<double> ent(N + 1, 0.0);
    const int half = N / 2;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int j = 1; j <= half + 1; ++j) {
        const int k = (j == half + 1) ? N : j;
        ent[k] = von_neumann_entropy(reduce(state, k));
    }
    for (int k = half + 1; k < N; ++k) ent[k] = ent[N - k];

    GmcSpectrum out;
    out.n_spins = N;
    out.above_k.resize(N);
    out.genuine.resize(N - 1);
    for (int k = 1; k <= N; ++k) {
        const int m = N / k, rem = N % k;
        double s = m * ent[k] - ent[N];
        if (rem != 0) s += ent[rem];
        out.above_k[k - 1] = s;
    }
    out.total = out.above_k[0];
    double sum = 0.0;
    for (int k = 2; k <= N; ++k) {
        const double g = out.above_k[k - 2] - out.above_k[k - 1];
        out.genuine[k - 2] = g;
        sum += g;
        if (g < -1e-9)
            std::fprintf(stderr, "warning: genuine S^%d = %.3e < 0 beyond roundoff (N=%d)\n", k,
                         g, N);
    }
    if (std::abs(sum - out.total) > 1e-8)
        throw compute_error("sum rule violated: sum of genuine orders deviates from the total by " +
                            std::to_string(sum - out.total));
    return out;
}

}  // namespace

GmcSpectrum gmc_spectrum(const DickeVector& state) { return assemble_spectrum(state, true); }
GmcSpectrum gmc_spectrum_serial(const DickeVector& state) {
    return assemble_spectrum(state, false);
}

}  // namespace lmg
