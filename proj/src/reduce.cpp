#include "lmg/reduce.hpp"

#include <cmath>
#include <string>

#include "lmg/binomial.hpp"

namespace lmg {

namespace {

struct LogTables {
    Eigen::VectorXd lnCk, lnCL, lnCN;  // ln C(k,.), ln C(L,.), ln C(N,.)
};

LogTables make_tables(int N, int k) {
    const int L = N - k;
    LogTables t;
    t.lnCk.resize(k + 1);
    t.lnCL.resize(L + 1);
    t.lnCN.resize(N + 1);
    for (int a = 0; a <= k; ++a) t.lnCk[a] = log_binomial(k, a);
    for (int l = 0; l <= L; ++l) t.lnCL[l] = log_binomial(L, l);
    for (int n = 0; n <= N; ++n) t.lnCN[n] = log_binomial(N, n);
    return t;
}

// One matrix entry: the l-sum runs in a fixed ascending order so the serial
// and OpenMP paths round identically.
double rho_entry(const Eigen::VectorXd& P, const LogTables& t, int L, int a, int b) {
    double acc = 0.0;
    const double half_ab = 0.5 * (t.lnCk[a] + t.lnCk[b]);
    for (int l = 0; l <= L; ++l) {
        const double w = t.lnCL[l] + half_ab - 0.5 * (t.lnCN[a + l] + t.lnCN[b + l]);
        acc += std::exp(w) * P[a + l] * P[b + l];
    }
    return acc;
}

void check_args(const DickeVector& state, int k) {
    if (state.n_spins < 1 || state.amplitudes.size() != state.n_spins + 1)
        throw validation_error("reduce: malformed Dicke vector");
    if (k < 1 || k > state.n_spins)
        throw validation_error("reduce: k=" + std::to_string(k) + " outside 1.." +
                               std::to_string(state.n_spins));
    if (std::abs(state.norm_sq() - 1.0) > 1e-12)
        throw validation_error("reduce: state not normalized (|P|^2 - 1 = " +
                               std::to_string(state.norm_sq() - 1.0) + ")");
}

template <bool Parallel>
ReducedDensity reduce_impl(const DickeVector& state, int k) {
    check_args(state, k);
    const int N = state.n_spins;
    const int L = N - k;
    const LogTables t = make_tables(N, k);
    const Eigen::VectorXd& P = state.amplitudes;

    ReducedDensity rho;
    rho.block_size = k;
    rho.matrix.setZero(k + 1, k + 1);

    // Flattened upper triangle (a <= b): p = a (k+1) + b, entries independent.
    const long total = static_cast<long>(k + 1) * (k + 1);
#pragma omp parallel for schedule(static) if (Parallel)
    for (long p = 0; p < total; ++p) {
        const int a = static_cast<int>(p / (k + 1));
        const int b = static_cast<int>(p % (k + 1));
        if (a > b) continue;
        rho.matrix(a, b) = rho_entry(P, t, L, a, b);
    }
    for (int a = 0; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b) rho.matrix(b, a) = rho.matrix(a, b);
    return rho;
}

}  // namespace

ReducedDensity reduce(const DickeVector& state, int k) { return reduce_impl<true>(state, k); }
ReducedDensity reduce_serial(const DickeVector& state, int k) {
    return reduce_impl<false>(state, k);
}

}  // namespace lmg
