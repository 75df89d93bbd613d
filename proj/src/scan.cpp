#include "lmg/scan.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lmg/solver_cache.hpp"

namespace lmg {

std::vector<double> uniform_grid(double start, double stop, double step) {
    if (!(step > 0.0) || stop < start) throw validation_error("uniform_grid: bad range");
    const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = start + i * step;
    return g;
}

namespace {

void check_grid(const std::vector<double>& h) {
    if (h.empty()) throw validation_error("sweep: empty h grid");
    for (double x : h)
        if (!(x >= 0.0 && x <= 2.0 + 1e-12))
            throw validation_error("sweep: h=" + std::to_string(x) + " outside [0, 2]");
    if (h.size() >= 2) {
        const double step = h[1] - h[0];
        if (!(step > 0.0)) throw validation_error("sweep: grid not increasing");
        for (size_t i = 1; i + 1 < h.size(); ++i) {
            const double s = h[i + 1] - h[i];
            if (std::abs(s - step) > 1e-12 * std::max(std::abs(step), 1.0))
                throw validation_error("sweep: grid spacing not uniform");
        }
    }
}

template <bool Parallel>
std::vector<SweepCurve> sweep_impl(const ModelParams& tmpl, const std::vector<int>& k_list,
                                   const std::vector<double>& h_grid, SolveCache* cache) {
    check_grid(h_grid);
    if (k_list.empty()) throw validation_error("sweep: empty k list");
    for (int k : k_list)
        if (k < 1 || k > tmpl.n_spins)
            throw validation_error("sweep: k=" + std::to_string(k) + " outside 1..N");
    validate(tmpl.with_field(h_grid.front()));

    const int nh = static_cast<int>(h_grid.size());
    const int nk = static_cast<int>(k_list.size());
    std::vector<double> table(static_cast<size_t>(nh) * nk);
    std::vector<std::string> failures(nh);

#pragma omp parallel for schedule(dynamic) if (Parallel)
    for (int i = 0; i < nh; ++i) {
        try {
            const ModelParams p = tmpl.with_field(h_grid[i]);
            const GroundState gs = cache ? cache->get_or_solve(p) : ground_state(p);
            EntropyCache ents(gs.vector);
            for (int j = 0; j < nk; ++j) {
                const int k = k_list[j];
                table[static_cast<size_t>(i) * nk + j] =
                    k == 1 ? correlations_above_k(ents, 1) : genuine_k(ents, k);
            }
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    }
    for (int i = 0; i < nh; ++i)
        if (!failures[i].empty())
            throw compute_error("sweep failed at h=" + std::to_string(h_grid[i]) + ": " +
                                failures[i]);

    std::vector<SweepCurve> curves(nk);
    for (int j = 0; j < nk; ++j) {
        curves[j].k = k_list[j];
        curves[j].params = tmpl;
        curves[j].h_grid = h_grid;
        curves[j].values.resize(nh);
        for (int i = 0; i < nh; ++i)
            curves[j].values[i] = table[static_cast<size_t>(i) * nk + j];
    }
    return curves;
}

}  // namespace

std::vector<SweepCurve> sweep(const ModelParams& tmpl, const std::vector<int>& k_list,
                              const std::vector<double>& h_grid, SolveCache* cache) {
    return sweep_impl<true>(tmpl, k_list, h_grid, cache);
}
std::vector<SweepCurve> sweep_serial(const ModelParams& tmpl, const std::vector<int>& k_list,
                                     const std::vector<double>& h_grid, SolveCache* cache) {
    return sweep_impl<false>(tmpl, k_list, h_grid, cache);
}

void differentiate(SweepCurve& c) {
    const size_t n = c.values.size();
    if (n < 3 || c.h_grid.size() != n)
        throw validation_error("differentiate: need >= 3 grid points");
    const double dh = (c.h_grid.back() - c.h_grid.front()) / static_cast<double>(n - 1);
    c.derivative.resize(n);
    const auto& f = c.values;
    c.derivative[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dh);
    for (size_t i = 1; i + 1 < n; ++i) c.derivative[i] = (f[i + 1] - f[i - 1]) / (2.0 * dh);
    c.derivative[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dh);
}

DerivativeMin locate_h_min(const SweepCurve& c) {
    const size_t n = c.derivative.size();
    if (n != c.values.size() || n < 3)
        throw validation_error("locate_h_min: derivative not filled");
    size_t imin = 0;
    for (size_t i = 1; i < n; ++i)
        if (c.derivative[i] < c.derivative[imin]) imin = i;
    if (imin == 0 || imin == n - 1)
        throw compute_error("derivative minimum at grid boundary h=" +
                            std::to_string(c.h_grid[imin]) +
                            " — widen the h window");

    const double dh = (c.h_grid.back() - c.h_grid.front()) / static_cast<double>(n - 1);
    const double d1 = c.derivative[imin - 1], d2 = c.derivative[imin],
                 d3 = c.derivative[imin + 1];
    const double denom = d1 - 2.0 * d2 + d3;

    DerivativeMin out;
    if (denom <= 0.0) {  // flat/degenerate parabola: keep the grid point
        out.h_min = c.h_grid[imin];
        out.depth = d2;
        out.s_at_min = c.values[imin];
        out.tie = (d1 == d2 && d2 == d3);
        return out;
    }
    const double t = 0.5 * (d1 - d3) / denom;  // in [-1/2, 1/2]
    out.h_min = c.h_grid[imin] + t * dh;
    out.depth = d2 - (d1 - d3) * (d1 - d3) / (8.0 * denom);
    const double s1 = c.values[imin - 1], s2 = c.values[imin], s3 = c.values[imin + 1];
    out.s_at_min = s2 + 0.5 * (s3 - s1) * t + 0.5 * (s1 - 2.0 * s2 + s3) * t * t;
    out.tie = false;
    return out;
}

}  // namespace lmg
