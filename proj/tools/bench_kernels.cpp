// Serial-vs-OpenMP kernel timings.  The parallel paths must be bitwise
// identical to the reference loops, so besides the speedup this doubles as a
// determinism check (max |delta| printed, must be 0).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "lmg/gmc.hpp"
#include "lmg/reduce.hpp"
#include "lmg/scan.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using clk = std::chrono::steady_clock;

static double secs(clk::time_point a, clk::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled\n");
#endif

    lmg::ModelParams p;
    p.n_spins = 400;
    p.gamma = 0.5;
    p.field = 0.9;
    const lmg::GroundState gs = lmg::ground_state(p);

    // single reduction, k = N/2
    {
        const int k = p.n_spins / 2;
        auto t0 = clk::now();
        const lmg::ReducedDensity serial = lmg::reduce_serial(gs.vector, k);
        auto t1 = clk::now();
        const lmg::ReducedDensity par = lmg::reduce(gs.vector, k);
        auto t2 = clk::now();
        const double dmax = (serial.matrix - par.matrix).cwiseAbs().maxCoeff();
        std::printf("reduce        N=%-4d k=%-3d serial %8.3fs  omp %8.3fs  max|delta| %g\n",
                    p.n_spins, k, secs(t0, t1), secs(t1, t2), dmax);
        if (dmax != 0.0) return 1;
    }

    // full hierarchy (every k once)
    {
        auto t0 = clk::now();
        const lmg::GmcSpectrum serial = lmg::gmc_spectrum_serial(gs.vector);
        auto t1 = clk::now();
        const lmg::GmcSpectrum par = lmg::gmc_spectrum(gs.vector);
        auto t2 = clk::now();
        double dmax = std::fabs(serial.total - par.total);
        for (int k = 1; k <= p.n_spins; ++k)
            dmax = std::fmax(dmax, std::fabs(serial.above(k) - par.above(k)));
        for (int k = 2; k <= p.n_spins; ++k)
            dmax = std::fmax(dmax, std::fabs(serial.genuine_order(k) - par.genuine_order(k)));
        std::printf("gmc_spectrum  N=%-4d       serial %8.3fs  omp %8.3fs  max|delta| %g\n",
                    p.n_spins, secs(t0, t1), secs(t1, t2), dmax);
        if (dmax != 0.0) return 1;
    }

    // field sweep (solves dominate)
    {
        lmg::ModelParams tmpl;
        tmpl.n_spins = 156;
        tmpl.gamma = 0.5;
        const std::vector<int> ks{1, 2, 3};
        const std::vector<double> grid = lmg::uniform_grid(0.5, 1.2, 0.005);
        auto t0 = clk::now();
        const auto serial = lmg::sweep_serial(tmpl, ks, grid);
        auto t1 = clk::now();
        const auto par = lmg::sweep(tmpl, ks, grid);
        auto t2 = clk::now();
        double dmax = 0.0;
        for (size_t c = 0; c < serial.size(); ++c)
            for (size_t i = 0; i < grid.size(); ++i)
                dmax = std::fmax(dmax, std::fabs(serial[c].values[i] - par[c].values[i]));
        std::printf("sweep         N=%-4d %zu pts serial %8.3fs  omp %8.3fs  max|delta| %g\n",
                    tmpl.n_spins, grid.size(), secs(t0, t1), secs(t1, t2), dmax);
        if (dmax != 0.0) return 1;
    }

    return 0;
}
