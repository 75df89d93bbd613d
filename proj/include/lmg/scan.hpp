#pragma once
#include <vector>

#include "lmg/gmc.hpp"

namespace lmg {

class SolveCache;

// One correlation-vs-field curve.  k = 1 means the total correlations
// S^{1->N}; k >= 2 the genuine k-partite correlations S^k.
struct SweepCurve {
    int k = 1;
    ModelParams params;             // field comes from h_grid
    std::vector<double> h_grid;     // strictly increasing, uniform
    std::vector<double> values;     // S^k(h)
    std::vector<double> derivative; // dS^k/dh, filled by differentiate()
};

// Uniform grid start, start+step, ..., stop (stop included when it lands on
// the lattice within roundoff).
std::vector<double> uniform_grid(double start, double stop, double step);

// One ground solve per grid point, shared across every requested k.  The
// grid must be uniform (1e-12 relative) and inside [0, 2]; solver failures
// are rethrown with the offending h attached.  sweep() distributes grid
// points over OpenMP threads, sweep_serial() is the reference loop; curves
// are assembled in grid order either way, so outputs are bitwise identical.
// An optional cache persists/replays the per-h ground solves.
std::vector<SweepCurve> sweep(const ModelParams& tmpl, const std::vector<int>& k_list,
                              const std::vector<double>& h_grid, SolveCache* cache = nullptr);
std::vector<SweepCurve> sweep_serial(const ModelParams& tmpl, const std::vector<int>& k_list,
                                     const std::vector<double>& h_grid,
                                     SolveCache* cache = nullptr);

// Central differences inside, one-sided second-order stencils at the two
// ends; exact for quadratics on the uniform grid.  Needs >= 3 points.
void differentiate(SweepCurve& c);

struct DerivativeMin {
    double h_min = 0.0;    // refined argmin of dS/dh
    double depth = 0.0;    // parabola value at h_min
    double s_at_min = 0.0; // S^k interpolated at h_min
    bool tie = false;      // degenerate (flat) parabola at the argmin
};

// Grid argmin of the derivative refined by the parabola through its three
// bracketing samples; s_at_min is the quadratic through the matching S
// samples evaluated at the refined h_min.  An argmin on the grid boundary
// means the window missed the dip and throws compute_error.
DerivativeMin locate_h_min(const SweepCurve& c);

}  // namespace lmg
