#pragma once
#include <stdexcept>

namespace lmg {

// Error taxonomy mirrored by the CLI exit codes:
//   validation_error -> 1 (bad input), compute_error -> 2 (solver/numerics).
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct compute_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Control knobs of the LMG Hamiltonian
//   H = -(lambda/N) sum_{i<j} (sx_i sx_j + gamma sy_i sy_j) - h sum_i sz_i,
// h in units of lambda.  The QPT studies fix gamma = 0.5 and sweep h in [0,2].
struct ModelParams {
    int n_spins = 2;        // N >= 2 (the i<j sum is empty for N = 1)
    double gamma = 0.5;     // XY anisotropy, in [0, 1]
    double field = 0.0;     // transverse field h >= 0
    double coupling = 1.0;  // ferromagnetic coupling lambda > 0

    ModelParams with_field(double h) const {
        ModelParams p = *this;
        p.field = h;
        return p;
    }
};

// Throws validation_error on any out-of-range knob.
void validate(const ModelParams& p);

// Pins the BLAS backend to one thread (we parallelize above it with OpenMP)
// the first time an eigensolver runs.  Safe to call repeatedly.
void init_numeric_runtime();

}  // namespace lmg
