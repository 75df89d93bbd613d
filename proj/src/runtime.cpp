#include <dlfcn.h>

#include <cstdlib>
#include <mutex>

#include "lmg/params.hpp"

namespace lmg {

// OpenBLAS would otherwise spin up its own thread pool inside every LAPACK
// call and fight the OpenMP loops wrapped around the solvers.  One BLAS
// thread also keeps eigensolves deterministic.
static void pin_blas_threads() {
    setenv("OPENBLAS_NUM_THREADS", "1", /*overwrite=*/0);
    using setter = void (*)(int);
    if (void* sym = dlsym(RTLD_DEFAULT, "openblas_set_num_threads"))
        reinterpret_cast<setter>(sym)(1);
}

void init_numeric_runtime() {
    static std::once_flag flag;
    std::call_once(flag, pin_blas_threads);
}

void validate(const ModelParams& p) {
    if (p.n_spins < 2)
        throw validation_error("n_spins must be >= 2 (got " + std::to_string(p.n_spins) + ")");
    if (!(p.gamma >= 0.0 && p.gamma <= 1.0))
        throw validation_error("gamma must lie in [0, 1] (got " + std::to_string(p.gamma) + ")");
    if (!(p.field >= 0.0))
        throw validation_error("field must be >= 0 (got " + std::to_string(p.field) + ")");
    if (!(p.coupling > 0.0))
        throw validation_error("coupling must be > 0 (got " + std::to_string(p.coupling) + ")");
}

}  // namespace lmg
