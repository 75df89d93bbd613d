#include "lmg/binomial.hpp"

#include <cmath>
#include <limits>

namespace lmg {

double log_binomial(int n, int r) {
    if (r < 0 || r > n || n < 0) return -std::numeric_limits<double>::infinity();
    if (r == 0 || r == n) return 0.0;  // C(n,0) = C(n,n) = 1, exactly
    return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

}  // namespace lmg
