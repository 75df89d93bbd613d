#pragma once

namespace lmg {

// ln C(n, r) through lgamma.  Returns -infinity for r < 0 or r > n (the
// coefficient is zero there; exp of the sentinel vanishes, which is exactly
// what the partial-trace sums need).  Raw binomials overflow double around
// n ~ 1030 and lose all precision long before; C(500, 250) ~ 10^149, so
// everything downstream stays in log space.
double log_binomial(int n, int r);

}  // namespace lmg
