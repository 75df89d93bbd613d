#include <gmp.h>

#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "lmg/binomial.hpp"

namespace {

// ln C(n, r) through exact integer arithmetic; mpz_get_d_2exp splits the
// value as d * 2^e with d in [0.5, 1), so the log never overflows.
double ln_binom_exact(unsigned n, unsigned r) {
    mpz_t b;
    mpz_init(b);
    mpz_bin_uiui(b, n, r);
    long e = 0;
    const double d = mpz_get_d_2exp(&e, b);
    mpz_clear(b);
    return std::log(d) + static_cast<double>(e) * std::log(2.0);
}

}  // namespace

TEST_CASE("log_binomial: small exact values") {
    CHECK(lmg::log_binomial(0, 0) == 0.0);
    CHECK(lmg::log_binomial(5, 0) == 0.0);
    CHECK(lmg::log_binomial(5, 5) == 0.0);
    CHECK(lmg::log_binomial(4, 2) == doctest::Approx(std::log(6.0)).epsilon(1e-14));
    CHECK(lmg::log_binomial(10, 3) == doctest::Approx(std::log(120.0)).epsilon(1e-14));
    CHECK(lmg::log_binomial(500, 250) ==
          doctest::Approx(ln_binom_exact(500, 250)).epsilon(1e-13));
}

TEST_CASE("log_binomial: out-of-range arguments give -inf") {
    const double ninf = -std::numeric_limits<double>::infinity();
    CHECK(lmg::log_binomial(5, 6) == ninf);
    CHECK(lmg::log_binomial(5, -1) == ninf);
    CHECK(lmg::log_binomial(-2, 0) == ninf);
}

TEST_CASE("log_binomial: 1e4 random pairs vs integer oracle, n <= 500") {
    std::mt19937 rng(20240517u);
    std::uniform_int_distribution<int> pick_n(0, 500);
    for (int trial = 0; trial < 10000; ++trial) {
        const int n = pick_n(rng);
        const int r = std::uniform_int_distribution<int>(0, n)(rng);
        const double got = lmg::log_binomial(n, r);
        const double want = ln_binom_exact(n, r);
        const double tol = 1e-10 * std::max(1.0, std::fabs(want));
        CHECK_MESSAGE(std::fabs(got - want) <= tol,
                      "n=", n, " r=", r, " got=", got, " want=", want);
    }
}
