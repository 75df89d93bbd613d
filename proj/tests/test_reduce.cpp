#include <bit>
#include <cmath>
#include <random>

#include "doctest.h"
#include "lmg/binomial.hpp"
#include "lmg/entropy.hpp"
#include "lmg/oracle.hpp"
#include "lmg/reduce.hpp"

using lmg::DickeVector;

namespace {

DickeVector ghz(int n) {
    DickeVector v;
    v.n_spins = n;
    v.amplitudes = Eigen::VectorXd::Zero(n + 1);
    v.amplitudes[0] = v.amplitudes[n] = 1.0 / std::sqrt(2.0);
    return v;
}

DickeVector random_dicke(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    DickeVector v;
    v.n_spins = n;
    v.amplitudes = Eigen::VectorXd(n + 1);
    for (int i = 0; i <= n; ++i) v.amplitudes[i] = g(rng);
    v.amplitudes.normalize();
    return v;
}

DickeVector ground(int n, double h) {
    lmg::ModelParams p;
    p.n_spins = n;
    p.gamma = 0.5;
    p.field = h;
    return lmg::ground_state(p).vector;
}

// k-spin Dicke basis vector |k, a> in the 2^k computational basis.
Eigen::VectorXd dicke_basis(int k, int a) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(1 << k);
    const double amp = std::exp(-0.5 * lmg::log_binomial(k, a));
    for (int x = 0; x < (1 << k); ++x)
        if (std::popcount(static_cast<unsigned>(x)) == a) u[x] = amp;
    return u;
}

}  // namespace

TEST_CASE("GHZ reductions: diag(1/2, 0, ..., 0, 1/2)") {
    const auto v = ghz(6);
    for (int k = 1; k <= 5; ++k) {
        const auto rho = lmg::reduce(v, k);
        REQUIRE(rho.matrix.rows() == k + 1);
        for (int a = 0; a <= k; ++a) {
            for (int b = 0; b <= k; ++b) {
                const bool corner = (a == b) && (a == 0 || a == k);
                CHECK(std::abs(rho.matrix(a, b) - (corner ? 0.5 : 0.0)) <= 1e-15);
            }
        }
    }
}

TEST_CASE("|N=2, n_e=1> reduces to the maximally mixed qubit") {
    DickeVector v;
    v.n_spins = 2;
    v.amplitudes = Eigen::Vector3d(0.0, 1.0, 0.0);
    const auto rho = lmg::reduce(v, 1);
    CHECK(std::abs(rho.matrix(0, 0) - 0.5) <= 1e-15);
    CHECK(std::abs(rho.matrix(1, 1) - 0.5) <= 1e-15);
    CHECK(std::abs(rho.matrix(0, 1)) <= 1e-15);
}

TEST_CASE("random N = 8 state: reduce matches the explicit partial trace") {
    const auto v = random_dicke(8, 99u);
    const Eigen::VectorXd psi = lmg::oracle::embed_dicke(v);
    for (int k : {1, 3, 5, 7}) {
        const auto rho = lmg::reduce(v, k);
        // project the 2^k partial trace onto the block's Dicke basis
        const Eigen::MatrixXd full =
            lmg::oracle::partial_trace(psi, 8, (1u << k) - 1u);
        for (int a = 0; a <= k; ++a) {
            const Eigen::VectorXd ua = dicke_basis(k, a);
            for (int b = 0; b <= k; ++b) {
                const double want = ua.dot(full * dicke_basis(k, b));
                CHECK(std::abs(rho.matrix(a, b) - want) <= 1e-10);
            }
        }
        // the symmetric sector carries all the weight: traces agree
        CHECK(std::abs(rho.trace() - 1.0) <= 1e-10);
    }
}

TEST_CASE("reduction is exactly symmetric (mirrored fill)") {
    const auto v = ground(120, 0.8);
    const auto rho = lmg::reduce(v, 37);
    for (int a = 0; a <= 37; ++a)
        for (int b = a + 1; b <= 37; ++b)
            CHECK(rho.matrix(a, b) == rho.matrix(b, a));
}

TEST_CASE("Schmidt duality: rho_k and rho_{N-k} share their spectrum") {
    const auto v = random_dicke(30, 4u);
    const auto wk = lmg::symmetric_eigenvalues(lmg::reduce(v, 7).matrix);
    const auto wc = lmg::symmetric_eigenvalues(lmg::reduce(v, 23).matrix);
    // ascending; the smaller block's 8 values must appear atop the 24-list,
    // the remaining 16 vanish
    for (int i = 0; i < 16; ++i) CHECK(std::abs(wc[i]) <= 1e-12);
    for (int i = 0; i < 8; ++i) CHECK(std::abs(wk[i] - wc[16 + i]) <= 1e-12);
}

TEST_CASE("complement entropies agree to 1e-9 on a ground state, N = 40") {
    const auto v = ground(40, 1.0);
    for (int k = 1; k <= 39; ++k) {
        const double sk = lmg::von_neumann_entropy(lmg::reduce(v, k));
        const double sc = lmg::von_neumann_entropy(lmg::reduce(v, 40 - k));
        CHECK(std::abs(sk - sc) <= 1e-9);
    }
}

TEST_CASE("reductions of a ground state are PSD within the clamp window") {
    const auto v = ground(100, 0.95);
    for (int k : {1, 2, 25, 50, 99}) {
        const auto w = lmg::symmetric_eigenvalues(lmg::reduce(v, k).matrix);
        CHECK(w[0] >= -lmg::kPsdClamp);
        CHECK(std::abs(lmg::reduce(v, k).trace() - 1.0) <= 1e-10);
    }
}

TEST_CASE("k = N returns the pure-state projector exactly") {
    const auto v = random_dicke(12, 17u);
    const auto rho = lmg::reduce(v, 12);
    for (int a = 0; a <= 12; ++a)
        for (int b = 0; b <= 12; ++b)
            CHECK(rho.matrix(a, b) == v.amplitudes[a] * v.amplitudes[b]);
}

TEST_CASE("parallel and serial reductions are bitwise identical") {
    const auto v = random_dicke(200, 123u);
    for (int k : {1, 80, 199, 200}) {
        const auto a = lmg::reduce(v, k);
        const auto b = lmg::reduce_serial(v, k);
        REQUIRE(a.matrix.rows() == b.matrix.rows());
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j <= k; ++j) CHECK(a.matrix(i, j) == b.matrix(i, j));
    }
}

TEST_CASE("reduce rejects bad arguments") {
    const auto v = random_dicke(10, 5u);
    CHECK_THROWS_AS(lmg::reduce(v, 0), lmg::validation_error);
    CHECK_THROWS_AS(lmg::reduce(v, 11), lmg::validation_error);
    DickeVector unnorm = v;
    unnorm.amplitudes *= 1.5;
    CHECK_THROWS_AS(lmg::reduce(unnorm, 3), lmg::validation_error);
}
