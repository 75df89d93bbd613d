#include <cmath>
#include <random>

#include "doctest.h"
#include "lmg/binomial.hpp"
#include "lmg/hamiltonian.hpp"
#include "lmg/oracle.hpp"

using lmg::BandedHamiltonian;
using lmg::DickeVector;
using lmg::ModelParams;
using lmg::Parity;

namespace {

ModelParams params(int n, double gamma, double h, double lambda = 1.0) {
    ModelParams p;
    p.n_spins = n;
    p.gamma = gamma;
    p.field = h;
    p.coupling = lambda;
    return p;
}

}  // namespace

TEST_CASE("banded matrix elements, N = 2, by hand") {
    // J = 1, M = n_e - 1:
    //   diag = -(l/2)(1+g)(1 - M^2) - 2hM, offdiag = -(l/2)(1-g)
    const auto H = lmg::build_hamiltonian(params(2, 0.5, 0.3));
    CHECK(H.diagonal[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(H.diagonal[1] == doctest::Approx(-0.75).epsilon(1e-15));
    CHECK(H.diagonal[2] == doctest::Approx(-0.6).epsilon(1e-15));
    REQUIRE(H.second_offdiagonal.size() == 1);
    CHECK(H.second_offdiagonal[0] == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(H.max_abs() == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("gamma = 1 kills the second off-diagonal exactly") {
    const auto H = lmg::build_hamiltonian(params(4, 1.0, 0.7));
    for (int i = 0; i < H.second_offdiagonal.size(); ++i)
        CHECK(H.second_offdiagonal[i] == 0.0);
}

TEST_CASE("banded elements equal Dicke-basis projections of the 2^N matrix") {
    const auto p = params(4, 0.35, 0.6, 1.3);
    const auto H = lmg::build_hamiltonian(p);
    const Eigen::MatrixXd F = lmg::oracle::full_hamiltonian(p);
    std::vector<Eigen::VectorXd> dicke;
    for (int n = 0; n <= 4; ++n) {
        DickeVector v;
        v.n_spins = 4;
        v.amplitudes = Eigen::VectorXd::Unit(5, n);
        dicke.push_back(lmg::oracle::embed_dicke(v));
    }
    for (int m = 0; m <= 4; ++m) {
        for (int n = 0; n <= 4; ++n) {
            const double elem = dicke[m].dot(F * dicke[n]);
            double want = 0.0;
            if (m == n) want = H.diagonal[n];
            if (std::abs(m - n) == 2) want = H.second_offdiagonal[std::min(m, n)];
            CHECK(std::abs(elem - want) <= 1e-12);
        }
    }
}

TEST_CASE("apply() equals the dense banded matrix") {
    const auto H = lmg::build_hamiltonian(params(9, 0.25, 1.1));
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(10, 10);
    for (int i = 0; i < 10; ++i) dense(i, i) = H.diagonal[i];
    for (int i = 0; i < 8; ++i)
        dense(i, i + 2) = dense(i + 2, i) = H.second_offdiagonal[i];
    std::mt19937 rng(7u);
    std::normal_distribution<double> g;
    Eigen::VectorXd v(10);
    for (int i = 0; i < 10; ++i) v[i] = g(rng);
    const Eigen::VectorXd diff = H.apply(v) - dense * v;
    CHECK(diff.cwiseAbs().maxCoeff() <= 1e-14 * H.max_abs() * v.norm());
}

TEST_CASE("ground state N = 2, h = 0: the n_e = 1 Dicke state") {
    const auto gs = lmg::ground_state(params(2, 0.5, 0.0));
    CHECK(gs.energy == doctest::Approx(-0.75).epsilon(1e-14));
    CHECK(gs.parity == Parity::odd);
    CHECK(gs.vector.amplitudes[0] == 0.0);
    CHECK(gs.vector.amplitudes[1] == 1.0);
    CHECK(gs.vector.amplitudes[2] == 0.0);
}

TEST_CASE("ground state N = 2, strong field: polarized, even parity") {
    const auto gs = lmg::ground_state(params(2, 0.5, 10.0));
    CHECK(gs.parity == Parity::even);
    CHECK(gs.energy < -20.0);  // level repulsion pushes below the bare -2h
    CHECK(gs.energy == doctest::Approx(-20.0015624).epsilon(1e-7));
    CHECK(gs.vector.amplitudes[1] == 0.0);
    CHECK(std::abs(gs.vector.amplitudes[2]) > 0.9999);
    CHECK(gs.vector.amplitudes[2] > 0.0);  // sign convention
}

TEST_CASE("even-parity ground has exact zeros on odd n_e") {
    const auto gs = lmg::ground_state(params(40, 0.5, 0.9));
    REQUIRE(gs.parity == Parity::even);
    for (int n = 1; n <= 39; n += 2) CHECK(gs.vector.amplitudes[n] == 0.0);
    CHECK(gs.vector.norm_sq() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("gamma = 0, h = 0: ground is the x-basis cat state") {
    // H reduces to -(2 lambda/N)(Jx^2 - N/4); the even combination of the two
    // fully x-polarized states is an exact eigenstate:
    // P_n = sqrt(C(N,n)/2^{N-1}) on even n_e.
    const int N = 60;
    const auto gs = lmg::ground_state(params(N, 0.0, 0.0));
    Eigen::VectorXd cat = Eigen::VectorXd::Zero(N + 1);
    for (int n = 0; n <= N; n += 2)
        cat[n] = std::exp(0.5 * (lmg::log_binomial(N, n) - (N - 1) * std::log(2.0)));
    CHECK(cat.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
    const double fidelity = std::abs(cat.dot(gs.vector.amplitudes));
    CHECK(fidelity >= 1.0 - 1e-10);
}

TEST_CASE("ground state is deterministic bit for bit") {
    const auto a = lmg::ground_state(params(150, 0.5, 0.95));
    const auto b = lmg::ground_state(params(150, 0.5, 0.95));
    CHECK(a.energy == b.energy);
    REQUIRE(a.vector.amplitudes.size() == b.vector.amplitudes.size());
    for (int i = 0; i < a.vector.amplitudes.size(); ++i)
        CHECK(a.vector.amplitudes[i] == b.vector.amplitudes[i]);
}

TEST_CASE("recorded residual honours the solver bound") {
    const auto p = params(300, 0.5, 0.98);
    const auto gs = lmg::ground_state(p);
    const auto H = lmg::build_hamiltonian(p);
    CHECK(gs.eigensolve_residual <= 1e-9 * H.max_abs() * (p.n_spins + 1));
    // and the recorded number is the actual residual
    const Eigen::VectorXd r = H.apply(gs.vector.amplitudes) - gs.energy * gs.vector.amplitudes;
    CHECK(std::abs(r.norm() - gs.eigensolve_residual) <= 1e-15 + 1e-6 * gs.eigensolve_residual);
}

TEST_CASE("lowest eigenpair of a 2x2 tridiagonal block") {
    Eigen::VectorXd d(2), e(1);
    d << 2.0, -2.0;
    e << -0.25;
    Eigen::VectorXd v;
    const double w = lmg::lowest_tridiagonal_eigenpair(d, e, v);
    CHECK(w == doctest::Approx(-std::sqrt(4.0625)).epsilon(1e-14));
    CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("parity block spectra: sizes, order, gamma = 1 diagonal case") {
    const auto p = params(4, 1.0, 0.3);
    const auto H = lmg::build_hamiltonian(p);
    const Eigen::VectorXd we = lmg::parity_block_spectrum(H, Parity::even);
    const Eigen::VectorXd wo = lmg::parity_block_spectrum(H, Parity::odd);
    REQUIRE(we.size() == 3);
    REQUIRE(wo.size() == 2);
    for (int i = 1; i < we.size(); ++i) CHECK(we[i - 1] <= we[i]);
    // no off-diagonal at gamma = 1: eigenvalues are the diagonal entries
    std::vector<double> diag_even{H.diagonal[0], H.diagonal[2], H.diagonal[4]};
    std::sort(diag_even.begin(), diag_even.end());
    for (int i = 0; i < 3; ++i) CHECK(we[i] == doctest::Approx(diag_even[i]).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(lmg::ground_state(params(1, 0.5, 0.0)), lmg::validation_error);
    CHECK_THROWS_AS(lmg::ground_state(params(4, -0.1, 0.0)), lmg::validation_error);
    CHECK_THROWS_AS(lmg::ground_state(params(4, 1.1, 0.0)), lmg::validation_error);
    CHECK_THROWS_AS(lmg::ground_state(params(4, 0.5, -0.2)), lmg::validation_error);
    CHECK_THROWS_AS(lmg::ground_state(params(4, 0.5, 0.0, 0.0)), lmg::validation_error);
    CHECK_THROWS_AS(lmg::ground_state(params(4, 0.5, 0.0, -1.0)), lmg::validation_error);
}
