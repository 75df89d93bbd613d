#include "lmg/hamiltonian.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>
#include <vector>

namespace lmg {

double BandedHamiltonian::max_abs() const {
    double m = diagonal.cwiseAbs().maxCoeff();
    if (second_offdiagonal.size() > 0)
        m = std::max(m, second_offdiagonal.cwiseAbs().maxCoeff());
    return m;
}

Eigen::VectorXd BandedHamiltonian::apply(const Eigen::VectorXd& v) const {
    const int n = n_spins + 1;
    Eigen::VectorXd r(n);
    for (int i = 0; i < n; ++i) {
        double s = diagonal[i] * v[i];
        if (i >= 2) s += second_offdiagonal[i - 2] * v[i - 2];
        if (i + 2 < n) s += second_offdiagonal[i] * v[i + 2];
        r[i] = s;
    }
    return r;
}

BandedHamiltonian build_hamiltonian(const ModelParams& p) {
    validate(p);
    const int N = p.n_spins;
    const double J = 0.5 * N;
    const double lam = p.coupling, g = p.gamma, h = p.field;

    BandedHamiltonian H;
    H.n_spins = N;
    H.diagonal.resize(N + 1);
    H.second_offdiagonal.resize(N - 1);

    auto cplus = [J](double M) { return std::sqrt(J * (J + 1.0) - M * (M + 1.0)); };

    for (int ne = 0; ne <= N; ++ne) {
        const double M = ne - J;
        H.diagonal[ne] = -(lam / N) * (1.0 + g) * (J * (J + 1.0) - M * M - 0.5 * N) - 2.0 * h * M;
    }
    for (int ne = 0; ne + 2 <= N; ++ne) {
        const double M = ne - J;
        H.second_offdiagonal[ne] = -(lam / (2.0 * N)) * (1.0 - g) * cplus(M) * cplus(M + 1.0);
    }
    return H;
}

double lowest_tridiagonal_eigenpair(Eigen::VectorXd diag, Eigen::VectorXd off,
                                    Eigen::VectorXd& vec_out) {
    init_numeric_runtime();
    const lapack_int n = static_cast<lapack_int>(diag.size());
    vec_out.resize(n);
    if (n == 1) {
        vec_out[0] = 1.0;
        return diag[0];
    }
    Eigen::VectorXd w(n);
    lapack_int m = 0;
    std::vector<lapack_int> isuppz(2);
    lapack_int info =
        LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1, 1,
                       0.0, &m, w.data(), vec_out.data(), n, isuppz.data());
    if (info != 0 || m != 1)
        throw compute_error("dstevr failed on a " + std::to_string(n) +
                            "-dim tridiagonal block (info=" + std::to_string(info) + ")");
    return w[0];
}

// Same-parity Dicke indices are consecutive in the block, and Delta n_e = 2
// couplings become the block's first off-diagonal.
static void extract_parity_block(const BandedHamiltonian& H, int par, Eigen::VectorXd& d,
                                 Eigen::VectorXd& e) {
    const int N = H.n_spins;
    const int n = (N - par) / 2 + 1;
    d.resize(n);
    e.resize(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) d[i] = H.diagonal[par + 2 * i];
    for (int i = 0; i + 1 < n; ++i) e[i] = H.second_offdiagonal[par + 2 * i];
}

Eigen::VectorXd parity_block_spectrum(const BandedHamiltonian& H, Parity parity) {
    init_numeric_runtime();
    Eigen::VectorXd d, e;
    extract_parity_block(H, parity == Parity::even ? 0 : 1, d, e);
    const lapack_int n = static_cast<lapack_int>(d.size());
    if (n == 1) return d;
    lapack_int info = LAPACKE_dsterf(n, d.data(), e.data());
    if (info != 0) throw compute_error("dsterf failed (info=" + std::to_string(info) + ")");
    return d;
}

GroundState ground_state(const ModelParams& p) {
    const BandedHamiltonian H = build_hamiltonian(p);
    const int N = p.n_spins;

    double energy[2];
    Eigen::VectorXd blockvec[2];
    for (int par = 0; par < 2; ++par) {
        Eigen::VectorXd d, e;
        extract_parity_block(H, par, d, e);
        energy[par] = lowest_tridiagonal_eigenpair(std::move(d), std::move(e), blockvec[par]);
    }

    // Even block wins ties: in the broken phase the doublet splitting is
    // exponentially small and an arbitrary winner would flip run-to-run.
    const double scale = std::max(std::abs(energy[0]), std::abs(energy[1]));
    int pick = (energy[1] < energy[0] && energy[0] - energy[1] >= 1e-12 * scale) ? 1 : 0;

    GroundState gs;
    gs.params = p;
    gs.energy = energy[pick];
    gs.parity = pick == 0 ? Parity::even : Parity::odd;
    gs.vector.n_spins = N;
    gs.vector.amplitudes = Eigen::VectorXd::Zero(N + 1);
    for (int i = 0; i < blockvec[pick].size(); ++i)
        gs.vector.amplitudes[pick + 2 * i] = blockvec[pick][i];

    int imax = 0;
    gs.vector.amplitudes.cwiseAbs().maxCoeff(&imax);
    if (gs.vector.amplitudes[imax] < 0.0) gs.vector.amplitudes = -gs.vector.amplitudes;

    gs.eigensolve_residual = (H.apply(gs.vector.amplitudes) - gs.energy * gs.vector.amplitudes).norm();
    const double limit = 1e-9 * H.max_abs() * (N + 1);
    if (!(gs.eigensolve_residual <= limit))
        throw compute_error("eigensolve residual " + std::to_string(gs.eigensolve_residual) +
                            " exceeds " + std::to_string(limit) + " at N=" + std::to_string(N));
    return gs;
}

}  // namespace lmg
