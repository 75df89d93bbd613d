#include "lmg/oracle.hpp"

#include <lapacke.h>

#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "lmg/binomial.hpp"
#include "lmg/entropy.hpp"

namespace lmg::oracle {

Eigen::MatrixXd full_hamiltonian(const ModelParams& p) {
    validate(p);
    const int N = p.n_spins;
    if (N > 12) throw validation_error("oracle: full Hamiltonian capped at N = 12");
    const int dim = 1 << N;
    const double lam = p.coupling, g = p.gamma, h = p.field;

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (int x = 0; x < dim; ++x) {
        // field term: sz = diag(-1, +1), bit value 1 = excited
        const int ne = std::popcount(static_cast<unsigned>(x));
        H(x, x) = -h * (2.0 * ne - N);
        for (int i = 0; i < N; ++i) {
            for (int j = i + 1; j < N; ++j) {
                const int y = x ^ (1 << i) ^ (1 << j);
                const bool equal = ((x >> i) & 1) == ((x >> j) & 1);
                // sx sx gives -(lam/N); sy sy adds -(lam gamma/N) with the
                // opposite sign on equal bits (raising-raising picks up i^2)
                H(y, x) += equal ? -(lam / N) * (1.0 - g) : -(lam / N) * (1.0 + g);
            }
        }
    }
    return H;
}

namespace {

// Two lowest eigenpairs of a dense symmetric matrix.
void lowest_two(const Eigen::MatrixXd& m, double w[2], Eigen::VectorXd v[2]) {
    init_numeric_runtime();
    const lapack_int n = static_cast<lapack_int>(m.rows());
    Eigen::MatrixXd a = m;
    Eigen::MatrixXd z(n, 2);
    Eigen::VectorXd wv(n);
    lapack_int found = 0;
    std::vector<lapack_int> isuppz(4);
    lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, a.data(), n, 0.0, 0.0,
                                     1, 2, 0.0, &found, wv.data(), z.data(), n, isuppz.data());
    if (info != 0 || found != 2)
        throw compute_error("dsyevr failed (info=" + std::to_string(info) + ")");
    w[0] = wv[0];
    w[1] = wv[1];
    v[0] = z.col(0);
    v[1] = z.col(1);
}

void fix_sign(Eigen::VectorXd& v) {
    int imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
}

}  // namespace

FullState full_ground_state(const ModelParams& p) {
    const Eigen::MatrixXd H = full_hamiltonian(p);
    const int N = p.n_spins;
    const int dim = 1 << N;

    double w[2];
    Eigen::VectorXd v[2];
    lowest_two(H, w, v);

    FullState out;
    out.n_spins = N;
    out.energy = w[0];

    const double gap = w[1] - w[0];
    if (gap >= 1e-8 * std::max(1.0, std::abs(w[0]))) {
        out.amplitudes = v[0];
    } else {
        // Quasi-degenerate doublet: the solver returns an arbitrary mix, so
        // rotate onto eigenstates of the parity (-1)^{n_e} and keep the even
        // one (the banded solver's tie-break).
        Eigen::VectorXd pi(dim);
        for (int x = 0; x < dim; ++x)
            pi[x] = (std::popcount(static_cast<unsigned>(x)) % 2 == 0) ? 1.0 : -1.0;
        double P[2][2];
        for (int a = 0; a < 2; ++a)
            for (int b = a; b < 2; ++b)
                P[b][a] = P[a][b] = v[a].dot(pi.cwiseProduct(v[b]).matrix());
        // closed-form 2x2 symmetric eigenvectors; want the +1 (even) branch
        const double tr = P[0][0] + P[1][1];
        const double det = P[0][0] * P[1][1] - P[0][1] * P[0][1];
        const double disc = std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
        const double lam_hi = tr / 2.0 + disc;
        double c0, c1;
        if (std::abs(P[0][1]) > 1e-14) {
            c0 = P[0][1];
            c1 = lam_hi - P[0][0];
        } else {  // already parity eigenstates
            const bool first_even = P[0][0] >= P[1][1];
            c0 = first_even ? 1.0 : 0.0;
            c1 = first_even ? 0.0 : 1.0;
        }
        out.amplitudes = c0 * v[0] + c1 * v[1];
        out.amplitudes.normalize();
    }
    fix_sign(out.amplitudes);
    return out;
}

Eigen::VectorXd embed_dicke(const DickeVector& v) {
    const int N = v.n_spins;
    if (N > 12) throw validation_error("oracle: embedding capped at N = 12");
    const int dim = 1 << N;
    Eigen::VectorXd out(dim);
    for (int x = 0; x < dim; ++x) {
        const int ne = std::popcount(static_cast<unsigned>(x));
        out[x] = v.amplitudes[ne] * std::exp(-0.5 * log_binomial(N, ne));
    }
    return out;
}

Eigen::MatrixXd partial_trace(const Eigen::VectorXd& psi, int n_spins, std::uint32_t keep_mask) {
    const int dim = 1 << n_spins;
    if (psi.size() != dim) throw validation_error("partial_trace: psi size != 2^N");
    if (keep_mask == 0 || keep_mask >= (1u << n_spins))
        throw validation_error("partial_trace: bad keep mask");

    std::vector<int> kb, eb;
    for (int i = 0; i < n_spins; ++i) ((keep_mask >> i) & 1u ? kb : eb).push_back(i);
    const int dk = 1 << kb.size(), de = 1 << eb.size();

    auto scatter = [](std::uint32_t bits, const std::vector<int>& pos) {
        std::uint32_t x = 0;
        for (size_t t = 0; t < pos.size(); ++t)
            if ((bits >> t) & 1u) x |= 1u << pos[t];
        return x;
    };
    std::vector<std::uint32_t> kidx(dk);
    for (int a = 0; a < dk; ++a) kidx[a] = scatter(a, kb);

    Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dk, dk);
    for (int r = 0; r < de; ++r) {
        const std::uint32_t xr = scatter(r, eb);
        for (int a = 0; a < dk; ++a) {
            const double pa = psi[kidx[a] | xr];
            if (pa == 0.0) continue;
            for (int b = 0; b < dk; ++b) rho(a, b) += pa * psi[kidx[b] | xr];
        }
    }
    return rho;
}

double entropy_bits(const Eigen::MatrixXd& rho) {
    if (std::abs(rho.trace() - 1.0) > 1e-8)
        throw validation_error("oracle entropy: trace deviates from 1");
    const Eigen::VectorXd w = symmetric_eigenvalues(rho);
    double s = 0.0;
    for (int i = 0; i < w.size(); ++i) {
        double lam = w[i];
        if (lam < 0.0) {
            if (lam < -kPsdClamp)
                throw compute_error("oracle entropy: eigenvalue below PSD window");
            lam = 0.0;
        }
        if (lam > 0.0) s -= lam * std::log2(lam);
    }
    return s < 0.0 ? 0.0 : s;
}

namespace {

std::uint32_t block_mask(int first, int count) {
    std::uint32_t m = 0;
    for (int i = 0; i < count; ++i) m |= 1u << (first + i);
    return m;
}

}  // namespace

double correlations_above_k(const FullState& s, int k) {
    const int N = s.n_spins;
    if (N > 10) throw validation_error("oracle GMC capped at N = 10");
    if (k < 1 || k > N) throw validation_error("oracle: k outside 1..N");

    const int m = N / k, rem = N % k;
    double sum = 0.0;
    for (int j = 0; j < m; ++j)
        sum += entropy_bits(partial_trace(s.amplitudes, N, block_mask(j * k, k)));
    if (rem != 0) sum += entropy_bits(partial_trace(s.amplitudes, N, block_mask(m * k, rem)));
    sum -= entropy_bits(partial_trace(s.amplitudes, N, block_mask(0, N)));
    return sum;
}

double genuine_k(const FullState& s, int k) {
    if (k < 2 || k > s.n_spins) throw validation_error("oracle: genuine k outside 2..N");
    return correlations_above_k(s, k - 1) - correlations_above_k(s, k);
}

std::vector<double> correlations_above_all(const FullState& s) {
    const int N = s.n_spins;
    if (N > 10) throw validation_error("oracle GMC capped at N = 10");
    const double s_full = entropy_bits(partial_trace(s.amplitudes, N, block_mask(0, N)));
    std::vector<double> out(N);
    for (int k = 1; k <= N; ++k) {
        const int m = N / k, rem = N % k;
        double sum = 0.0;
        for (int j = 0; j < m; ++j)
            sum += entropy_bits(partial_trace(s.amplitudes, N, block_mask(j * k, k)));
        if (rem != 0) sum += entropy_bits(partial_trace(s.amplitudes, N, block_mask(m * k, rem)));
        out[k - 1] = sum - s_full;
    }
    return out;
}

}  // namespace lmg::oracle
