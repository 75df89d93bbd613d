#include "lmg/fss.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "lmg/solver_cache.hpp"

namespace lmg {

KSpec KSpec::parse(const std::string& s) {
    KSpec out;
    if (!s.empty() && (s[0] == 'N' || s[0] == 'n')) {
        out.fractional = true;
        if (s.size() == 1) {
            out.m = 1;
        } else {
            if (s[1] != '/') throw validation_error("bad k spec '" + s + "' (use k, N, N/2, N/4)");
            try {
                size_t pos = 0;
                out.m = std::stoi(s.substr(2), &pos);
                if (pos != s.size() - 2) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw validation_error("bad k spec '" + s + "'");
            }
            if (out.m < 1) throw validation_error("k spec divisor must be >= 1");
        }
        return out;
    }
    try {
        size_t pos = 0;
        out.k = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw validation_error("bad k spec '" + s + "'");
    }
    if (out.k < 1) throw validation_error("fixed k must be >= 1");
    return out;
}

std::string KSpec::str() const {
    if (!fractional) return std::to_string(k);
    return m == 1 ? "N" : "N/" + std::to_string(m);
}

int KSpec::order_for(int n_spins) const { return fractional ? n_spins / m : k; }

std::vector<int> admissible_sizes(const KSpec& spec, int n_max) {
    if (n_max < 12) throw validation_error("admissible_sizes: n_max must be >= 12");
    int mod;
    if (spec.fractional) {
        mod = 2 * spec.m;
    } else if (spec.k == 1) {
        mod = 2;
    } else {
        mod = spec.k * (spec.k - 1);  // lcm(k-1, k): consecutive ints are coprime
    }
    std::vector<int> out;
    for (int n = mod; n <= n_max; n += mod) out.push_back(n);
    if (out.empty())
        throw validation_error("admissible_sizes: no N <= " + std::to_string(n_max) +
                               " for k=" + spec.str());
    return out;
}

namespace {

struct LineFit {
    double slope = 0.0, intercept = 0.0, slope_stderr = 0.0, ssr = 0.0;
};

LineFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    const double xbar = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xbar) * (x[i] - xbar);
        sxy += (x[i] - xbar) * (y[i] - ybar);
    }
    LineFit f;
    if (sxx == 0.0) {  // all x identical: zero-slope fit
        f.intercept = ybar;
    } else {
        f.slope = sxy / sxx;
        f.intercept = ybar - f.slope * xbar;
    }
    for (size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        f.ssr += r * r;
    }
    if (n > 2 && sxx > 0.0) f.slope_stderr = std::sqrt(f.ssr / (n - 2) / sxx);
    return f;
}

}  // namespace

FssFit fss_fit(const std::vector<std::pair<double, double>>& n_and_s) {
    FssFit fit;
    std::vector<double> lnN, lnS;
    for (const auto& [n, s] : n_and_s) {
        if (!(s > 0.0)) {
            ++fit.excluded_nonpositive;
            continue;
        }
        lnN.push_back(std::log(n));
        lnS.push_back(std::log(s));
        fit.sizes.push_back(static_cast<int>(n));
        fit.correlation_at_min.push_back(s);
    }
    if (fit.excluded_nonpositive > 0)
        std::fprintf(stderr, "warning: excluded %d non-positive correlation value(s) from the fit\n",
                     fit.excluded_nonpositive);
    if (lnN.size() < 4)
        throw validation_error("fss_fit: need >= 4 positive points, have " +
                               std::to_string(lnN.size()));
    const LineFit f = ols(lnN, lnS);
    fit.alpha = f.slope;
    fit.prefactor_A = std::exp(f.intercept);
    fit.alpha_stderr = f.slope_stderr;
    return fit;
}

namespace {

// SSR of h_min ~ h_c - c N^{-e} with (h_c, c) optimal for this e.
double power_trend_ssr(const std::vector<std::pair<double, double>>& pts, double e,
                       double* hc_out = nullptr, double* c_out = nullptr) {
    std::vector<double> x, y;
    x.reserve(pts.size());
    y.reserve(pts.size());
    for (const auto& [n, hmin] : pts) {
        x.push_back(-std::pow(n, -e));
        y.push_back(hmin);
    }
    const LineFit f = ols(x, y);
    if (hc_out) *hc_out = f.intercept;
    if (c_out) *c_out = f.slope;
    return f.ssr;
}

}  // namespace

HminTrend h_min_trend(const std::vector<std::pair<double, double>>& n_and_hmin) {
    if (n_and_hmin.size() < 4)
        throw validation_error("h_min_trend: need >= 4 points, have " +
                               std::to_string(n_and_hmin.size()));
    const size_t n = n_and_hmin.size();
    HminTrend out;

    // Exponent by golden-section search on the profiled SSR; the landscape
    // is unimodal in practice and the bracket covers any plausible drift.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.02, hi = 5.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = power_trend_ssr(n_and_hmin, x1), f2 = power_trend_ssr(n_and_hmin, x2);
    for (int it = 0; it < 120; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = power_trend_ssr(n_and_hmin, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = power_trend_ssr(n_and_hmin, x2);
        }
    }
    out.powerlaw.e = 0.5 * (lo + hi);
    const double ssr_p =
        power_trend_ssr(n_and_hmin, out.powerlaw.e, &out.powerlaw.h_c, &out.powerlaw.c);
    out.powerlaw.rms = std::sqrt(ssr_p / n);

    std::vector<double> x, y;
    for (const auto& [nn, hmin] : n_and_hmin) {
        x.push_back(1.0 / std::log(nn));
        y.push_back(hmin);
    }
    const LineFit f = ols(x, y);
    out.inverselog.a = f.intercept;
    out.inverselog.b = f.slope;
    out.inverselog.rms = std::sqrt(f.ssr / n);
    return out;
}

FssReport run_fss(const FssConfig& cfg) {
    std::vector<int> sizes;
    {
        const std::vector<int> all = admissible_sizes(cfg.k_spec, cfg.n_max);
        std::vector<int> kept;
        for (int n : all)
            if (n >= cfg.drop_below) kept.push_back(n);
        const int stride = std::max(cfg.size_stride, 1);
        for (size_t i = 0; i < kept.size(); i += stride) sizes.push_back(kept[i]);
    }
    if (sizes.size() < 4)
        throw validation_error("fss: only " + std::to_string(sizes.size()) +
                               " admissible size(s) for k=" + cfg.k_spec.str() +
                               " with n_max=" + std::to_string(cfg.n_max) + ", drop_below=" +
                               std::to_string(cfg.drop_below) + "; need >= 4");

    const std::vector<double> grid = uniform_grid(cfg.h_start, cfg.h_stop, cfg.h_step);
    FssReport rep;
    rep.k_spec = cfg.k_spec;
    rep.sizes = sizes;

    ModelParams tmpl;
    tmpl.gamma = cfg.gamma;
    tmpl.coupling = cfg.coupling;
    for (int n : sizes) {
        tmpl.n_spins = n;
        const int order = cfg.k_spec.order_for(n);
        std::vector<SweepCurve> curves = sweep(tmpl, {order}, grid, cfg.cache);
        differentiate(curves[0]);
        const DerivativeMin m = locate_h_min(curves[0]);
        rep.points.push_back({n, m.h_min, m.s_at_min, m.depth});
        if (cfg.verbose)
            std::fprintf(stderr, "  k=%s N=%d  h_min=%.6f  S(h_min)=%.9g\n",
                         cfg.k_spec.str().c_str(), n, m.h_min, m.s_at_min);
    }

    std::vector<std::pair<double, double>> ns, nh;
    for (const FssPoint& p : rep.points) {
        ns.emplace_back(p.n, p.s_at_min);
        nh.emplace_back(p.n, p.h_min);
    }
    rep.fit = fss_fit(ns);
    rep.fit.k_spec = cfg.k_spec;
    rep.fit.h_min_values.clear();
    for (int n : rep.fit.sizes)  // align with the points the fit kept
        for (const FssPoint& p : rep.points)
            if (p.n == n) {
                rep.fit.h_min_values.push_back(p.h_min);
                break;
            }
    rep.trend = h_min_trend(nh);
    return rep;
}

}  // namespace lmg
