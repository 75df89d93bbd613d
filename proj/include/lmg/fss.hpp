#pragma once
#include <string>
#include <vector>

#include "lmg/scan.hpp"

namespace lmg {

// Correlation order under study: a fixed k, or one growing with the system
// as k = N/m (m = 1 is the full system).
struct KSpec {
    bool fractional = false;
    int k = 1;  // fixed order, when !fractional
    int m = 1;  // divisor in k = N/m, when fractional

    // "1".."5"... fixed, "N", "N/2", "N/4" (any positive integer divisor).
    static KSpec parse(const std::string& s);
    std::string str() const;
    int order_for(int n_spins) const;
    bool operator==(const KSpec&) const = default;
};

// System sizes the order is defined on without floor/remainder artifacts:
//   fixed k >= 2 : N mod lcm(k-1, k) = 0  (both S^{k-1->N} and S^{k->N}
//                  split into equal clusters)
//   k = 1        : even N (no constraint exists; stride keeps runs cheap)
//   k = N/m      : N mod 2m = 0 (k and its paired order k-adjacent stay
//                  integral)
// Throws validation_error when n_max < 12 or the set comes out empty.
std::vector<int> admissible_sizes(const KSpec& spec, int n_max);

struct FssFit {
    KSpec k_spec;
    std::vector<int> sizes;                  // points that entered the fit
    std::vector<double> h_min_values;
    std::vector<double> correlation_at_min;  // S^k(h_min)
    double alpha = 0.0;                      // log-log slope
    double prefactor_A = 0.0;                // exp(intercept)
    double alpha_stderr = 0.0;               // OLS standard error of the slope
    int excluded_nonpositive = 0;            // points dropped (log undefined)
};

// Ordinary least squares of ln S on ln N for S(h_min) = A N^alpha.
// Non-positive S values are excluded with a stderr warning; at least four
// surviving points are required.
FssFit fss_fit(const std::vector<std::pair<double, double>>& n_and_s);

// Drift of h_min(N) toward the critical point, fitted two ways since the
// asymptotic form is not known a priori; both are reported.
struct TrendPowerLaw {
    double h_c = 0.0, c = 0.0, e = 0.0;  // h_min = h_c - c N^{-e}
    double rms = 0.0;
};
struct TrendInverseLog {
    double a = 0.0, b = 0.0;  // h_min = a + b / ln N
    double rms = 0.0;
};
struct HminTrend {
    TrendPowerLaw powerlaw;
    TrendInverseLog inverselog;
};

// Needs >= 4 (N, h_min) points.  The power-law exponent is found by a
// golden-section scan over e with (h_c, c) solved linearly at each e.
HminTrend h_min_trend(const std::vector<std::pair<double, double>>& n_and_hmin);

// Whole pipeline for one order: admissible sizes, one sweep per size, the
// derivative minimum per size, then the exponent fit and h_min trends.
struct FssConfig {
    KSpec k_spec;
    double gamma = 0.5;
    double coupling = 1.0;
    int n_max = 498;
    int drop_below = 24;   // exponents stabilize once the smallest sizes go
    double h_start = 0.5;  // derivative window; the dip sits left of h = 1
    double h_stop = 1.2;
    double h_step = 0.005;
    int size_stride = 1;   // every stride-th admissible size (run economy)
    SolveCache* cache = nullptr;
    bool verbose = false;  // per-size progress on stderr
};

struct FssPoint {
    int n = 0;
    double h_min = 0.0, s_at_min = 0.0, depth = 0.0;
};

struct FssReport {
    KSpec k_spec;
    std::vector<int> sizes;       // admitted (post-drop, post-stride)
    std::vector<FssPoint> points; // one per admitted size
    FssFit fit;
    HminTrend trend;
};

FssReport run_fss(const FssConfig& cfg);

}  // namespace lmg
