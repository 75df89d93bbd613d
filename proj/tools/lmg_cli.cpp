// lmg — ground states, correlation sweeps and finite-size scaling for the
// anisotropic LMG model on the command line.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lmg/fss.hpp"
#include "lmg/io_util.hpp"
#include "lmg/oracle.hpp"
#include "lmg/scan.hpp"
#include "lmg/solver_cache.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using lmg::compute_error;
using lmg::validation_error;

struct HRange {
    double start = 0.0, stop = 0.0, step = 0.0;
};

HRange parse_range(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3)
        throw validation_error("range must be start:stop:step, got '" + s + "'");
    return {lmg::io::parse_double(parts[0]), lmg::io::parse_double(parts[1]),
            lmg::io::parse_double(parts[2])};
}

std::vector<int> parse_k_list(const std::string& s) {
    std::vector<int> ks;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw validation_error("empty entry in k list '" + s + "'");
        size_t pos = 0;
        int k;
        try {
            k = std::stoi(cur, &pos);
        } catch (const std::exception&) {
            throw validation_error("bad k value '" + cur + "'");
        }
        if (pos != cur.size()) throw validation_error("bad k value '" + cur + "'");
        ks.push_back(k);
        cur.clear();
    };
    for (char c : s) {
        if (c == ',')
            flush();
        else
            cur += c;
    }
    flush();
    return ks;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw validation_error("cannot open for write: " + path);
    f << text;
    if (!f.good()) throw compute_error("short write: " + path);
}

std::string curve_name(int k) { return k == 1 ? "S_total" : "S_k" + std::to_string(k); }

// ---------------------------------------------------------------- solve ---

int cmd_solve(int n, double gamma, double h, double lambda, const std::string& out) {
    lmg::ModelParams p;
    p.n_spins = n;
    p.gamma = gamma;
    p.field = h;
    p.coupling = lambda;
    const lmg::GroundState gs = lmg::ground_state(p);
    write_text(out, lmg::format_ground_record(gs));
    return 0;
}

// ---------------------------------------------------------------- sweep ---

int cmd_sweep(int n, double gamma, double lambda, const std::string& k_csv,
              const std::string& h_range, bool with_derivative, const std::string& out,
              const std::string& svg, const std::string& cache_flag) {
    const std::vector<int> k_list = parse_k_list(k_csv);
    const HRange r = parse_range(h_range);
    const std::vector<double> grid = lmg::uniform_grid(r.start, r.stop, r.step);

    lmg::ModelParams tmpl;
    tmpl.n_spins = n;
    tmpl.gamma = gamma;
    tmpl.coupling = lambda;

    const std::string cache_dir = lmg::resolve_cache_dir(cache_flag, "");
    std::optional<lmg::SolveCache> cache;
    if (!cache_dir.empty()) cache.emplace(cache_dir);

    std::vector<lmg::SweepCurve> curves =
        lmg::sweep(tmpl, k_list, grid, cache ? &*cache : nullptr);
    if (with_derivative)
        for (auto& c : curves) lmg::differentiate(c);

    std::vector<std::string> header{"h"};
    for (const auto& c : curves) header.push_back(curve_name(c.k));
    if (with_derivative)
        for (const auto& c : curves) header.push_back("d" + curve_name(c.k) + "_dh");

    std::vector<std::vector<std::string>> rows(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        rows[i].push_back(lmg::io::fmt17(grid[i]));
        for (const auto& c : curves) rows[i].push_back(lmg::io::fmt17(c.values[i]));
        if (with_derivative)
            for (const auto& c : curves) rows[i].push_back(lmg::io::fmt17(c.derivative[i]));
    }
    std::ostringstream csv;
    lmg::io::write_csv(csv, header, rows);
    write_text(out, csv.str());

    if (!svg.empty()) {
        std::vector<lmg::io::Series> series;
        for (const auto& c : curves) series.push_back({curve_name(c.k), grid, c.values});
        lmg::io::write_svg(svg, "correlations vs field, N = " + std::to_string(n), "h",
                           "S", series);
    }
    if (cache)
        std::cerr << "cache: " << cache->hits() << " hits, " << cache->misses()
                  << " misses (" << cache->dir().string() << ")\n";
    return 0;
}

// ------------------------------------------------------------- spectrum ---

int cmd_spectrum(int n, double gamma, double h, double lambda, bool divisors_only,
                 const std::string& out, const std::string& svg) {
    lmg::ModelParams p;
    p.n_spins = n;
    p.gamma = gamma;
    p.field = h;
    p.coupling = lambda;
    const lmg::GroundState gs = lmg::ground_state(p);
    const lmg::GmcSpectrum spec = lmg::gmc_spectrum(gs.vector);

    std::vector<std::vector<std::string>> rows;
    std::vector<double> xs, ys;
    for (int k = 1; k <= n; ++k) {
        if (divisors_only && n % k != 0) continue;
        rows.push_back({std::to_string(k), lmg::io::fmt17(spec.above(k)),
                        k >= 2 ? lmg::io::fmt17(spec.genuine_order(k)) : "nan"});
        xs.push_back(k);
        ys.push_back(spec.above(k));
    }
    std::ostringstream csv;
    lmg::io::write_csv(csv, {"k", "S_above_k", "S_genuine_k"}, rows);
    write_text(out, csv.str());

    if (!svg.empty())
        lmg::io::write_svg(svg, "correlation hierarchy, N = " + std::to_string(n) +
                                    ", h = " + lmg::io::fmt17(h),
                           "k", "S_above_k", {{"S_above_k", xs, ys}});
    return 0;
}

// ------------------------------------------------------------------ fss ---

int cmd_fss(const std::string& k_spec, int max_n, int drop_below, double gamma,
            double lambda, const std::string& window, int stride, const std::string& out,
            const std::string& points_csv, const std::string& svg, bool no_cache,
            const std::string& cache_flag, bool verbose) {
    lmg::FssConfig cfg;
    cfg.k_spec = lmg::KSpec::parse(k_spec);
    cfg.gamma = gamma;
    cfg.coupling = lambda;
    cfg.n_max = max_n;
    cfg.drop_below = drop_below;
    const HRange r = parse_range(window);
    cfg.h_start = r.start;
    cfg.h_stop = r.stop;
    cfg.h_step = r.step;
    cfg.size_stride = stride;
    cfg.verbose = verbose;

    std::optional<lmg::SolveCache> cache;
    if (!no_cache) {
        cache.emplace(lmg::resolve_cache_dir(cache_flag, "lmg-cache"));
        cfg.cache = &*cache;
    }

    const lmg::FssReport rep = lmg::run_fss(cfg);

    nlohmann::json j;
    j["k_spec"] = rep.k_spec.str();
    j["sizes"] = rep.sizes;
    std::vector<double> hmins, smins;
    for (const auto& pt : rep.points) {
        hmins.push_back(pt.h_min);
        smins.push_back(pt.s_at_min);
    }
    j["h_min"] = hmins;
    j["s_at_min"] = smins;
    j["alpha"] = rep.fit.alpha;
    j["prefactor"] = rep.fit.prefactor_A;
    j["alpha_stderr"] = rep.fit.alpha_stderr;
    j["hmin_fit_powerlaw"] = {{"h_c", rep.trend.powerlaw.h_c},
                              {"c", rep.trend.powerlaw.c},
                              {"e", rep.trend.powerlaw.e},
                              {"rms", rep.trend.powerlaw.rms}};
    j["hmin_fit_inverselog"] = {{"a", rep.trend.inverselog.a},
                                {"b", rep.trend.inverselog.b},
                                {"rms", rep.trend.inverselog.rms}};
    write_text(out, j.dump(2) + "\n");

    if (!points_csv.empty()) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& pt : rep.points)
            rows.push_back({std::to_string(pt.n), lmg::io::fmt17(pt.h_min),
                            lmg::io::fmt17(pt.s_at_min), lmg::io::fmt17(pt.depth)});
        std::ostringstream csv;
        lmg::io::write_csv(csv, {"N", "h_min", "s_at_min", "depth"}, rows);
        write_text(points_csv, csv.str());
    }
    if (!svg.empty()) {
        std::vector<double> xs(rep.sizes.begin(), rep.sizes.end());
        lmg::io::write_svg(svg, "h_min drift, k = " + rep.k_spec.str(), "N", "h_min",
                           {{"h_min", xs, hmins}});
    }
    if (cache)
        std::cerr << "cache: " << cache->hits() << " hits, " << cache->misses()
                  << " misses (" << cache->dir().string() << ")\n";
    return 0;
}

// --------------------------------------------------------- oracle-check ---

int cmd_oracle_check(int max_n, bool energy_only, bool inject) {
    if (max_n < 2 || max_n > 12)
        throw validation_error("oracle-check: --max-n must be in 2..12");
    if (max_n > 10 && !energy_only)
        throw validation_error(
            "oracle-check: GMC comparison is capped at N = 10; pass --energy-only above");

    const double gammas[] = {0.0, 0.5, 1.0};
    const double fields[] = {0.0, 0.5, 1.0, 1.5, 2.0};
    int cases = 0, failures = 0;
    bool injected = false;

    for (int n = 2; n <= max_n; ++n) {
        for (double g : gammas) {
            for (double h : fields) {
                ++cases;
                lmg::ModelParams p;
                p.n_spins = n;
                p.gamma = g;
                p.field = h;
                char where[96];
                std::snprintf(where, sizeof where, "N=%d gamma=%.1f h=%.1f", n, g, h);

                const lmg::GroundState gs = lmg::ground_state(p);
                const lmg::oracle::FullState full = lmg::oracle::full_ground_state(p);
                if (std::abs(gs.energy - full.energy) > 1e-9) {
                    ++failures;
                    std::printf("FAIL %s energy: banded %.12f oracle %.12f\n", where,
                                gs.energy, full.energy);
                    continue;
                }
                if (energy_only || n > 10) continue;

                lmg::GmcSpectrum spec = lmg::gmc_spectrum(gs.vector);
                if (inject && !injected && n == 4 && g == 0.5 && h == 0.5) {
                    spec.above_k[1] += 1e-6;  // test hook: negative control
                    injected = true;
                }
                const std::vector<double> above = lmg::oracle::correlations_above_all(full);
                for (int k = 1; k <= n; ++k) {
                    if (std::abs(spec.above(k) - above[k - 1]) > 1e-8) {
                        ++failures;
                        std::printf("FAIL %s S^{%d->N}: banded %.12f oracle %.12f\n", where,
                                    k, spec.above(k), above[k - 1]);
                    }
                }
                for (int k = 2; k <= n; ++k) {
                    const double oracle_gen = above[k - 2] - above[k - 1];
                    if (std::abs(spec.genuine_order(k) - oracle_gen) > 1e-8) {
                        ++failures;
                        std::printf("FAIL %s S^%d: banded %.12f oracle %.12f\n", where, k,
                                    spec.genuine_order(k), oracle_gen);
                    }
                }
            }
        }
    }
    std::printf("oracle-check: %d cases, %d failures\n", cases, failures);
    return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"genuine multipartite correlations in the LMG ground state"};
    // long-only help: -h is taken by the transverse field
    app.set_help_flag("--help", "print help and exit");
    app.set_config("--config", "", "key = value file merged under explicit flags");
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "cap OpenMP threads (default: all cores)");

    auto subcmd = [&app](const char* name, const char* desc) {
        CLI::App* sc = app.add_subcommand(name, desc);
        sc->set_help_flag("--help", "print help and exit");
        return sc;
    };

    // solve
    auto* solve = subcmd("solve", "one ground state, printed as a record");
    int s_n = 2;
    double s_gamma = 0.5, s_h = 0.0, s_lambda = 1.0;
    std::string s_out;
    solve->add_option("--n", s_n, "number of spins")->required();
    solve->add_option("--gamma", s_gamma, "anisotropy");
    solve->add_option("--h", s_h, "transverse field");
    solve->add_option("--lambda", s_lambda, "coupling");
    solve->add_option("--out", s_out, "output path (default stdout)");

    // sweep
    auto* sweep = subcmd("sweep", "correlation curves over a field range");
    int w_n = 2;
    double w_gamma = 0.5, w_lambda = 1.0;
    std::string w_k, w_h, w_out, w_svg, w_cache;
    bool w_deriv = false;
    sweep->add_option("--n", w_n, "number of spins")->required();
    sweep->add_option("--gamma", w_gamma, "anisotropy");
    sweep->add_option("--lambda", w_lambda, "coupling");
    sweep->add_option("--k", w_k, "comma-separated orders; 1 = total")->required();
    sweep->add_option("--h", w_h, "field range start:stop:step")->required();
    sweep->add_flag("--derivative", w_deriv, "append dS/dh columns");
    sweep->add_option("--out", w_out, "CSV path (default stdout)");
    sweep->add_option("--svg", w_svg, "also write an SVG line chart");
    sweep->add_option("--cache-dir", w_cache, "ground-state cache directory");

    // spectrum
    auto* spectrum = subcmd("spectrum", "S^{k->N} and S^k over k at fixed h");
    int p_n = 2;
    double p_gamma = 0.5, p_h = 0.0, p_lambda = 1.0;
    bool p_div = false;
    std::string p_out, p_svg;
    spectrum->add_option("--n", p_n, "number of spins")->required();
    spectrum->add_option("--gamma", p_gamma, "anisotropy");
    spectrum->add_option("--h", p_h, "transverse field")->required();
    spectrum->add_option("--lambda", p_lambda, "coupling");
    spectrum->add_flag("--divisors-only", p_div, "keep only k dividing N");
    spectrum->add_option("--out", p_out, "CSV path (default stdout)");
    spectrum->add_option("--svg", p_svg, "also write an SVG line chart");

    // fss
    auto* fss = subcmd("fss", "finite-size scaling of S^k(h_min)");
    std::string f_k, f_window = "0.5:1.2:0.005", f_out, f_points, f_svg, f_cache;
    int f_max_n = 498, f_drop = 24, f_stride = 1;
    double f_gamma = 0.5, f_lambda = 1.0;
    bool f_nocache = false, f_verbose = false;
    fss->add_option("--k", f_k, "order: fixed integer, or N, N/2, N/4")->required();
    fss->add_option("--max-n", f_max_n, "largest system size");
    fss->add_option("--drop-below", f_drop, "discard sizes below this");
    fss->add_option("--gamma", f_gamma, "anisotropy");
    fss->add_option("--lambda", f_lambda, "coupling");
    fss->add_option("--window", f_window, "derivative window start:stop:step");
    fss->add_option("--stride", f_stride, "keep every stride-th admissible size");
    fss->add_option("--out", f_out, "JSON report path (default stdout)");
    fss->add_option("--points-csv", f_points, "per-size (N, h_min, S, depth) CSV");
    fss->add_option("--svg", f_svg, "h_min-vs-N chart");
    fss->add_flag("--no-cache", f_nocache, "disable the ground-state cache");
    fss->add_option("--cache-dir", f_cache,
                    "cache directory (default: $LMG_CACHE_DIR or ./lmg-cache)");
    fss->add_flag("--verbose", f_verbose, "per-size progress on stderr");

    // oracle-check
    auto* oracle = subcmd("oracle-check",
                                      "banded solver + GMC vs the 2^N brute force");
    int o_max_n = 10;
    bool o_energy_only = false, o_inject = false;
    oracle->add_option("--max-n", o_max_n, "largest size (<= 10; <= 12 energy-only)");
    oracle->add_flag("--energy-only", o_energy_only, "skip the GMC comparison");
    oracle->add_flag("--inject-perturbation", o_inject,
                     "test hook: corrupt one value, must be caught");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        if (*solve) return cmd_solve(s_n, s_gamma, s_h, s_lambda, s_out);
        if (*sweep)
            return cmd_sweep(w_n, w_gamma, w_lambda, w_k, w_h, w_deriv, w_out, w_svg,
                             w_cache);
        if (*spectrum)
            return cmd_spectrum(p_n, p_gamma, p_h, p_lambda, p_div, p_out, p_svg);
        if (*fss)
            return cmd_fss(f_k, f_max_n, f_drop, f_gamma, f_lambda, f_window, f_stride,
                           f_out, f_points, f_svg, f_nocache, f_cache, f_verbose);
        if (*oracle) return cmd_oracle_check(o_max_n, o_energy_only, o_inject);
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const compute_error& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
