#include "lmg/solver_cache.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "lmg/io_util.hpp"

namespace lmg {

namespace {

constexpr const char* kSolverVersion = "lmg-gs-1";

std::string amplitude_block(const GroundState& gs) {
    std::string block;
    block.reserve(gs.vector.amplitudes.size() * 26);
    for (double a : gs.vector.amplitudes) {
        block += io::fmt17(a);
        block += '\n';
    }
    return block;
}

}  // namespace

std::string format_ground_record(const GroundState& gs) {
    const std::string amps = amplitude_block(gs);
    std::ostringstream os;
    os << "version = " << kSolverVersion << '\n'
       << "n_spins = " << gs.params.n_spins << '\n'
       << "gamma = " << io::fmt17(gs.params.gamma) << '\n'
       << "field = " << io::fmt17(gs.params.field) << '\n'
       << "coupling = " << io::fmt17(gs.params.coupling) << '\n'
       << "energy = " << io::fmt17(gs.energy) << '\n'
       << "parity = " << (gs.parity == Parity::even ? "even" : "odd") << '\n'
       << "residual = " << io::fmt17(gs.eigensolve_residual) << '\n'
       << "checksum = " << std::hex << io::fnv1a64(amps) << std::dec << '\n'
       << amps;
    return os.str();
}

std::optional<GroundState> parse_ground_record(const std::string& text, std::string* why) {
    auto fail = [&](const std::string& m) -> std::optional<GroundState> {
        if (why) *why = m;
        return std::nullopt;
    };
    std::istringstream is(text);
    std::string line;
    GroundState gs;
    std::uint64_t checksum = 0;
    bool have[9] = {};
    for (int i = 0; i < 9; ++i) {
        if (!std::getline(is, line)) return fail("truncated header");
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) return fail("malformed header line: " + line);
        const std::string key = line.substr(0, eq), val = line.substr(eq + 3);
        try {
            if (key == "version") {
                if (val != kSolverVersion) return fail("version mismatch: " + val);
            } else if (key == "n_spins") {
                gs.params.n_spins = std::stoi(val);
            } else if (key == "gamma") {
                gs.params.gamma = io::parse_double(val);
            } else if (key == "field") {
                gs.params.field = io::parse_double(val);
            } else if (key == "coupling") {
                gs.params.coupling = io::parse_double(val);
            } else if (key == "energy") {
                gs.energy = io::parse_double(val);
            } else if (key == "parity") {
                if (val != "even" && val != "odd") return fail("bad parity: " + val);
                gs.parity = val == "even" ? Parity::even : Parity::odd;
            } else if (key == "residual") {
                gs.eigensolve_residual = io::parse_double(val);
            } else if (key == "checksum") {
                checksum = std::stoull(val, nullptr, 16);
            } else {
                return fail("unknown header key: " + key);
            }
        } catch (const std::exception& e) {
            return fail(std::string("header parse: ") + e.what());
        }
        have[i] = true;
    }
    (void)have;

    std::string amps;
    std::vector<double> vals;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        amps += line;
        amps += '\n';
        try {
            vals.push_back(io::parse_double(line));
        } catch (const std::exception& e) {
            return fail(std::string("amplitude parse: ") + e.what());
        }
    }
    if (static_cast<int>(vals.size()) != gs.params.n_spins + 1)
        return fail("amplitude count != N + 1");
    if (io::fnv1a64(amps) != checksum) return fail("checksum mismatch");
    gs.vector.n_spins = gs.params.n_spins;
    gs.vector.amplitudes = Eigen::Map<const Eigen::VectorXd>(vals.data(), vals.size());
    return gs;
}

SolveCache::SolveCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::string SolveCache::key_filename(const ModelParams& p) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s_N%d_g%.10f_h%.10f_l%.10f.txt", kSolverVersion, p.n_spins,
                  p.gamma, p.field, p.coupling);
    return buf;
}

std::optional<GroundState> SolveCache::load(const ModelParams& p) const {
    const auto path = dir_ / key_filename(p);
    std::ifstream f(path, std::ios::binary);
    if (!f) return std::nullopt;
    std::ostringstream ss;
    ss << f.rdbuf();
    std::string why;
    auto gs = parse_ground_record(ss.str(), &why);
    if (!gs) return std::nullopt;  // corrupt record: caller recomputes
    if (gs->params.n_spins != p.n_spins || gs->params.gamma != p.gamma ||
        gs->params.field != p.field || gs->params.coupling != p.coupling)
        return std::nullopt;
    return gs;
}

void SolveCache::store(const GroundState& gs) const {
    const auto path = dir_ / key_filename(gs.params);
    static std::atomic<unsigned> seq{0};
    std::random_device rd;
    const auto tmp = path.string() + ".tmp." + std::to_string(rd()) + "." +
                     std::to_string(seq.fetch_add(1));
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw compute_error("cache: cannot write " + tmp);
        f << format_ground_record(gs);
        if (!f.good()) throw compute_error("cache: short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);  // atomic on POSIX
}

GroundState SolveCache::get_or_solve(const ModelParams& p) {
    if (auto gs = load(p)) {
        hits_.fetch_add(1);
        return *gs;
    }
    misses_.fetch_add(1);
    GroundState gs = ground_state(p);
    store(gs);
    return gs;
}

std::string resolve_cache_dir(const std::string& flag_value, const std::string& fallback) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("LMG_CACHE_DIR"); env && *env) return env;
    return fallback;
}

}  // namespace lmg
