#pragma once
#include <atomic>
#include <filesystem>
#include <optional>
#include <string>

#include "lmg/hamiltonian.hpp"

namespace lmg {

// Human-inspectable ground-state record: a key = value header (params,
// energy, parity, residual, amplitude checksum) followed by the amplitudes
// as %.17g decimal text, one per line.  Written by cmd_solve and by the
// solve cache; parse() round-trips it bit-for-bit.
std::string format_ground_record(const GroundState& gs);
std::optional<GroundState> parse_ground_record(const std::string& text,
                                               std::string* why = nullptr);

// One file per solve.  The filename encodes (N, gamma, h, lambda) with fixed
// decimal formatting plus a solver version tag; the payload carries an
// FNV-1a checksum of the amplitude block, so corruption is detected on load
// and answered by a recompute, never a crash.  Writes go to a temp file
// followed by an atomic rename, so concurrent sweep workers stay safe.
class SolveCache {
public:
    explicit SolveCache(std::filesystem::path dir);

    static std::string key_filename(const ModelParams& p);

    std::optional<GroundState> load(const ModelParams& p) const;
    void store(const GroundState& gs) const;
    GroundState get_or_solve(const ModelParams& p);

    long hits() const { return hits_.load(); }
    long misses() const { return misses_.load(); }
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    mutable std::atomic<long> hits_{0}, misses_{0};
};

// Cache directory resolution: explicit flag value, else the LMG_CACHE_DIR
// environment override, else the built-in default.
std::string resolve_cache_dir(const std::string& flag_value,
                              const std::string& fallback);

}  // namespace lmg
