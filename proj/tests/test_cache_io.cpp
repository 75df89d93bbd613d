#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lmg/io_util.hpp"
#include "lmg/solver_cache.hpp"

namespace fs = std::filesystem;
namespace io = lmg::io;

namespace {

lmg::ModelParams params(int n, double h) {
    lmg::ModelParams p;
    p.n_spins = n;
    p.gamma = 0.5;
    p.field = h;
    return p;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("lmg-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
};

}  // namespace

TEST_CASE("fmt17 round-trips doubles exactly") {
    for (double x : {1.0 / 3.0, 3.141592653589793, 1e-308, 2.0000000000000004,
                     -0.4492, 0.0, 123456.789012345678, -1.0}) {
        CHECK(io::parse_double(io::fmt17(x)) == x);
    }
}

TEST_CASE("parse_double rejects junk") {
    CHECK_THROWS_AS(io::parse_double("1.2x"), lmg::validation_error);
    CHECK_THROWS_AS(io::parse_double(""), lmg::validation_error);
    CHECK_THROWS_AS(io::parse_double("--3"), lmg::validation_error);
    CHECK(io::parse_double("  0.5") == 0.5);  // leading space: stod handles
}

TEST_CASE("fnv1a64 standard vectors") {
    CHECK(io::fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(io::fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(io::fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("ground record round-trips bit for bit") {
    const auto gs = lmg::ground_state(params(40, 0.7));
    const std::string text = lmg::format_ground_record(gs);
    std::string why;
    const auto back = lmg::parse_ground_record(text, &why);
    REQUIRE_MESSAGE(back.has_value(), why);
    CHECK(back->energy == gs.energy);
    CHECK(back->parity == gs.parity);
    CHECK(back->eigensolve_residual == gs.eigensolve_residual);
    CHECK(back->params.n_spins == 40);
    CHECK(back->params.field == 0.7);
    REQUIRE(back->vector.amplitudes.size() == gs.vector.amplitudes.size());
    for (int i = 0; i < gs.vector.amplitudes.size(); ++i)
        CHECK(back->vector.amplitudes[i] == gs.vector.amplitudes[i]);
    // and the re-serialization is byte-identical
    CHECK(lmg::format_ground_record(*back) == text);
}

TEST_CASE("record corruption is detected, not trusted") {
    const auto gs = lmg::ground_state(params(12, 0.4));
    std::string text = lmg::format_ground_record(gs);
    std::string why;

    // flip one digit inside the amplitude block: the checksum must object
    std::string flipped = text;
    const auto block = flipped.find('\n', flipped.find("checksum = ")) + 1;
    auto pos = flipped.find_first_of("123456789", block);
    if (pos == std::string::npos) pos = flipped.find('0', block);
    REQUIRE(pos != std::string::npos);
    flipped[pos] = static_cast<char>('0' + (flipped[pos] - '0' + 1) % 10);
    const auto r1 = lmg::parse_ground_record(flipped, &why);
    CHECK_FALSE(r1.has_value());

    const auto r2 = lmg::parse_ground_record(text.substr(0, text.size() / 2), &why);
    CHECK_FALSE(r2.has_value());

    const auto r3 = lmg::parse_ground_record("not a record", &why);
    CHECK_FALSE(r3.has_value());
}

TEST_CASE("solve cache: store, load, replay equals fresh solve") {
    TempDir tmp;
    lmg::SolveCache cache(tmp.path);
    const auto p = params(30, 0.85);

    const auto first = cache.get_or_solve(p);
    CHECK(cache.misses() == 1);
    CHECK(cache.hits() == 0);
    const auto second = cache.get_or_solve(p);
    CHECK(cache.hits() == 1);
    CHECK(second.energy == first.energy);
    for (int i = 0; i <= 30; ++i)
        CHECK(second.vector.amplitudes[i] == first.vector.amplitudes[i]);

    // distinct parameters, distinct key files
    CHECK(lmg::SolveCache::key_filename(p) != lmg::SolveCache::key_filename(params(30, 0.9)));
    CHECK(fs::exists(tmp.path / lmg::SolveCache::key_filename(p)));
}

TEST_CASE("solve cache: corrupt entry triggers a clean recompute") {
    TempDir tmp;
    lmg::SolveCache cache(tmp.path);
    const auto p = params(16, 0.6);
    const auto first = cache.get_or_solve(p);

    const auto file = tmp.path / lmg::SolveCache::key_filename(p);
    std::ofstream(file, std::ios::trunc) << "garbage\n";
    CHECK_FALSE(cache.load(p).has_value());

    const auto again = cache.get_or_solve(p);  // recompute + rewrite
    CHECK(again.energy == first.energy);
    CHECK(cache.load(p).has_value());
}

TEST_CASE("cache directory resolution order: flag, env, fallback") {
    ::unsetenv("LMG_CACHE_DIR");
    CHECK(lmg::resolve_cache_dir("", "fallback") == "fallback");
    ::setenv("LMG_CACHE_DIR", "/tmp/from-env", 1);
    CHECK(lmg::resolve_cache_dir("", "fallback") == "/tmp/from-env");
    CHECK(lmg::resolve_cache_dir("/tmp/from-flag", "fallback") == "/tmp/from-flag");
    ::unsetenv("LMG_CACHE_DIR");
}

TEST_CASE("CSV writes and reads back exactly") {
    std::vector<std::string> header{"h", "S_total"};
    std::vector<std::vector<std::string>> rows{{io::fmt17(0.5), io::fmt17(1.0 / 3.0)},
                                               {io::fmt17(0.505), io::fmt17(2.718281828)}};
    std::ostringstream out;
    io::write_csv(out, header, rows);
    std::istringstream in(out.str());
    const auto csv = io::read_csv(in);
    CHECK(csv.header == header);
    REQUIRE(csv.rows.size() == 2);
    CHECK(csv.rows == rows);
    CHECK(io::parse_double(csv.rows[0][1]) == 1.0 / 3.0);
}

TEST_CASE("CSV validation") {
    std::istringstream empty("");
    CHECK_THROWS_AS(io::read_csv(empty), lmg::validation_error);
    std::istringstream ragged("a,b\n1,2,3\n");
    CHECK_THROWS_AS(io::read_csv(ragged), lmg::validation_error);
}

TEST_CASE("SVG chart smoke") {
    TempDir tmp;
    const auto file = (tmp.path / "chart.svg").string();
    io::write_svg(file, "title", "x", "y",
                  {{"curve", {0.0, 1.0, 2.0}, {0.5, 0.25, 0.75}}});
    std::ifstream f(file);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str().find("<svg") != std::string::npos);
    CHECK(ss.str().find("polyline") != std::string::npos);
}
