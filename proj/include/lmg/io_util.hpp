#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace lmg::io {

// %.17g — the shortest fixed format that round-trips every IEEE double.
std::string fmt17(double x);
double parse_double(const std::string& s);  // throws validation_error on junk

std::uint64_t fnv1a64(std::string_view s);

// Minimal CSV: comma separators, header row, Unix newlines, no quoting
// (fields never contain commas).
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
Csv read_csv(std::istream& is);

// Self-contained SVG line chart (the CSV stays the primary output; the chart
// is for eyeballing).
struct Series {
    std::string name;
    std::vector<double> x, y;
};
void write_svg(const std::string& path, const std::string& title,
               const std::string& xlabel, const std::string& ylabel,
               const std::vector<Series>& series);

}  // namespace lmg::io
