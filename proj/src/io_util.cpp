#include "lmg/io_util.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lmg/params.hpp"

namespace lmg::io {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(const std::string& s) {
    // strtod instead of stod: amplitude tails of large ground states go
    // subnormal, and stod turns the harmless underflow into out_of_range
    const char* begin = s.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw validation_error("not a number: '" + s + "'");
    if (errno == ERANGE && std::fabs(v) == HUGE_VAL)
        throw validation_error("number out of range: '" + s + "'");
    while (*end == ' ' || *end == '\t') ++end;
    if (*end != '\0') throw validation_error("trailing junk in number: '" + s + "'");
    return v;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    for (size_t i = 0; i < header.size(); ++i)
        os << header[i] << (i + 1 < header.size() ? "," : "");
    os << '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 < row.size() ? "," : "");
        os << '\n';
    }
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

Csv read_csv(std::istream& is) {
    Csv csv;
    std::string line;
    if (!std::getline(is, line)) throw validation_error("empty CSV");
    csv.header = split_line(line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto row = split_line(line);
        if (row.size() != csv.header.size())
            throw validation_error("CSV row width != header width");
        csv.rows.push_back(std::move(row));
    }
    return csv;
}

void write_svg(const std::string& path, const std::string& title,
               const std::string& xlabel, const std::string& ylabel,
               const std::vector<Series>& series) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series) {
        for (double v : s.x) xmin = std::min(xmin, v), xmax = std::max(xmax, v);
        for (double v : s.y) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;

    const double W = 760, H = 520, L = 80, R = 20, T = 44, B = 56;
    auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

    std::ofstream f(path);
    if (!f) throw validation_error("cannot open for write: " + path);
    f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
      << "' viewBox='0 0 " << W << " " << H << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
      << "</text>\n"
      << "<text x='" << (L + (W - R)) / 2 << "' y='" << H - 14
      << "' text-anchor='middle' font-size='13'>" << xlabel << "</text>\n"
      << "<text x='18' y='" << (T + (H - B)) / 2 << "' text-anchor='middle' font-size='13' "
      << "transform='rotate(-90 18 " << (T + (H - B)) / 2 << ")'>" << ylabel << "</text>\n"
      << "<rect x='" << L << "' y='" << T << "' width='" << W - L - R << "' height='"
      << H - T - B << "' fill='none' stroke='#444'/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double xv = xmin + t * (xmax - xmin) / 4.0;
        const double yv = ymin + t * (ymax - ymin) / 4.0;
        f << "<text x='" << px(xv) << "' y='" << H - B + 18
          << "' text-anchor='middle' font-size='11'>" << fmt17(std::round(xv * 1e4) / 1e4)
          << "</text>\n"
          << "<text x='" << L - 6 << "' y='" << py(yv) + 4
          << "' text-anchor='end' font-size='11'>" << fmt17(std::round(yv * 1e4) / 1e4)
          << "</text>\n";
    }
    for (size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        f << "<polyline fill='none' stroke='" << palette[si % 8] << "' stroke-width='1.5' points='";
        for (size_t i = 0; i < s.x.size(); ++i) f << px(s.x[i]) << "," << py(s.y[i]) << " ";
        f << "'/>\n";
        f << "<text x='" << W - R - 8 << "' y='" << T + 18 + 16 * si
          << "' text-anchor='end' font-size='12' fill='" << palette[si % 8] << "'>" << s.name
          << "</text>\n";
    }
    f << "</svg>\n";
}

}  // namespace lmg::io
