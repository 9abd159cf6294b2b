// Copyright 2026 The sawbath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sawbath/harness/table.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "sawbath/error.hpp"

namespace sawbath::harness {

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw_invalid("table has no column '" + std::string(name) + "'");
}

double Table::number(std::size_t row, std::size_t col) const {
    const Cell& c = rows.at(row).at(col);
    if (const double* d = std::get_if<double>(&c)) return *d;
    return std::numeric_limits<double>::quiet_NaN();
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != header.size()) throw_invalid("table row width does not match header");
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::general, 9);
    return std::string(buf.data(), res.ptr);
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += csv_field(table.header[i]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (const double* d = std::get_if<double>(&row[i]))
                out += format_number(*d);
            else
                out += csv_field(std::get<std::string>(row[i]));
        }
        out += '\n';
    }
    return out;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
    os << text;
    os.flush();
    if (!os) throw Error(ErrorKind::Io, "write to '" + path.string() + "' failed");
}

void write_csv(const Table& table, const std::filesystem::path& path) {
    write_text(to_csv(table), path);
}

std::vector<std::pair<double, double>> read_pairs_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for reading");
    std::vector<std::pair<double, double>> out;
    std::string line;
    std::size_t lineno = 0;
    bool first_content = true;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        const auto comma = view.find(',');
        double a = 0.0;
        double b = 0.0;
        bool ok = comma != std::string_view::npos;
        if (ok) {
            std::string_view rest = view.substr(comma + 1);
            const auto next = rest.find(',');
            if (next != std::string_view::npos) rest = rest.substr(0, next);
            ok = parse_double(view.substr(0, comma), a) && parse_double(rest, b);
        }
        if (!ok) {
            if (first_content) {  // header row
                first_content = false;
                continue;
            }
            throw_invalid(path.string() + ":" + std::to_string(lineno) +
                          ": expected two numeric columns");
        }
        first_content = false;
        out.emplace_back(a, b);
    }
    return out;
}

// --- SVG ------------------------------------------------------------------

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string short_number(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::general, 4);
    return std::string(buf.data(), res.ptr);
}

std::string escape_xml(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi == lo) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

void svg_open(std::ostringstream& os, std::string_view title) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
       << escape_xml(title) << "</text>\n";
}

void svg_axes(std::ostringstream& os, const Range& x, const Range& y, std::string_view x_label,
              std::string_view y_label) {
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = kLeft + pw * i / 4.0;
        const double fy = kTop + ph - ph * i / 4.0;
        os << "<line x1=\"" << fx << "\" y1=\"" << kTop + ph << "\" x2=\"" << fx << "\" y2=\""
           << kTop + ph + 5 << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << fx << "\" y=\"" << kTop + ph + 20 << "\" text-anchor=\"middle\">"
           << short_number(x.lo + (x.hi - x.lo) * i / 4.0) << "</text>\n"
           << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fy << "\" x2=\"" << kLeft << "\" y2=\""
           << fy << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << kLeft - 8 << "\" y=\"" << fy + 4 << "\" text-anchor=\"end\">"
           << short_number(y.lo + (y.hi - y.lo) * i / 4.0) << "</text>\n";
    }
    os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15
       << "\" text-anchor=\"middle\">" << escape_xml(x_label) << "</text>\n"
       << "<text x=\"20\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
       << kTop + ph / 2 << ")\">" << escape_xml(y_label) << "</text>\n";
}

// Diverging blue-white-red on [-1, 1].
std::string color_of(double u) {
    u = std::clamp(u, -1.0, 1.0);
    int r, g, b;
    if (u < 0) {
        const double s = -u;
        r = static_cast<int>(255 * (1 - s) + 33 * s);
        g = static_cast<int>(255 * (1 - s) + 102 * s);
        b = static_cast<int>(255 * (1 - s) + 172 * s);
    } else {
        r = static_cast<int>(255 * (1 - u) + 178 * u);
        g = static_cast<int>(255 * (1 - u) + 24 * u);
        b = static_cast<int>(255 * (1 - u) + 43 * u);
    }
    std::array<char, 8> buf{};
    std::snprintf(buf.data(), buf.size(), "#%02x%02x%02x", r, g, b);
    return buf.data();
}

}  // namespace

std::string line_chart_svg(const Table& table, std::string_view title) {
    static constexpr std::array<const char*, 6> palette{"#1f77b4", "#d62728", "#2ca02c",
                                                         "#9467bd", "#ff7f0e", "#17becf"};
    Range x;
    Range y;
    std::vector<std::size_t> series;
    for (std::size_t c = 1; c < table.columns(); ++c) {
        bool numeric = false;
        for (std::size_t r = 0; r < table.rows.size(); ++r)
            if (std::isfinite(table.number(r, c))) numeric = true;
        if (numeric) series.push_back(c);
    }
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (table.columns() > 0) x.add(table.number(r, 0));
        for (std::size_t c : series) y.add(table.number(r, c));
    }
    x.finish();
    y.finish();

    std::ostringstream os;
    svg_open(os, title);
    svg_axes(os, x, y, table.columns() ? table.header[0] : "", "");
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = palette[s % palette.size()];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const double xv = table.number(r, 0);
            const double yv = table.number(r, series[s]);
            if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
            const double px = kLeft + pw * (xv - x.lo) / (x.hi - x.lo);
            const double py = kTop + ph - ph * (yv - y.lo) / (y.hi - y.lo);
            os << short_number(px) << ',' << short_number(py) << ' ';
        }
        os << "\"/>\n";
        const double ly = kTop + 16.0 * static_cast<double>(s) + 10;
        os << "<line x1=\"" << kWidth - kRight + 12 << "\" y1=\"" << ly << "\" x2=\""
           << kWidth - kRight + 32 << "\" y2=\"" << ly << "\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n"
           << "<text x=\"" << kWidth - kRight + 36 << "\" y=\"" << ly + 4 << "\">"
           << escape_xml(table.header[series[s]]) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string heatmap_svg(const Table& table, std::string_view x_col, std::string_view y_col,
                        std::string_view value_col, std::string_view title) {
    const std::size_t xc = table.column(x_col);
    const std::size_t yc = table.column(y_col);
    const std::size_t vc = table.column(value_col);
    std::map<double, std::size_t> xs;
    std::map<double, std::size_t> ys;
    Range v;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        xs.emplace(table.number(r, xc), 0);
        ys.emplace(table.number(r, yc), 0);
        v.add(table.number(r, vc));
    }
    std::size_t i = 0;
    for (auto& [key, idx] : xs) idx = i++;
    i = 0;
    for (auto& [key, idx] : ys) idx = i++;
    v.finish();
    const double bound = std::max(std::abs(v.lo), std::abs(v.hi));
    const bool diverging = v.lo < 0.0 && v.hi > 0.0;

    Range xr;
    Range yr;
    for (const auto& [key, idx] : xs) xr.add(key);
    for (const auto& [key, idx] : ys) yr.add(key);
    xr.finish();
    yr.finish();

    std::ostringstream os;
    svg_open(os, title);
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    const double cw = pw / static_cast<double>(std::max<std::size_t>(1, xs.size()));
    const double ch = ph / static_cast<double>(std::max<std::size_t>(1, ys.size()));
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const double val = table.number(r, vc);
        const double u = diverging ? val / bound : 2.0 * (val - v.lo) / (v.hi - v.lo) - 1.0;
        const std::string fill = std::isfinite(val) ? color_of(u) : "#808080";
        const double px = kLeft + cw * static_cast<double>(xs[table.number(r, xc)]);
        const double py = kTop + ph - ch * static_cast<double>(ys[table.number(r, yc)] + 1);
        os << "<rect x=\"" << short_number(px) << "\" y=\"" << short_number(py) << "\" width=\""
           << short_number(cw + 0.5) << "\" height=\"" << short_number(ch + 0.5) << "\" fill=\""
           << fill << "\"/>\n";
    }
    svg_axes(os, xr, yr, x_col, y_col);
    // Colour bar.
    const double bx = kWidth - kRight + 30;
    for (int k = 0; k < 50; ++k) {
        const double u = 1.0 - 2.0 * k / 49.0;
        os << "<rect x=\"" << bx << "\" y=\"" << short_number(kTop + ph * k / 50.0)
           << "\" width=\"20\" height=\"" << short_number(ph / 50.0 + 0.5) << "\" fill=\""
           << color_of(u) << "\"/>\n";
    }
    const double top_val = diverging ? bound : v.hi;
    const double bot_val = diverging ? -bound : v.lo;
    os << "<text x=\"" << bx + 26 << "\" y=\"" << kTop + 10 << "\">" << short_number(top_val)
       << "</text>\n<text x=\"" << bx + 26 << "\" y=\"" << kTop + ph << "\">"
       << short_number(bot_val) << "</text>\n<text x=\"" << bx << "\" y=\"" << kTop - 8 << "\">"
       << escape_xml(value_col) << "</text>\n</svg>\n";
    return os.str();
}

void write_plot(const Table& table, const std::filesystem::path& path) {
    const bool grid = std::find(table.header.begin(), table.header.end(), "omega") !=
                          table.header.end() &&
                      std::find(table.header.begin(), table.header.end(), "delta") !=
                          table.header.end();
    const std::string title = path.stem().string();
    if (grid)
        write_text(heatmap_svg(table, "omega", "delta", "sx", title), path);
    else
        write_text(line_chart_svg(table, title), path);
}

}  // namespace sawbath::harness
