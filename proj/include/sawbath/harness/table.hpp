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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sawbath::harness {

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    std::size_t columns() const { return header.size(); }
    /// Index of a named column; throws InvalidArgument when missing.
    std::size_t column(std::string_view name) const;
    /// Numeric cell; NaN for text cells.
    double number(std::size_t row, std::size_t col) const;
    void add_row(std::vector<Cell> row);
};

/// General notation, 9 significant digits, "." as decimal separator regardless of locale.
std::string format_number(double v);

/// Header line plus one line per row, each newline-terminated.
std::string to_csv(const Table& table);
void write_csv(const Table& table, const std::filesystem::path& path);

/// Two-column numeric CSV (header optional). Throws Io or InvalidArgument.
std::vector<std::pair<double, double>> read_pairs_csv(const std::filesystem::path& path);

/// Self-contained SVG line chart: column 0 on x, every other numeric column a series.
std::string line_chart_svg(const Table& table, std::string_view title);
/// Self-contained SVG scalar field over two grid columns.
std::string heatmap_svg(const Table& table, std::string_view x_col, std::string_view y_col,
                        std::string_view value_col, std::string_view title);

/// Heatmap of <sigma_x> when the table has omega/delta grid columns, line chart otherwise.
void write_plot(const Table& table, const std::filesystem::path& path);
void write_text(const std::string& text, const std::filesystem::path& path);

}  // namespace sawbath::harness
