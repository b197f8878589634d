// output.hpp — deterministic CSV/JSON table writers
#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace skinchain::io {

using Cell = std::variant<double, long long, std::string>;

// A rectangular table with a fixed column order; the single serialization
// payload of every CLI command.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

// Doubles rendered with 12 significant digits.
std::string format_number(double v);

// One header row, fixed column order, LF line endings.
void write_csv(const std::filesystem::path& path, const Table& table);

// Same payload as JSON: {"columns": [...], "rows": [[...], ...]}.
void write_json(const std::filesystem::path& path, const Table& table);

// Dispatch on format ("csv" | "json"); appends the matching extension.
std::filesystem::path write_table(const std::filesystem::path& dir,
                                  const std::string& stem,
                                  const std::string& format,
                                  const Table& table);

} // namespace skinchain::io
