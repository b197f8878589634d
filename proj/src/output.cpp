#include "skinchain/output.hpp"
#include "skinchain/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>

namespace skinchain::io {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw DimensionError("Table: row width does not match column count");
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::string cell_to_string(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

} // namespace

void write_csv(const std::filesystem::path& path, const Table& table) {
    std::ofstream out(path, std::ios::binary); // LF endings everywhere
    if (!out)
        throw ConfigError("write_csv: cannot open " + path.string());
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << cell_to_string(row[i]);
        out << '\n';
    }
}

void write_json(const std::filesystem::path& path, const Table& table) {
    nlohmann::json doc;
    doc["columns"] = table.columns;
    auto& rows = doc["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json jrow = nlohmann::json::array();
        for (const auto& c : row) {
            if (std::holds_alternative<double>(c)) {
                const double v = std::get<double>(c);
                if (std::isnan(v)) jrow.push_back(nullptr); else jrow.push_back(v);
            } else if (std::holds_alternative<long long>(c)) {
                jrow.push_back(std::get<long long>(c));
            } else {
                jrow.push_back(std::get<std::string>(c));
            }
        }
        rows.push_back(std::move(jrow));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("write_json: cannot open " + path.string());
    out << doc.dump(2) << '\n';
}

std::filesystem::path write_table(const std::filesystem::path& dir,
                                  const std::string& stem,
                                  const std::string& format,
                                  const Table& table) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path path = dir / (stem + "." + format);
    if (format == "csv") write_csv(path, table);
    else if (format == "json") write_json(path, table);
    else throw ConfigError("write_table: unknown format " + format);
    return path;
}

} // namespace skinchain::io
