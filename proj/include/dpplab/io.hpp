#pragma once

#include <json.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace dpplab {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest-safe round-trip formatting: 17 significant digits.
std::string format_double(double x);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view data);

/// {"config_hash": ..., "versions": {...}} for a config object.
nlohmann::json artifact_header(const nlohmann::json& config);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    void add_row(std::vector<double> row);
    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }

    /// First line "# <header json>", then the column names, then the rows.
    void write(std::ostream& os, const nlohmann::json& header) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

/// Writes {"meta": header, ...body} followed by a newline.
void write_json(std::ostream& os, const nlohmann::json& header, nlohmann::json body);

}  // namespace dpplab
