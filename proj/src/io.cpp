#include "dpplab/io.hpp"

#include "dpplab/error.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>

namespace dpplab {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

nlohmann::json artifact_header(const nlohmann::json& config) {
    std::ostringstream hash;
    hash << std::hex << std::setw(16) << std::setfill('0') << fnv1a(config.dump());
    nlohmann::json versions;
    for (const char* module : {"measures", "recurrence", "bandop", "zeros", "mop", "freeprob", "rmt", "cli"})
        versions[module] = kVersion;
    return {{"config_hash", hash.str()}, {"versions", versions}};
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<double> row) {
    require(row.size() == columns_.size(), "CsvTable: row width does not match the column count");
    rows_.push_back(std::move(row));
}

void CsvTable::write(std::ostream& os, const nlohmann::json& header) const {
    os << "# " << header.dump() << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
        os << '\n';
    }
}

void write_json(std::ostream& os, const nlohmann::json& header, nlohmann::json body) {
    body["meta"] = header;
    os << body.dump(2) << '\n';
}

}  // namespace dpplab
