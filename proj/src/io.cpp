#include "kslab/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace kslab {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvTable::add_row(const std::vector<double>& row) {
    if (row.size() != header_.size()) throw std::invalid_argument("CsvTable: row width mismatch");
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (double v : row) cells.push_back(fmt17(v));
    rows_.push_back(std::move(cells));
}

void CsvTable::add_row_mixed(const std::vector<std::string>& row) {
    if (row.size() != header_.size()) throw std::invalid_argument("CsvTable: row width mismatch");
    rows_.push_back(row);
}

std::string CsvTable::render() const {
    std::string out;
    for (size_t i = 0; i < header_.size(); ++i) {
        if (i) out += ',';
        out += header_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    std::error_code ec;
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << text;
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("rename to " + path.string() + " failed: " + ec.message());
}

void write_csv_atomic(const std::filesystem::path& path, const CsvTable& table) {
    write_text_atomic(path, table.render());
}

void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

}  // namespace kslab
