#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace kslab {

inline constexpr const char* artifact_version = "1.0.0";

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 17 significant digits, enough to round-trip a double exactly.
std::string fmt17(double v);

// CSV with a pinned header row; numbers serialized with fmt17.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
    void add_row(const std::vector<double>& row);
    void add_row_mixed(const std::vector<std::string>& row);
    const std::vector<std::string>& header() const { return header_; }
    std::string render() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

// temp file + rename so readers never observe partial output
void write_text_atomic(const std::filesystem::path& path, const std::string& text);
void write_csv_atomic(const std::filesystem::path& path, const CsvTable& table);
void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace kslab
