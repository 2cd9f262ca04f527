// output.hpp - CSV and JSON writers for scenario results

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace wgqed::scenario {

/// 17 significant digits, scientific, '.' decimal.
std::string format_number(double value);

/// CSV with a "# config_hash=..." first line, optional further comment lines,
/// then the header.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::string& config_hash,
              const std::vector<std::string>& comments, const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    void close();

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t columns_;
    std::string line_;
};

void write_json(const std::filesystem::path& path, const nlohmann::json& document);

}  // namespace wgqed::scenario
