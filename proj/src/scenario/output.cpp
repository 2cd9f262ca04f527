#include "scenario/output.hpp"

#include <charconv>
#include <cmath>

#include "wgqed/error.hpp"

namespace wgqed::scenario {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 16);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& config_hash,
                     const std::vector<std::string>& comments, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()) {
    if (!out_) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out_ << "# config_hash=" << config_hash << '\n';
    for (const auto& c : comments) out_ << "# " << c << '\n';
    for (std::size_t k = 0; k < header.size(); ++k) out_ << (k ? "," : "") << header[k];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != columns_) throw Error(ErrorKind::Io, "CSV row width mismatch in " + path_.string());
    line_.clear();
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) line_.push_back(',');
        line_ += format_number(values[k]);
    }
    line_.push_back('\n');
    out_ << line_;
}

void CsvWriter::close() {
    out_.close();
    if (!out_) throw Error(ErrorKind::Io, "failed writing " + path_.string());
}

void write_json(const std::filesystem::path& path, const nlohmann::json& document) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << document.dump(2) << '\n';
    out.close();
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

}  // namespace wgqed::scenario
