#include "coevo/export.hpp"

#include <cstdio>
#include <stdexcept>

namespace coevo {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path) {
    if (!out_) throw std::runtime_error("cannot open output file: " + path);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

void CsvWriter::sep() {
    if (row_started_) out_ << ',';
    row_started_ = true;
}

CsvWriter& CsvWriter::field(const std::string& v) {
    sep();
    out_ << v;
    return *this;
}

std::string CsvWriter::format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

CsvWriter& CsvWriter::field(double v) {
    sep();
    out_ << format_double(v);
    return *this;
}

CsvWriter& CsvWriter::field(std::uint64_t v) {
    sep();
    out_ << v;
    return *this;
}

CsvWriter& CsvWriter::field(int v) {
    sep();
    out_ << v;
    return *this;
}

CsvWriter& CsvWriter::field(bool v) {
    sep();
    out_ << (v ? 1 : 0);
    return *this;
}

void CsvWriter::end_row() {
    out_ << '\n';
    row_started_ = false;
}

void write_manifest(const nlohmann::json& manifest, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << manifest.dump(2) << "\n";
}

nlohmann::json read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest: " + path);
    return nlohmann::json::parse(in);
}

bool files_identical(const std::string& a, const std::string& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    return sa == sb;
}

}  // namespace coevo
