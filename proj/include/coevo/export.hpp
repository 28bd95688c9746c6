#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace coevo {

// CSV writer with stable float formatting so reruns are byte-identical.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    CsvWriter& field(const std::string& v);
    CsvWriter& field(double v);
    CsvWriter& field(std::uint64_t v);
    CsvWriter& field(int v);
    CsvWriter& field(bool v);
    void end_row();

    static std::string format_double(double v);

private:
    std::ofstream out_;
    bool row_started_ = false;
    void sep();
};

void write_manifest(const nlohmann::json& manifest, const std::string& path);
nlohmann::json read_manifest(const std::string& path);

// Byte-wise comparison; returns true when identical.
bool files_identical(const std::string& a, const std::string& b);

}  // namespace coevo
