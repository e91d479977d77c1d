#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace benkit {

// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

double parse_double(std::string_view s);

// Comma-separated table with a mandatory header row and LF line endings.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> cells);
    std::string to_string() const;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view text);

// Numeric matrix reader: rows = functions, columns = samples; a
// non-numeric first row is treated as a header and skipped.
std::vector<std::vector<double>> read_matrix_csv(const std::filesystem::path& path);

// Write-temp-then-rename so partial output never lands at the target path.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace benkit
