#include "benkit/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace benkit {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first < last && (*first == ' ' || *first == '\t')) ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc()) {
        throw std::invalid_argument("parse_double: not a number: '" + std::string(s) + "'");
    }
    return v;
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header.size()) {
        throw std::invalid_argument("CsvTable: row width does not match header");
    }
    rows.push_back(std::move(cells));
}

std::string CsvTable::to_string() const {
    std::string out;
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> cells;
    size_t start = 0;
    while (true) {
        const size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            cells.emplace_back(line.substr(start));
            break;
        }
        cells.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_numeric_cell(const std::string& s) {
    try {
        parse_double(s);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
    CsvTable table;
    size_t start = 0;
    bool first = true;
    while (start < text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) {
            auto cells = split_line(line);
            if (first) {
                table.header = std::move(cells);
                first = false;
            } else {
                table.add_row(std::move(cells));
            }
        }
        start = end + 1;
    }
    if (first) {
        throw std::invalid_argument("parse_csv: missing header row");
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    return parse_csv(read_file(path));
}

std::vector<std::vector<double>> read_matrix_csv(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    std::vector<std::vector<double>> rows;
    size_t start = 0;
    bool first = true;
    while (start < text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string_view line{text.data() + start, end - start};
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) {
            const auto cells = split_line(line);
            if (first && !is_numeric_cell(cells.front())) {
                first = false;  // header row, skip
                start = end + 1;
                continue;
            }
            first = false;
            std::vector<double> row;
            row.reserve(cells.size());
            for (const auto& c : cells) row.push_back(parse_double(c));
            if (!rows.empty() && row.size() != rows.front().size()) {
                throw std::invalid_argument("read_matrix_csv: ragged rows in " +
                                            path.string());
            }
            rows.push_back(std::move(row));
        }
        start = end + 1;
    }
    if (rows.empty()) {
        throw std::invalid_argument("read_matrix_csv: no data rows in " + path.string());
    }
    return rows;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write file: " + tmp.string());
        }
        out.write(content.data(), (std::streamsize)content.size());
        if (!out) {
            throw std::runtime_error("short write: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace benkit
