#include "nhlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nhlab {

std::string format_g12(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvWriter::add_row(const std::vector<std::string>& fields) {
    if (fields.size() != header_.size())
        throw std::invalid_argument("CsvWriter: row width does not match header");
    rows_.push_back(fields);
}

std::string CsvWriter::str() const {
    std::string out;
    auto join = [&out](const std::vector<std::string>& fields) {
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) out += ',';
            out += fields[i];
        }
        out += '\n';
    };
    join(header_);
    for (const auto& row : rows_) join(row);
    return out;
}

void CsvWriter::write_file(const std::string& path) const { write_text_file(path, str()); }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open for writing: " + path);
    file << content;
    if (!file) throw std::runtime_error("write failed: " + path);
}

}  // namespace nhlab
