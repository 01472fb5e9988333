#pragma once

#include <string>
#include <vector>

namespace nhlab {

/// Fixed 12-significant-digit float formatting, so repeated runs produce
/// byte-identical CSV.
std::string format_g12(double value);

/// Minimal CSV writer: header row then data rows, fields joined by commas.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(const std::vector<std::string>& fields);
    std::string str() const;
    void write_file(const std::string& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace nhlab
