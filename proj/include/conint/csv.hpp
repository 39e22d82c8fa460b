#pragma once

#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace conint {

// Full-precision decimal rendering (17 significant digits round-trips a double).
std::string format_full(double value);

// Quotes a field when it contains a comma, quote or newline.
std::string csv_escape(const std::string& field);

// Minimal RFC-4180-style writer: comma separation, CRLF-free \n rows, fields
// quoted only when they contain a comma, quote or newline.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void row(std::span<const std::string> fields);
    void row(std::initializer_list<std::string> fields);
    void numeric_row(std::span<const double> values, std::span<const std::string> prefix = {});

    bool good() const { return out_.good(); }

private:
    std::ofstream out_;
};

// Splits one CSV line; handles quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace conint
