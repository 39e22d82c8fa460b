#include "conint/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace conint {

std::string format_full(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
}

namespace {

bool needs_quotes(const std::string& f) {
    return f.find_first_of(",\"\n") != std::string::npos;
}

std::string quote(const std::string& f) {
    std::string q = "\"";
    for (char c : f) {
        if (c == '"') q += '"';
        q += c;
    }
    q += '"';
    return q;
}

}  // namespace

std::string csv_escape(const std::string& field) {
    return needs_quotes(field) ? quote(field) : field;
}

void CsvWriter::row(std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << csv_escape(fields[i]);
    }
    out_ << '\n';
}

void CsvWriter::row(std::initializer_list<std::string> fields) {
    row(std::span<const std::string>(fields.begin(), fields.size()));
}

void CsvWriter::numeric_row(std::span<const double> values,
                            std::span<const std::string> prefix) {
    std::vector<std::string> fields(prefix.begin(), prefix.end());
    fields.reserve(prefix.size() + values.size());
    for (double v : values) fields.push_back(format_full(v));
    row(fields);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    out.push_back(field);
    return out;
}

}  // namespace conint
