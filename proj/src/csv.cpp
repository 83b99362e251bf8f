#include "gdnls/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace gdnls {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    if (columns_ == 0) throw std::invalid_argument("CsvWriter: empty header");
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) body_ += ',';
        body_ += header[i];
    }
    body_ += '\n';
}

void CsvWriter::add_row(const std::vector<double>& values) {
    if (values.size() != columns_)
        throw std::invalid_argument("CsvWriter: row width does not match header");
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) body_ += ',';
        body_ += format_g17(values[i]);
    }
    body_ += '\n';
}

void CsvWriter::write(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + file.string() + " for writing");
    out << body_;
}

} // namespace gdnls
