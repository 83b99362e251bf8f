#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace gdnls {

// 17 significant digits; round-trips doubles exactly.
std::string format_g17(double v);

// Rectangular CSV with a header row, numbers via format_g17. Writing is the
// only deterministic output path the harness uses.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(const std::vector<double>& values);
    void write(const std::filesystem::path& file) const;
    const std::string& text() const { return body_; }

private:
    size_t columns_ = 0;
    std::string body_;
};

} // namespace gdnls
