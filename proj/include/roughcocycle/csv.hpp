#pragma once

#include <string>
#include <vector>

namespace rough {

// 17 significant digits; round-trips any IEEE double.
std::string format_double(double v);

// In-memory CSV table written with a header, UTF-8, LF line endings.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void start_row();
    void add(double v);
    void add(const std::string& v);
    void add(const char* v) { add(std::string(v)); }
    void add(long long v);
    void add(int v) { add(static_cast<long long>(v)); }
    void add(bool v) { add(std::string(v ? "1" : "0")); }

    const std::vector<std::string>& header() const { return header_; }
    size_t n_rows() const { return rows_.size(); }
    const std::vector<std::string>& row(size_t i) const { return rows_[i]; }

    void write(const std::string& filename) const;
    std::string to_string() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace rough
