#include "roughcocycle/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rough {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvTable::start_row() { rows_.emplace_back(); }

void CsvTable::add(double v) { rows_.back().push_back(format_double(v)); }

void CsvTable::add(const std::string& v) { rows_.back().push_back(v); }

void CsvTable::add(long long v) { rows_.back().push_back(std::to_string(v)); }

std::string CsvTable::to_string() const {
    std::string out;
    for (size_t i = 0; i < header_.size(); ++i) {
        if (i) out += ',';
        out += header_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
        if (row.size() != header_.size())
            throw std::runtime_error("CsvTable: row width differs from header");
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

void CsvTable::write(const std::string& filename) const {
    std::ofstream out(filename, std::ios::binary);
    if (!out) throw std::runtime_error("CsvTable: cannot open " + filename);
    out << to_string();
    if (!out) throw std::runtime_error("CsvTable: write failed for " + filename);
}

}  // namespace rough
