// table_io.hpp
//
// Deterministic CSV/JSON emission: fixed column order, 12 significant
// digits, locale-independent. Identical inputs produce byte-identical files.

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "mertens/errors.hpp"

namespace mertens::io {

// 12 significant digits, locale-free (std::to_chars).
std::string format_double(double v);

using Cell = std::variant<std::string, double, long long, unsigned long long>;

class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}
    void add_row(std::vector<Cell> row);
    std::string to_csv() const;
    std::string to_json() const;       // array of objects
    size_t rows() const { return rows_.size(); }
    const std::vector<std::string>& columns() const { return columns_; }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

// Writes the full content in one shot; nothing is left behind on failure.
void write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

} // namespace mertens::io
