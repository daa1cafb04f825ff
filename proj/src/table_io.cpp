// table_io.cpp

#include "mertens/table_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mertens::io {

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

namespace {

std::string cell_to_string(const Cell& c) {
    if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
    if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    return std::to_string(std::get<unsigned long long>(c));
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch);
    }
    return out;
}

} // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size())
        throw PreconditionError("Table::add_row: column count mismatch");
    rows_.push_back(std::move(row));
}

std::string Table::to_csv() const {
    std::ostringstream out;
    for (size_t i = 0; i < columns_.size(); ++i)
        out << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
    for (const auto& r : rows_)
        for (size_t i = 0; i < r.size(); ++i)
            out << cell_to_string(r[i]) << (i + 1 < r.size() ? "," : "\n");
    return out.str();
}

std::string Table::to_json() const {
    std::ostringstream out;
    out << "[\n";
    for (size_t k = 0; k < rows_.size(); ++k) {
        out << "  {";
        for (size_t i = 0; i < columns_.size(); ++i) {
            const Cell& c = rows_[k][i];
            out << "\"" << json_escape(columns_[i]) << "\": ";
            if (std::holds_alternative<std::string>(c))
                out << "\"" << json_escape(std::get<std::string>(c)) << "\"";
            else
                out << cell_to_string(c);
            if (i + 1 < columns_.size()) out << ", ";
        }
        out << "}" << (k + 1 < rows_.size() ? "," : "") << "\n";
    }
    out << "]\n";
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f.write(content.data(), (std::streamsize)content.size());
    f.flush();
    if (!f) throw IoError("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace mertens::io
