#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"

namespace microrib {

/// Shortest decimal that round-trips; locale independent. NaN renders as "nan".
inline std::string fmt(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

/// CSV text with `#` comment lines, a header and rows of cells.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void comment(const std::string& line) { comments_.push_back(line); }

    void row(std::initializer_list<std::string> cells) { rows_.emplace_back(cells); }
    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
    void row(std::initializer_list<double> values)
    {
        std::vector<std::string> cells;
        for (double v : values)
            cells.push_back(fmt(v));
        rows_.push_back(std::move(cells));
    }

    std::size_t size() const { return rows_.size(); }

    std::string str() const
    {
        std::ostringstream os;
        for (const auto& c : comments_)
            os << "# " << c << '\n';
        write_line(os, header_);
        for (const auto& r : rows_)
            write_line(os, r);
        return os.str();
    }

private:
    static void write_line(std::ostream& os, const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i)
            os << (i ? "," : "") << cells[i];
        os << '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::string> comments_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes through a sibling temporary file and renames it over `path`.
inline void write_atomic(const std::string& path, const std::string& content)
{
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw input_error("write_failed", tmp);
        out << content;
        out.flush();
        if (!out)
            throw input_error("write_failed", tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw input_error("write_failed", path);
    }
}

} // namespace microrib
