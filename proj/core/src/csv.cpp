#include "wkm/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "wkm/error.hpp"

namespace wkm::csv {

std::vector<std::string> split_record(std::string_view line) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    out.push_back(std::move(field));
    return out;
}

std::string where(const std::string& source, std::size_t line, std::string_view column) {
    std::string s = source + ": row " + std::to_string(line);
    if (!column.empty()) {
        s += ", column '" + std::string(column) + "'";
    }
    return s;
}

std::vector<Row> read_table(std::istream& in, const std::string& source,
                            const std::vector<std::string_view>& header) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!have_header) {
            if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) {
                line.erase(0, 3);
            }
            const auto got = split_record(line);
            const bool match = std::equal(got.begin(), got.end(), header.begin(), header.end());
            if (!match) {
                std::string expected;
                for (auto h : header) {
                    expected += (expected.empty() ? "" : ",") + std::string(h);
                }
                throw Error(ErrorKind::ParseError,
                            where(source, line_no, "") + ": expected header '" + expected + "', got '" + line + "'");
            }
            have_header = true;
            continue;
        }
        if (line.empty()) {
            continue;
        }
        auto fields = split_record(line);
        if (fields.size() != header.size()) {
            throw Error(ErrorKind::ParseError,
                        where(source, line_no, "") + ": expected " + std::to_string(header.size()) +
                            " fields, got " + std::to_string(fields.size()));
        }
        rows.push_back({line_no, std::move(fields)});
    }
    if (!have_header) {
        throw Error(ErrorKind::ParseError, source + ": missing header row");
    }
    return rows;
}

double parse_number(const std::string& text, const std::string& source, std::size_t line,
                    std::string_view column) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty() || !std::isfinite(value)) {
        throw Error(ErrorKind::ParseError,
                    where(source, line, column) + ": not a number: '" + text + "'");
    }
    return value;
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace wkm::csv
