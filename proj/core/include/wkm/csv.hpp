#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace wkm::csv {

struct Row {
    /// 1-based line number in the source (the header is line 1).
    std::size_t line = 0;
    std::vector<std::string> fields;
};

/// Splits one record; double-quoted fields may hold commas and "" escapes.
std::vector<std::string> split_record(std::string_view line);

/// Reads a table whose header must equal `header` exactly. Accepts LF or
/// CRLF endings and a leading UTF-8 BOM; skips blank lines. Throws
/// ParseError naming the source and row.
std::vector<Row> read_table(std::istream& in, const std::string& source, const std::vector<std::string_view>& header);

/// Strict decimal parse of a finite number ('.' separator, no grouping).
double parse_number(const std::string& text, const std::string& source, std::size_t line, std::string_view column);

/// Quotes a field if it contains a comma, quote or line break.
std::string escape(std::string_view field);

/// "source: row N, column 'c'"
std::string where(const std::string& source, std::size_t line, std::string_view column = {});

}  // namespace wkm::csv
