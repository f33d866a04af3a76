#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace faircss::csv {

struct Record {
  std::size_t line = 0;  // 1-based line on which the record starts
  std::vector<std::string> fields;
};

/// Reads RFC 4180 CSV: comma separated, optional double-quoted fields with
/// "" as an escaped quote, CRLF or LF line endings, quoted line breaks.
/// Completely empty lines are skipped. Throws DataError(malformed_csv) on an
/// unterminated quote or stray characters after a closing quote.
std::vector<Record> read(std::istream& in);

/// Quotes a field only when it contains a comma, quote or line break.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace faircss::csv
