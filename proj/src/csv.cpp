#include "faircss/csv.hpp"

#include "faircss/errors.hpp"

namespace faircss::csv {

std::vector<Record> read(std::istream& in) {
  std::vector<Record> records;
  Record current;
  std::string field;
  std::size_t line = 1;
  bool in_quotes = false;
  bool after_quote = false;  // just closed a quoted field
  bool record_started = false;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    after_quote = false;
  };
  auto end_record = [&] {
    if (record_started) {
      end_field();
      records.push_back(std::move(current));
    }
    current = Record{};
    record_started = false;
  };

  char ch = 0;
  while (in.get(ch)) {
    if (!record_started) {
      if (ch == '\n') {
        ++line;
        continue;
      }
      if (ch == '\r') continue;
      record_started = true;
      current.line = line;
    }
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field.push_back('"');
        } else {
          in_quotes = false;
          after_quote = true;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case ',':
        end_field();
        break;
      case '\r':
        if (in.peek() != '\n') {
          throw DataError(DataErrorCode::malformed_csv, "bare carriage return", line);
        }
        break;
      case '\n':
        end_record();
        ++line;
        break;
      case '"':
        if (!field.empty() || after_quote) {
          throw DataError(DataErrorCode::malformed_csv,
                          "quote inside an unquoted field on line " + std::to_string(line),
                          line);
        }
        in_quotes = true;
        break;
      default:
        if (after_quote) {
          throw DataError(DataErrorCode::malformed_csv,
                          "text after closing quote on line " + std::to_string(line), line);
        }
        field.push_back(ch);
    }
  }
  if (in_quotes) {
    throw DataError(DataErrorCode::malformed_csv,
                    "unterminated quoted field starting before line " +
                        std::to_string(line),
                    line);
  }
  end_record();
  return records;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

}  // namespace faircss::csv
