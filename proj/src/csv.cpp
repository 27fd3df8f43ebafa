#include "tempoclust/csv.hpp"

#include <sstream>

#include "tempoclust/error.hpp"

namespace tempoclust {

namespace {

std::string loc_str(const std::string& source, std::size_t line) {
  std::ostringstream os;
  os << source << ":" << line;
  return os.str();
}

}  // namespace

CsvTable parse_csv(const std::string& text, const std::string& source) {
  CsvTable table;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  std::size_t row_line = 1;

  auto end_field = [&] {
    row.push_back(field);
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    if (row.size() == 1 && row[0].empty()) {
      row.clear();  // blank line
      return;
    }
    if (table.header.empty()) {
      table.header = row;
    } else {
      if (row.size() != table.header.size()) {
        throw ParseError(loc_str(source, row_line) + ": expected " +
                         std::to_string(table.header.size()) + " fields, got " +
                         std::to_string(row.size()));
      }
      table.rows.push_back(row);
      table.row_lines.push_back(row_line);
    }
    row.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field.empty() && !field_started) {
          in_quotes = true;
          field_started = true;
        } else {
          throw ParseError(loc_str(source, line) + ": stray quote inside field");
        }
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;  // CRLF tolerated
      case '\n':
        end_row();
        ++line;
        row_line = line;
        break;
      default:
        field += c;
        field_started = true;
        break;
    }
  }
  if (in_quotes) {
    throw ParseError(loc_str(source, line) + ": unterminated quoted field");
  }
  if (field_started || !field.empty() || !row.empty()) {
    end_row();
  }
  if (table.header.empty()) {
    throw ParseError(source + ": empty document");
  }
  return table;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(fields[i]);
  }
  out += '\n';
  return out;
}

}  // namespace tempoclust
