#pragma once

#include <string>
#include <vector>

namespace tempoclust {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // every row matches header width
  std::vector<std::size_t> row_lines;          // 1-based source line per row
};

// RFC 4180 subset: quoted fields, "" escapes, LF or CRLF. Rows narrower or
// wider than the header are rejected. `source` names the input in errors.
CsvTable parse_csv(const std::string& text, const std::string& source);

std::string csv_escape(const std::string& field);
std::string csv_join(const std::vector<std::string>& fields);

}  // namespace tempoclust
