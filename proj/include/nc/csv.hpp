#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nc/report.hpp"

namespace nc::csv {

inline std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

/// Parses UTF-8 CSV text into rows of trimmed cells. Supports double-quoted
/// cells with "" escapes; blank lines are skipped.
inline std::vector<std::vector<std::string>> parse(std::string_view text,
                                                   std::string_view origin = "<csv>") {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool cell_was_quoted = false;
  int line = 1;

  auto end_cell = [&] {
    row.push_back(cell_was_quoted ? cell : trim(cell));
    cell.clear();
    cell_was_quoted = false;
  };
  auto end_row = [&] {
    end_cell();
    bool blank = row.size() == 1 && row[0].empty();
    if (!blank) rows.push_back(std::move(row));
    row.clear();
  };

  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
        if (c == '\n') ++line;
      }
    } else if (c == '"' && trim(cell).empty()) {
      quoted = true;
      cell_was_quoted = true;
      cell.clear();
    } else if (c == ',') {
      end_cell();
    } else if (c == '\n') {
      end_row();
      ++line;
    } else if (c != '\r') {
      cell += c;
    }
  }
  if (quoted)
    throw error(std::string(origin) + ":" + std::to_string(line) + ": unterminated quote");
  if (!cell.empty() || !row.empty()) end_row();
  return rows;
}

inline std::string quote_if_needed(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string write(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += quote_if_needed(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace nc::csv
