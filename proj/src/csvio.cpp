#include "cpt/csvio.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "detail.hpp"

namespace cpt {

using detail::fmt_msg;

int Csv::col_index(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return int(i);
  return -1;
}

RealSeries Csv::numeric_column(const std::string& name) const {
  const int c = col_index(name);
  if (c < 0) throw DataError("column '" + name + "' not found in header");
  RealSeries out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (std::size_t(c) >= rows[r].size())
      throw DataError(fmt_msg("row %zu is missing column '%s'", r + 2,
                              name.c_str()));
    const std::string& cell = rows[r][std::size_t(c)];
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (cell.empty() || end != cell.c_str() + cell.size())
      throw DataError(fmt_msg("non-numeric cell '%s' in column '%s', line %zu",
                              cell.c_str(), name.c_str(), r + 2));
    out.push_back(v);
  }
  return out;
}

// Incremental RFC-4180 scanner. Line numbers count physical lines so quoted
// embedded newlines advance them too.
Csv read_csv_text(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  std::size_t line = 1;
  std::size_t record_line = 1;

  auto end_field = [&]() {
    record.push_back(field);
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&]() {
    end_field();
    // skip blank lines outside quotes
    if (!(record.size() == 1 && record[0].empty())) records.push_back(record);
    record.clear();
    record_line = line;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (!field.empty() || field_was_quoted)
          throw DataError(
              fmt_msg("CSV parse error at line %zu: quote inside an unquoted "
                      "field",
                      line));
        in_quotes = true;
        field_was_quoted = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;  // CRLF
        ++line;
        end_record();
        break;
      case '\n':
        ++line;
        end_record();
        break;
      default:
        if (field_was_quoted)
          throw DataError(fmt_msg(
              "CSV parse error at line %zu: data after a closing quote", line));
        field.push_back(ch);
    }
  }
  if (in_quotes)
    throw DataError(fmt_msg(
        "CSV parse error at line %zu: unterminated quoted field", record_line));
  if (!field.empty() || field_was_quoted || !record.empty()) end_record();

  if (records.empty()) throw DataError("CSV has no header row");
  Csv csv;
  csv.header = records.front();
  csv.rows.assign(records.begin() + 1, records.end());
  const std::size_t width = csv.header.size();
  for (std::size_t r = 0; r < csv.rows.size(); ++r)
    if (csv.rows[r].size() != width)
      throw DataError(
          fmt_msg("CSV parse error at line %zu: %zu fields, header has %zu",
                  r + 2, csv.rows[r].size(), width));
  return csv;
}

Csv read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_csv_text(buf.str());
}

std::string csv_escape(const std::string& field) {
  const bool need =
      field.find_first_of(",\"\r\n") != std::string::npos;
  if (!need) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

void write_csv_file(const std::string& path, const Csv& csv) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  auto write_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(row[i]);
    }
    out << '\n';
  };
  write_row(csv.header);
  for (const auto& row : csv.rows) write_row(row);
  if (!out) throw DataError("write failed for '" + path + "'");
}

std::string fmt_num(double v) {
  char buf[48];
  snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::pair<std::string, std::string>> read_kv_text(
    const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      throw DataError(
          fmt_msg("manifest line %zu is not key=value: '%s'", line, s.c_str()));
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    for (const auto& [k, v] : out)
      if (k == key)
        throw DataError(fmt_msg("duplicate manifest key '%s' at line %zu",
                                key.c_str(), line));
    out.emplace_back(key, val);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_kv_file(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_kv_text(buf.str());
}

}  // namespace cpt
