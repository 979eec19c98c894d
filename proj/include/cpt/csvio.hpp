#pragma once
// CSV reading and writing. RFC-4180 style: first row is the header, fields
// separated by commas, quotes escape commas/quotes/newlines, CRLF accepted.
// Parse failures throw DataError with the 1-based line number.

#include <optional>
#include <string>
#include <vector>

#include "cpt/series.hpp"

namespace cpt {

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int col_index(const std::string& name) const;  // -1 when absent
  // Column as numbers; non-numeric cells throw DataError naming the column
  // and data line.
  RealSeries numeric_column(const std::string& name) const;
};

Csv read_csv_text(const std::string& text);
Csv read_csv_file(const std::string& path);

std::string csv_escape(const std::string& field);
void write_csv_file(const std::string& path, const Csv& csv);

// Fixed-format numeric cell: shortest round-trippable decimal via %.17g is
// overkill for reports; we use %.12g everywhere for stable, diffable output.
std::string fmt_num(double v);

// Flat key=value file ('#' comments, blank lines ignored); duplicate keys
// throw DataError naming the key, as do malformed lines (line number).
std::vector<std::pair<std::string, std::string>> read_kv_file(
    const std::string& path);
std::vector<std::pair<std::string, std::string>> read_kv_text(
    const std::string& text);

}  // namespace cpt
