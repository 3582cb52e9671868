#pragma once

#include "mbistat/descriptive.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mbistat::io {

// Minimal RFC-4180 CSV: comma delimiter, optional double-quote quoting,
// LF or CRLF line endings, header row required. Decimal point only; this
// is deliberate (no locale sniffing).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows; // ragged rows are the parser's caller's problem
  std::vector<std::size_t> row_lines;         // 1-based physical line per row
};

CsvTable parse_csv(const std::string& text); // blank lines are skipped

std::string read_file(const std::string& path);   // throws input_error
void write_file(const std::string& path, const std::string& bytes);

// Long format: columns `group,value`, exactly two distinct group tags, taken
// in order of first appearance. Diagnostics cite 1-based physical row
// numbers (header is row 1) and the column name.
std::pair<descriptive::Sample, descriptive::Sample>
read_long_csv(const std::string& path);

// Single `value` column (any single-column header accepted).
descriptive::Sample read_single_column_csv(const std::string& path,
                                           const std::string& label);

// Columns `pre,post`, positional pairing.
std::pair<descriptive::Sample, descriptive::Sample>
read_paired_csv(const std::string& path);

// Config files: `key = value` per line, '#' comments, blank lines ignored.
// Keys mirror CLI flag names without the leading dashes.
std::vector<std::pair<std::string, std::string>>
parse_key_value_config(const std::string& text);

} // namespace mbistat::io
