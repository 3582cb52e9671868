#include "mbistat/io.hpp"

#include "mbistat/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace mbistat::io {

namespace {

// Strict numeric cell: full-string parse, '.' decimal only.
double parse_cell(const std::string& cell, std::size_t row,
                  const std::string& column) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  double value = 0.0;
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    std::ostringstream msg;
    msg << "non-numeric cell \"" << cell << "\" at row " << row << ", column "
        << column;
    throw input_error(msg.str());
  }
  return value;
}

std::size_t column_index(const CsvTable& table, const std::string& name) {
  for (std::size_t i = 0; i < table.header.size(); ++i)
    if (table.header[i] == name) return i;
  throw input_error("missing required column \"" + name + "\" in header");
}

void check_width(const std::vector<std::string>& row, std::size_t want,
                 std::size_t row_number) {
  if (row.size() != want) {
    std::ostringstream msg;
    msg << "row " << row_number << " has " << row.size() << " fields, expected "
        << want;
    throw input_error(msg.str());
  }
}

} // namespace

CsvTable parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> record_lines;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool any_field = false;
  std::size_t line = 1;
  std::size_t record_line = 1; // line where the current record starts

  auto end_field = [&] {
    record.push_back(field);
    field.clear();
    any_field = false;
  };
  auto end_record = [&] {
    end_field();
    // blank lines carry no record
    if (record.size() != 1 || !record[0].empty()) {
      records.push_back(record);
      record_lines.push_back(record_line);
    }
    record.clear();
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
        if (c == '\n') ++line; // quoted fields may span lines
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        any_field = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        ++line;
        record_line = line;
        break;
      default:
        field += c;
        any_field = true;
    }
  }
  if (in_quotes) throw input_error("unterminated quote in CSV input");
  if (any_field || !record.empty()) end_record();

  if (records.empty()) throw input_error("CSV input is empty (header row required)");
  CsvTable table;
  table.header = records.front();
  table.rows.assign(records.begin() + 1, records.end());
  table.row_lines.assign(record_lines.begin() + 1, record_lines.end());
  return table;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open \"" + path + "\" for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot open \"" + path + "\" for writing");
  out << bytes;
  if (!out) throw input_error("write to \"" + path + "\" failed");
}

std::pair<descriptive::Sample, descriptive::Sample>
read_long_csv(const std::string& path) {
  const CsvTable table = parse_csv(read_file(path));
  const std::size_t gi = column_index(table, "group");
  const std::size_t vi = column_index(table, "value");

  std::vector<std::string> order;
  std::vector<std::vector<double>> groups;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::size_t row_number = table.row_lines[r];
    check_width(table.rows[r], table.header.size(), row_number);
    const std::string& tag = table.rows[r][gi];
    const double v = parse_cell(table.rows[r][vi], row_number, "value");
    std::size_t g = 0;
    while (g < order.size() && order[g] != tag) ++g;
    if (g == order.size()) {
      order.push_back(tag);
      groups.emplace_back();
    }
    groups[g].push_back(v);
  }
  if (order.size() != 2) {
    std::ostringstream msg;
    msg << "long-format CSV \"" << path << "\" must hold exactly 2 groups, found "
        << order.size();
    throw input_error(msg.str());
  }
  return {descriptive::Sample(groups[0], order[0]),
          descriptive::Sample(groups[1], order[1])};
}

descriptive::Sample read_single_column_csv(const std::string& path,
                                           const std::string& label) {
  const CsvTable table = parse_csv(read_file(path));
  if (table.header.size() != 1)
    throw input_error("\"" + path + "\" must have a single column, found " +
                      std::to_string(table.header.size()));
  std::vector<double> values;
  values.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::size_t row_number = table.row_lines[r];
    check_width(table.rows[r], 1, row_number);
    values.push_back(parse_cell(table.rows[r][0], row_number, table.header[0]));
  }
  return descriptive::Sample(std::move(values),
                             label.empty() ? table.header[0] : label);
}

std::pair<descriptive::Sample, descriptive::Sample>
read_paired_csv(const std::string& path) {
  const CsvTable table = parse_csv(read_file(path));
  const std::size_t pi = column_index(table, "pre");
  const std::size_t qi = column_index(table, "post");
  std::vector<double> pre, post;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::size_t row_number = table.row_lines[r];
    check_width(table.rows[r], table.header.size(), row_number);
    pre.push_back(parse_cell(table.rows[r][pi], row_number, "pre"));
    post.push_back(parse_cell(table.rows[r][qi], row_number, "post"));
  }
  return {descriptive::Sample(std::move(pre), "pre"),
          descriptive::Sample(std::move(post), "post")};
}

std::vector<std::pair<std::string, std::string>>
parse_key_value_config(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_number = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw input_error("config line " + std::to_string(line_number) +
                        " is not `key = value`");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw input_error("config line " + std::to_string(line_number) +
                        " has an empty key");
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return out;
}

} // namespace mbistat::io
