#ifndef RTRACK_CSV_HPP_
#define RTRACK_CSV_HPP_

// Minimal CSV reading for the project's flat, comma-separated numeric files.
// No quoting support: none of the file formats carry free text with commas.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rtrack/errors.hpp"

namespace rtrack::csv {

struct Row {
  std::size_t line = 0;  // 1-based line number in the source
  std::vector<std::string> fields;
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;
};

inline std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    std::string_view f = line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) f.remove_suffix(1);
    out.emplace_back(f);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline Table parse(std::istream& in, const std::string& source) {
  Table t;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!have_header) {
      t.header = split(line);
      have_header = true;
      continue;
    }
    t.rows.push_back({lineno, split(line)});
  }
  if (!have_header) throw LoadError(source + ": missing CSV header");
  return t;
}

inline Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path + ": cannot open file");
  return parse(in, path);
}

inline void expect_header(const Table& t, const std::vector<std::string>& expected, const std::string& source) {
  if (t.header != expected) {
    std::string want;
    for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
    throw LoadError(source + ": expected header '" + want + "'");
  }
}

inline double to_double(const std::string& s, const Row& row, const std::string& column, const std::string& source) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (s.empty() || res.ec != std::errc() || res.ptr != last) {
    throw LoadError(source + ": row at line " + std::to_string(row.line) + ": column '" + column +
                    "' is not a number ('" + s + "')");
  }
  return v;
}

/// Shortest representation that parses back to the identical binary64 value.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace rtrack::csv

#endif  // RTRACK_CSV_HPP_
