#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qconfine::app {

/// One output cell. Empty cells print as nothing in CSV and null in JSON.
using Cell = std::variant<std::monostate, long long, double, bool, std::string>;

/// Fixed 12-significant-digit rendering, so identical runs give identical bytes.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  } visit;
  return std::visit(visit, c);
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string json_cell(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return "null";
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? format_number(*d) : "null";
  if (const auto* s = std::get_if<std::string>(&c)) return nlohmann::json(*s).dump();
  return cell_text(c);
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    return columns.size();
  }
};

enum class Format { csv, jsonl };

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_escape(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(cell_text(row[i]));
    os << '\n';
  }
}

inline void write_jsonl(std::ostream& os, const Table& t) {
  for (const auto& row : t.rows) {
    os << '{';
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << nlohmann::json(t.columns[i]).dump() << ':' << json_cell(row[i]);
    os << "}\n";
  }
}

inline void write_table(std::ostream& os, const Table& t, Format f) {
  if (f == Format::csv)
    write_csv(os, t);
  else
    write_jsonl(os, t);
}

/// (x, y, series) triplets: one series per numeric column outside `keys`,
/// labelled by the key cells of its row and the column name.
inline Table plot_data(const Table& t, const std::string& x_column, const std::vector<std::string>& keys) {
  Table out;
  out.columns = {"x", "y", "series"};
  const std::size_t xi = t.column(x_column);
  if (xi == t.columns.size()) return out;
  std::set<std::string> skip(keys.begin(), keys.end());
  skip.insert(x_column);
  for (const auto& row : t.rows) {
    const auto* x = std::get_if<double>(&row[xi]);
    if (!x) continue;
    std::string label;
    for (const auto& k : keys) {
      const std::size_t ki = t.column(k);
      if (ki < t.columns.size()) label += k + "=" + cell_text(row[ki]) + ";";
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      if (skip.count(t.columns[i])) continue;
      if (const auto* y = std::get_if<double>(&row[i])) out.rows.push_back({*x, *y, label + t.columns[i]});
    }
  }
  return out;
}

}  // namespace qconfine::app
