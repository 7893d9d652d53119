#pragma once

// Row tables and their two wire forms: CSV (header row, LF endings) and a
// JSON object {"meta": ..., "rows": [...]}. Both forms render reals from
// the same 12-significant-digit text, so they carry identical numbers.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "repstat/bigint.hpp"

namespace repstat {

using Cell = std::variant<std::monostate, std::int64_t, double, BigInt, std::string, bool,
                          std::vector<std::int64_t>, std::vector<std::string>>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw ValidationError("row width does not match header");
    rows.push_back(std::move(row));
  }
};

struct TableMeta {
  std::string invocation;
  std::string version;
  std::optional<std::uint64_t> seed;
};

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
std::string join(const std::vector<T>& v, auto&& render) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += render(v[i]);
  }
  return s;
}

struct CsvText {
  std::string operator()(std::monostate) const { return ""; }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(double v) const { return format_real(v); }
  std::string operator()(const BigInt& v) const { return v.str(); }
  std::string operator()(const std::string& v) const { return csv_escape(v); }
  std::string operator()(bool v) const { return v ? "true" : "false"; }
  std::string operator()(const std::vector<std::int64_t>& v) const {
    return join(v, [](std::int64_t x) { return std::to_string(x); });
  }
  std::string operator()(const std::vector<std::string>& v) const {
    return csv_escape(join(v, [](const std::string& x) { return x; }));
  }
};

struct JsonValue {
  nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
  nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
  nlohmann::ordered_json operator()(double v) const {
    return std::strtod(format_real(v).c_str(), nullptr);
  }
  nlohmann::ordered_json operator()(const BigInt& v) const { return v.str(); }
  nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  nlohmann::ordered_json operator()(bool v) const { return v; }
  nlohmann::ordered_json operator()(const std::vector<std::int64_t>& v) const { return v; }
  nlohmann::ordered_json operator()(const std::vector<std::string>& v) const { return v; }
};

}  // namespace detail

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << detail::csv_escape(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << std::visit(detail::CsvText{}, row[i]);
    os << '\n';
  }
}

inline nlohmann::ordered_json to_json(const Table& t, const TableMeta& meta) {
  nlohmann::ordered_json doc;
  doc["meta"]["invocation"] = meta.invocation;
  doc["meta"]["version"] = meta.version;
  doc["meta"]["seed"] = meta.seed ? nlohmann::ordered_json(*meta.seed) : nlohmann::ordered_json(nullptr);
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = std::visit(detail::JsonValue{}, row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  return doc;
}

inline void write_json(std::ostream& os, const Table& t, const TableMeta& meta) {
  os << to_json(t, meta).dump(2) << '\n';
}

}  // namespace repstat
