#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wvsim/errors.hpp"

namespace wvsim {
namespace table {

enum class ColType { text, integer, real };

struct Column {
  std::string name;
  ColType type;
};

using Cell = std::variant<std::string, long long, double>;

inline const char* type_name(ColType t) {
  switch (t) {
    case ColType::text: return "text";
    case ColType::integer: return "int";
    case ColType::real: return "real";
  }
  return "?";
}

inline ColType type_from_name(const std::string& s, int line) {
  if (s == "text") return ColType::text;
  if (s == "int") return ColType::integer;
  if (s == "real") return ColType::real;
  throw ParseError(line, s, "unknown column type");
}

// Reals are printed with 17 significant digits, which round-trips every
// double exactly; that is what makes emitted files re-parseable into the
// identical table.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Typed rows under named columns plus an ordered metadata block (config
// echo, version, seed). Equality is exact, including metadata order; the
// serialization round-trip tests rely on it.
class ResultTable {
 public:
  explicit ResultTable(std::vector<Column> cols) : cols_(std::move(cols)) {
    if (cols_.empty()) throw ValidationError("columns", "table needs at least one column");
  }

  void add_meta(std::string key, std::string value) {
    meta_.emplace_back(std::move(key), std::move(value));
  }

  void add_row(std::vector<Cell> row) {
    if (row.size() != cols_.size())
      throw ValidationError("row", "cell count does not match column count");
    for (std::size_t i = 0; i < row.size(); ++i) {
      const bool ok = (cols_[i].type == ColType::text && row[i].index() == 0) ||
                      (cols_[i].type == ColType::integer && row[i].index() == 1) ||
                      (cols_[i].type == ColType::real && row[i].index() == 2);
      if (!ok)
        throw ValidationError(cols_[i].name, "cell type does not match column type");
    }
    rows_.push_back(std::move(row));
  }

  const std::vector<Column>& columns() const { return cols_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& meta() const { return meta_; }

  bool operator==(const ResultTable& o) const {
    if (meta_ != o.meta_ || cols_.size() != o.cols_.size() || rows_ != o.rows_) return false;
    for (std::size_t i = 0; i < cols_.size(); ++i)
      if (cols_[i].name != o.cols_[i].name || cols_[i].type != o.cols_[i].type) return false;
    return true;
  }

 private:
  std::vector<Column> cols_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, std::string>> meta_;
};

namespace detail {

inline bool needs_quoting(const std::string& s) {
  // Empty cells must be quoted: a lone empty cell would otherwise serialize
  // as a blank line, which the reader skips.
  return s.empty() || s.find_first_of(",\"\n\r") != std::string::npos;
}

inline std::string csv_quote(const std::string& s) {
  if (!needs_quoting(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Splits one CSV line honoring double-quote escaping.
inline std::vector<std::string> csv_split(const std::string& line, int lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      if (!cur.empty()) throw ParseError(lineno, cur, "stray quote inside cell");
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ParseError(lineno, cur, "unterminated quoted cell");
  out.push_back(std::move(cur));
  return out;
}

inline long long parse_int_cell(const std::string& s, int lineno, const std::string& col) {
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size())
    throw ParseError(lineno, col, "not an integer: '" + s + "'");
  return v;
}

inline double parse_real_cell(const std::string& s, int lineno, const std::string& col) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw ParseError(lineno, col, "not a real number: '" + s + "'");
  return v;
}

}  // namespace detail

// Layout: `# key = value` metadata lines, a `name:type` header, then rows.
inline std::string to_csv(const ResultTable& t) {
  std::ostringstream out;
  for (const auto& [k, v] : t.meta()) out << "# " << k << " = " << v << "\n";
  for (std::size_t i = 0; i < t.columns().size(); ++i) {
    if (i) out << ",";
    out << detail::csv_quote(t.columns()[i].name + ":" + type_name(t.columns()[i].type));
  }
  out << "\n";
  for (const auto& row : t.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      switch (row[i].index()) {
        case 0: out << detail::csv_quote(std::get<std::string>(row[i])); break;
        case 1: out << std::get<long long>(row[i]); break;
        case 2: out << format_real(std::get<double>(row[i])); break;
      }
    }
    out << "\n";
  }
  return out.str();
}

inline ResultTable from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<Column> cols;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ParseError(lineno, line, "metadata line without '='");
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t");
        const auto b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
      };
      meta.emplace_back(trim(line.substr(1, eq - 1)), trim(line.substr(eq + 1)));
      continue;
    }
    for (const std::string& h : detail::csv_split(line, lineno)) {
      const auto colon = h.rfind(':');
      if (colon == std::string::npos)
        throw ParseError(lineno, h, "header cell without ':type'");
      cols.push_back({h.substr(0, colon), type_from_name(h.substr(colon + 1), lineno)});
    }
    break;
  }
  if (cols.empty()) throw ParseError(lineno, "", "no header line found");

  ResultTable t(cols);
  for (const auto& [k, v] : meta) t.add_meta(k, v);
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = detail::csv_split(line, lineno);
    if (cells.size() != cols.size())
      throw ParseError(lineno, line, "wrong cell count");
    std::vector<Cell> row;
    row.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      switch (cols[i].type) {
        case ColType::text: row.emplace_back(cells[i]); break;
        case ColType::integer:
          row.emplace_back(detail::parse_int_cell(cells[i], lineno, cols[i].name));
          break;
        case ColType::real:
          row.emplace_back(detail::parse_real_cell(cells[i], lineno, cols[i].name));
          break;
      }
    }
    t.add_row(std::move(row));
  }
  return t;
}

// JSON mirror of the CSV content. Metadata is a list of [key, value] pairs
// to keep its order; cells rely on the library's exact double round-trip.
inline std::string to_json(const ResultTable& t) {
  nlohmann::ordered_json j;
  j["meta"] = nlohmann::ordered_json::array();
  for (const auto& [k, v] : t.meta()) j["meta"].push_back({k, v});
  j["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : t.columns())
    j["columns"].push_back({{"name", c.name}, {"type", type_name(c.type)}});
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows()) {
    nlohmann::ordered_json jr = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      switch (cell.index()) {
        case 0: jr.push_back(std::get<std::string>(cell)); break;
        case 1: jr.push_back(std::get<long long>(cell)); break;
        case 2: jr.push_back(std::get<double>(cell)); break;
      }
    }
    j["rows"].push_back(std::move(jr));
  }
  return j.dump(2) + "\n";
}

inline ResultTable from_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, "json", e.what());
  }
  try {
    std::vector<Column> cols;
    for (const auto& c : j.at("columns"))
      cols.push_back({c.at("name").get<std::string>(),
                      type_from_name(c.at("type").get<std::string>(), 0)});
    ResultTable t(cols);
    for (const auto& m : j.at("meta"))
      t.add_meta(m.at(0).get<std::string>(), m.at(1).get<std::string>());
    for (const auto& jr : j.at("rows")) {
      if (jr.size() != cols.size()) throw ParseError(0, "rows", "wrong cell count");
      std::vector<Cell> row;
      for (std::size_t i = 0; i < jr.size(); ++i) {
        switch (cols[i].type) {
          case ColType::text: row.emplace_back(jr[i].get<std::string>()); break;
          case ColType::integer: row.emplace_back(jr[i].get<long long>()); break;
          case ColType::real: row.emplace_back(jr[i].get<double>()); break;
        }
      }
      t.add_row(std::move(row));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, "json", e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  out << text;
  if (!out) throw Error("short write to output file: " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace table
}  // namespace wvsim
