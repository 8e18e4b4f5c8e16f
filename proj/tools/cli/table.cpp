#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "cli/cli.hpp"

namespace lfs::cli {
namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

// JSON has no inf/nan; they become null.
std::string json_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    return std::isfinite(*d) ? format_number(*d) : std::string("null");
  }
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return nlohmann::json(std::get<std::string>(c)).dump();
}

}  // namespace

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::out_of_range("no column '" + name + "'");
}

double Table::number(std::size_t row, const std::string& name) const {
  const Cell& c = rows.at(row).at(column(name));
  if (const double* d = std::get_if<double>(&c)) return *d;
  if (const long long* i = std::get_if<long long>(&c)) return static_cast<double>(*i);
  throw std::invalid_argument("column '" + name + "' is not numeric");
}

std::string Table::text(std::size_t row, const std::string& name) const {
  return csv_cell(rows.at(row).at(column(name)));
}

Table merge_tables(const std::vector<Table>& parts, const std::vector<std::string>& labels) {
  if (parts.size() == 1 && labels.front().empty()) return parts.front();
  Table out;
  out.columns.push_back("case");
  out.columns.insert(out.columns.end(), parts.front().columns.begin(), parts.front().columns.end());
  out.meta = nlohmann::json::object();
  out.meta["cases"] = nlohmann::json::array();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].columns != parts.front().columns) {
      throw std::invalid_argument("cases produce tables of different shapes");
    }
    nlohmann::json m = parts[i].meta;
    m["label"] = labels[i];
    out.meta["cases"].push_back(m);
    for (const auto& r : parts[i].rows) {
      std::vector<Cell> row{labels[i]};
      row.insert(row.end(), r.begin(), r.end());
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

void write_csv(const Table& t, std::ostream& out) {
  out << "# " << t.meta.dump() << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

void write_json(const Table& t, std::ostream& out) {
  out << "{\n  \"meta\": " << t.meta.dump() << ",\n  \"columns\": " << nlohmann::json(t.columns).dump()
      << ",\n  \"rows\": [";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << (r ? ",\n    [" : "\n    [");
    for (std::size_t i = 0; i < t.rows[r].size(); ++i) out << (i ? ", " : "") << json_cell(t.rows[r][i]);
    out << ']';
  }
  out << (t.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

}  // namespace lfs::cli
