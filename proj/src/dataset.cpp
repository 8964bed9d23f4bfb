#include "selfbind/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace selfbind {

void Table::add_row(std::vector<Value> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("row width does not match the column count");
  rows.push_back(std::move(row));
}

Format parse_format(const std::string& tag) {
  if (tag == "csv") return Format::Csv;
  if (tag == "json") return Format::Json;
  throw std::invalid_argument("unknown format '" + tag + "'");
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.14e", x);
  return buf;
}

static void write_cell(const Table::Value& v, std::ostream& out) {
  if (const auto* d = std::get_if<double>(&v))
    out << format_number(*d);
  else
    out << std::get<std::string>(v);
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      write_cell(row[i], out);
    }
    out << '\n';
  }
}

Json to_json(const Table& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (const auto* d = std::get_if<double>(&row[i]))
        obj[table.columns[i]] = std::isfinite(*d) ? Json(*d) : Json(nullptr);
      else
        obj[table.columns[i]] = std::get<std::string>(row[i]);
    }
    rows.push_back(std::move(obj));
  }
  return Json{{"columns", table.columns}, {"rows", std::move(rows)}};
}

template <typename Writer>
static void with_stream(const std::string& path, std::ostream& fallback, Writer&& write) {
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  write(file);
  if (!file) throw std::runtime_error("error while writing '" + path + "'");
}

void emit(const Table& table, Format format, const std::string& path, std::ostream& fallback) {
  with_stream(path, fallback, [&](std::ostream& os) {
    if (format == Format::Csv)
      write_csv(table, os);
    else
      os << to_json(table).dump(2) << '\n';
  });
}

void emit(const Json& doc, const std::string& path, std::ostream& fallback) {
  with_stream(path, fallback, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

}  // namespace selfbind
