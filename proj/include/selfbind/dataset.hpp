#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace selfbind {

using Json = nlohmann::ordered_json;

/// Column-oriented dataset behind every CSV the CLI writes.
struct Table {
  using Value = std::variant<double, std::string>;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;

  void add_row(std::vector<Value> row);
};

enum class Format { Csv, Json };
Format parse_format(const std::string& tag);

/// 15 significant digits, scientific; "nan"/"inf" for non-finite values.
std::string format_number(double x);

void write_csv(const Table& table, std::ostream& out);
Json to_json(const Table& table);

/// Writes to `path`, or to `fallback` when path is empty or "-".
/// Throws std::runtime_error if the file cannot be written.
void emit(const Table& table, Format format, const std::string& path, std::ostream& fallback);
void emit(const Json& doc, const std::string& path, std::ostream& fallback);

}  // namespace selfbind
