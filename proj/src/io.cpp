#include "scarlab/io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace scarlab {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  return fmt::format("{}", v);
}

std::string table_to_csv(const Table& t, const std::string& config_json) {
  std::string out = fmt::format("# config: {}\n", config_json);
  out += fmt::format("{}\n", fmt::join(t.columns, ","));
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size())
      throw std::logic_error("table row width does not match the header");
    std::string line;
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) line += ',';
      line += format_double(row[i]);
    }
    out += line;
    out += '\n';
  }
  return out;
}

std::string table_to_json(const Table& t, const std::string& config_json) {
  nlohmann::json doc;
  doc["config"] = nlohmann::json::parse(config_json);
  doc["columns"] = t.columns;
  auto rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    if (row.size() != t.columns.size())
      throw std::logic_error("table row width does not match the header");
    rows.push_back(row);
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  f << content;
  if (!f.flush())
    throw std::runtime_error(fmt::format("write to '{}' failed", path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace scarlab
