#pragma once

#include <string>
#include <vector>

namespace scarlab {

// Column-oriented numeric payload shared by every tabular command.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // each row matches columns
};

// Shortest decimal form that round-trips the double exactly (stable across
// runs, so identical configurations produce byte-identical files).
std::string format_double(double v);

// CSV rendering: one leading '# config: <json>' comment carrying the full
// run configuration, a header row, then the data rows.
std::string table_to_csv(const Table& t, const std::string& config_json);

// JSON rendering: {"columns": [...], "config": {...}, "rows": [[...], ...]}
// with two-space indentation and lexicographically sorted keys.
std::string table_to_json(const Table& t, const std::string& config_json);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace scarlab
