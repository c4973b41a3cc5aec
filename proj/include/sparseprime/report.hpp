#pragma once

// ---------------------------------------------------------------------------
// report: deterministic serialization shared by the CLI and the test drivers.
// CSV is RFC-4180 style (header row, '.' decimal, LF line endings); JSON uses
// insertion order.  Doubles go through to_chars so output never depends on
// locale or printf state.
// ---------------------------------------------------------------------------

#include <string>
#include <vector>

#include "json.hpp"

namespace sparseprime::report {

using ordered_json = nlohmann::ordered_json;

// Shortest decimal string that round-trips to the same double.
std::string fmt_double(double x);

// Quotes a field iff it contains a comma, quote, CR or LF; doubles
// embedded quotes.
std::string csv_escape(const std::string& field);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string to_string() const;  // header + rows, LF endings, trailing LF
};

// 2-space indent, trailing LF; doubles inside j must already be numbers
// (nlohmann serializes them via to_chars shortest form).
std::string json_to_string(const ordered_json& j);

// Writes content to path ("-" means stdout).
void write_text(const std::string& path, const std::string& content);

}  // namespace sparseprime::report
