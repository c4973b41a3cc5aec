#include "sparseprime/report.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "sparseprime/errors.hpp"
#include "sparseprime/parallel.hpp"

namespace sparseprime {

namespace {
int g_thread_override = 0;
}

int thread_count() {
  if (g_thread_override > 0) return g_thread_override;
  if (const char* env = std::getenv("SPARSEPRIME_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void set_thread_count(int n) { g_thread_override = n > 0 ? n : 0; }

}  // namespace sparseprime

namespace sparseprime::report {

std::string fmt_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string csv_escape(const std::string& field) {
  bool needs_quotes = field.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void CsvTable::add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }

std::string CsvTable::to_string() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(fields[i]);
    }
    out += '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  return out;
}

std::string json_to_string(const ordered_json& j) { return j.dump(2) + "\n"; }

void write_text(const std::string& path, const std::string& content) {
  if (path == "-" || path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open output file: " + path);
  f << content;
}

}  // namespace sparseprime::report
