#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "twisted/cli.hpp"

namespace twisted::cli {

std::string format_double(double x) {
  if (std::isnan(x)) return "\"nan\"";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  // Keep the value a JSON float so readers do not narrow it to an integer.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace {

void emit(std::ostringstream& os, const json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string end_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << json(it.key()).dump() << sep;
        emit(os, it.value(), indent, depth + 1);
      }
      os << nl << end_pad << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[' << nl;
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad;
        emit(os, v, indent, depth + 1);
      }
      os << nl << end_pad << ']';
      return;
    }
    case json::value_t::number_float: os << format_double(j.get<double>()); return;
    default: os << j.dump(); return;
  }
}

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::ostringstream os;
  emit(os, j, indent, 0);
  os << '\n';
  return os.str();
}

std::string to_csv(const CsvTable& table) {
  std::ostringstream os;
  for (std::size_t i = 0; i < table.header.size(); ++i) os << (i ? "," : "") << table.header[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      os << (i ? "," : "") << buf;
    }
    os << '\n';
  }
  return os.str();
}

std::string write_outputs(const ExperimentConfig& config, const RunResult& result) {
  const std::string text = dump_json(result.report);
  if (config.json_path) {
    std::ofstream out(*config.json_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + *config.json_path);
    out << text;
  }
  if (config.csv_path && result.csv) {
    std::ofstream out(*config.csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + *config.csv_path);
    out << to_csv(*result.csv);
  }
  return text;
}

}  // namespace twisted::cli
