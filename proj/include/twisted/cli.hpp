#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "twisted/crossed.hpp"

namespace twisted::cli {

using json = nlohmann::json;

// Bad config: unknown tags, missing fields, out-of-range parameters. Exit status 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  json system;  // {"preset": name} or {algebra, group, action, cocycle}
  std::string kind;
  json params = json::object();
  std::optional<std::string> json_path;
  std::optional<std::string> csv_path;
};

ExperimentConfig parse_config(const json& doc);
ExperimentConfig load_config(const std::string& path);

std::vector<std::string> preset_names();
std::string preset_description(const std::string& name);
json preset_system(const std::string& name);

sys::SystemPtr build_system(const json& block);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct RunResult {
  json report;
  int status = 0;  // 0 pass, 2 invariant violation
  std::optional<CsvTable> csv;
};

const std::vector<std::string>& experiment_kinds();
RunResult run_experiment(const ExperimentConfig& config);

// Sorted keys, doubles with 17 significant digits, non-finite doubles as strings.
std::string dump_json(const json& j, int indent = 2);
std::string format_double(double x);
std::string to_csv(const CsvTable& table);

// Writes the report and the CSV table to the configured paths; returns the report text.
std::string write_outputs(const ExperimentConfig& config, const RunResult& result);

}  // namespace twisted::cli
