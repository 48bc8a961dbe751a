#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "twisted/cli.hpp"
#include "twisted/kernels.hpp"
#include "twisted/multipliers.hpp"

namespace tc = twisted::cli;

namespace {

int execute(const std::string& path, std::optional<std::uint64_t> seed, bool validate_only) {
  tc::ExperimentConfig config = tc::load_config(path);
  if (seed) config.seed = *seed;
  if (validate_only) {
    config.kind = "validate";
    config.params = tc::json::object();
  }
  const tc::RunResult result = tc::run_experiment(config);
  const std::string text = tc::write_outputs(config, result);
  if (!config.json_path) std::cout << text;
  if (result.status != 0) std::cerr << "invariant violation; see the report\n";
  return result.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fourier analysis experiments in reduced twisted crossed products"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "override the config seed");

  std::string run_path, validate_path, preset_name;
  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", run_path, "config path")->required();
  auto* validate = app.add_subcommand("validate", "build the configured system and validate it");
  validate->add_option("config", validate_path, "config path")->required();
  auto* presets = app.add_subcommand("presets", "list or show the named systems");
  presets->require_subcommand(1);
  auto* list = presets->add_subcommand("list", "list preset names");
  auto* show = presets->add_subcommand("show", "print a preset system block");
  show->add_option("name", preset_name, "preset name")->required();
  auto* info = app.add_subcommand("info", "print the active kernel ISA and experiment kinds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*run) return execute(run_path, seed, false);
    if (*validate) return execute(validate_path, seed, true);
    if (*list) {
      for (const auto& name : tc::preset_names()) std::cout << name << "  " << tc::preset_description(name) << '\n';
      return 0;
    }
    if (*show) {
      std::cout << tc::dump_json(tc::preset_system(preset_name));
      return 0;
    }
    if (*info) {
      std::cout << "kernels: " << twisted::kernels::isa_name(twisted::kernels::active().isa) << '\n';
      for (const auto& k : tc::experiment_kinds()) std::cout << "experiment: " << k << '\n';
      return 0;
    }
  } catch (const tc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const twisted::mult::ConditionViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
