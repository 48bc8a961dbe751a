#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "twisted/cli.hpp"
#include "twisted/multipliers.hpp"

using namespace twisted;
using cli::json;

namespace {

std::string data(const std::string& name) { return std::string(TWISTED_TEST_DATA) + "/" + name; }

cli::ExperimentConfig config(const std::string& preset, const std::string& kind, json params = json::object(),
                             std::uint64_t seed = 3) {
  return cli::parse_config(json{{"seed", seed},
                                {"system", {{"preset", preset}}},
                                {"experiment", {{"kind", kind}, {"params", std::move(params)}}}});
}

}  // namespace

TEST(Cli, FormatDouble) {
  EXPECT_EQ(cli::format_double(2.0), "2.0");
  EXPECT_EQ(cli::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(cli::format_double(1e300), "1.0000000000000001e+300");
  EXPECT_EQ(cli::format_double(std::numeric_limits<double>::infinity()), "\"inf\"");
  EXPECT_EQ(cli::format_double(std::nan("")), "\"nan\"");
}

TEST(Cli, DumpSortsKeysAndKeepsFloats) {
  const json j = {{"b", 1.0}, {"a", {1, 2}}, {"c", "x"}};
  EXPECT_EQ(cli::dump_json(j, 0), "{\"a\":[1,2],\"b\":1.0,\"c\":\"x\"}\n");
}

TEST(Cli, CsvLayout) {
  cli::CsvTable t{{"N", "err"}, {{1.0, 0.5}, {2.0, 0.25}}};
  EXPECT_EQ(cli::to_csv(t), "N,err\n1,0.5\n2,0.25\n");
}

TEST(Cli, ConfigErrors) {
  EXPECT_THROW(cli::parse_config(json{{"system", {{"preset", "torus"}}}, {"experiment", {{"kind", "validate"}}}}),
               cli::ConfigError);
  EXPECT_THROW(cli::build_system(json{{"preset", "nope"}}), cli::ConfigError);
  EXPECT_THROW(cli::run_experiment(cli::load_config(data("bad_kind.json"))), cli::ConfigError);
  EXPECT_THROW(cli::load_config(data("missing.json")), cli::ConfigError);
  EXPECT_THROW(cli::run_experiment(config("torus", "decay-probe", {{"weight", {{"tag", "power"}, {"param", -1.0}}}})),
               cli::ConfigError);
}

TEST(Cli, PresetsBuildAndValidate) {
  for (const auto& name : cli::preset_names()) {
    const auto S = cli::build_system(cli::preset_system(name));
    const bool expect = name != "torus-perturbed";
    EXPECT_EQ(sys::validate_default(*S, 2.0).passed, expect) << name;
    EXPECT_FALSE(cli::preset_description(name).empty());
  }
}

TEST(Cli, PerturbedPresetReportsViolation) {
  const auto r = cli::run_experiment(cli::load_config(data("perturbed.json")));
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(r.report.at("status"), "violation");
}

TEST(Cli, PslPresetPasses) {
  const auto r = cli::run_experiment(cli::load_config(data("psl.json")));
  EXPECT_EQ(r.status, 0) << cli::dump_json(r.report);
}

TEST(Cli, ReportsAreDeterministic) {
  for (const auto& [preset, kind] : std::vector<std::pair<std::string, std::string>>{
           {"z12-twisted", "arithmetic-suite"}, {"z-m2c", "norms"}, {"f2-scalar", "content-probe"}}) {
    const auto c = config(preset, kind);
    const std::string a = cli::dump_json(cli::run_experiment(c).report);
    const std::string b = cli::dump_json(cli::run_experiment(c).report);
    EXPECT_EQ(a, b) << kind;
    EXPECT_EQ(a.find("time"), std::string::npos);
  }
}

TEST(Cli, SeedChangesRandomReports) {
  const std::string a = cli::dump_json(cli::run_experiment(config("z12-twisted", "arithmetic-suite", {}, 1)).report);
  const std::string b = cli::dump_json(cli::run_experiment(config("z12-twisted", "arithmetic-suite", {}, 2)).report);
  EXPECT_NE(a, b);
}

TEST(Cli, EveryKindRuns) {
  const std::map<std::string, std::string> system_for{{"fejer", "z-m2c"},          {"abel-poisson", "torus"},
                                                      {"approx-net", "z-scalar"},    {"decay-probe", "z12-twisted"},
                                                      {"content-probe", "f2-scalar"}, {"commutative-inequality", "points-z2"},
                                                      {"ideals", "c2-z"},            {"psl-preset", "psl2z"}};
  for (const auto& kind : cli::experiment_kinds()) {
    const auto it = system_for.find(kind);
    const auto r = cli::run_experiment(config(it == system_for.end() ? "z12-twisted" : it->second, kind));
    EXPECT_EQ(r.status, 0) << kind;
    EXPECT_EQ(r.report.at("experiment"), kind);
  }
}

TEST(Cli, WritesOutputs) {
  auto c = config("z-m2c", "fejer");
  const std::string dir = ::testing::TempDir();
  c.json_path = dir + "/twisted_report.json";
  c.csv_path = dir + "/twisted_table.csv";
  const auto r = cli::run_experiment(c);
  ASSERT_TRUE(r.csv.has_value());
  const std::string text = cli::write_outputs(c, r);
  std::ifstream in(*c.json_path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), text);
  EXPECT_EQ(json::parse(text).at("seed"), 3);
  std::ifstream csv(*c.csv_path);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header.rfind("index,", 0), 0u) << header;
}
