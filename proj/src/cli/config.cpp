#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <regex>
#include <sstream>

#include "internal.hpp"
#include "twisted/system.hpp"

namespace twisted::cli {

using detail::param;

namespace detail {

alg::Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError("expected a complex number (x or [re, im]), got " + j.dump());
}

Eigen::MatrixXcd parse_matrix(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ConfigError("expected a matrix, got " + j.dump());
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ConfigError("ragged matrix " + j.dump());
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

alg::Element parse_element(const json& j, const alg::AlgebraSpec& spec) {
  if (j.is_object() && j.contains("scalar")) return alg::Element::scalar(spec, parse_complex(j["scalar"]));
  if (j.is_object() && j.contains("blocks")) {
    const auto& b = j["blocks"];
    if (!b.is_array() || b.size() != spec.blocks()) throw ConfigError("element needs one matrix per block");
    std::vector<Eigen::MatrixXcd> blocks;
    for (std::size_t i = 0; i < b.size(); ++i) {
      Eigen::MatrixXcd m = parse_matrix(b[i]);
      if (m.rows() != spec.dims[i] || m.cols() != spec.dims[i]) throw ConfigError("block size mismatch");
      blocks.push_back(std::move(m));
    }
    return alg::Element(std::move(blocks));
  }
  if (j.is_array()) {
    if (!spec.commutative() || j.size() != spec.blocks())
      throw ConfigError("coordinate form needs a commutative algebra and one value per point");
    std::vector<alg::Complex> coords;
    for (const auto& c : j) coords.push_back(parse_complex(c));
    return alg::Element::diagonal(coords);
  }
  if (j.is_number()) return alg::Element::scalar(spec, parse_complex(j));
  throw ConfigError("cannot parse algebra element " + j.dump());
}

grp::GroupElement parse_group_element(const grp::Group& G, const json& j) {
  try {
    if (j.is_string()) return G.normal_form(j.get<std::string>());
    if (j.is_number_integer()) return G.normal_form(std::to_string(j.get<int>()));
    if (j.is_array()) {
      std::ostringstream os;
      os << '(';
      for (std::size_t i = 0; i < j.size(); ++i) os << (i ? "," : "") << j[i].get<int>();
      os << ')';
      return G.normal_form(os.str());
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("group element: ") + e.what());
  }
  throw ConfigError("cannot parse group element " + j.dump());
}

cc::CcElement parse_cc(const json& j, const sys::SystemPtr& sys, std::mt19937_64& rng) {
  if (j.is_object() && j.contains("terms")) {
    cc::CcElement f(sys);
    for (const auto& t : j["terms"]) {
      if (!t.contains("g") || !t.contains("a")) throw ConfigError("term needs 'g' and 'a'");
      f.add(parse_group_element(*sys->group, t["g"]), parse_element(t["a"], sys->algebra));
    }
    return f;
  }
  if (j.is_object() && j.contains("random")) {
    const double R = param<double>(j["random"], "radius", 1.0);
    return cc::random_cc(sys, sys->group->ball(R), rng);
  }
  throw ConfigError("element of C_c needs 'terms' or 'random', got " + j.dump());
}

json element_json(const alg::Element& a) {
  json blocks = json::array();
  for (const auto& b : a.blocks()) {
    json m = json::array();
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < b.cols(); ++c) row.push_back({b(r, c).real(), b(r, c).imag()});
      m.push_back(std::move(row));
    }
    blocks.push_back(std::move(m));
  }
  return blocks;
}

json cc_json(const cc::CcElement& f) {
  json terms = json::array();
  for (const auto& [g, a] : f.terms())
    terms.push_back({{"g", f.system()->group->to_string(g)}, {"a", element_json(a)}});
  return terms;
}

}  // namespace detail

namespace {

grp::GroupSpec parse_group(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::smatch m;
    if (s == "Z") return grp::GroupSpec::zd(1);
    if (s == "F2") return grp::GroupSpec::free_f2();
    if (s == "Z2*Z3") return grp::GroupSpec::z2_z3();
    if (std::regex_match(s, m, std::regex(R"(Z\^(\d+))"))) return grp::GroupSpec::zd(std::stoi(m[1]));
    if (std::regex_match(s, m, std::regex(R"(Z(\d+))"))) return grp::GroupSpec::cyclic(std::stoi(m[1]));
    if (std::regex_match(s, m, std::regex(R"(D(\d+))"))) return grp::GroupSpec::dihedral(std::stoi(m[1]));
    if (std::regex_match(s, m, std::regex(R"(Z\((\d+(?:x\d+)*)\))"))) {
      std::vector<int> moduli;
      std::stringstream ss(m[1].str());
      std::string part;
      while (std::getline(ss, part, 'x')) moduli.push_back(std::stoi(part));
      return grp::GroupSpec::product(moduli);
    }
    throw ConfigError("unknown group name: " + s);
  }
  if (j.is_object()) {
    const std::string fam = param<std::string>(j, "family", "");
    const auto params = param<std::vector<int>>(j, "params", {});
    auto need = [&](std::size_t n) {
      if (params.size() != n) throw ConfigError("group family " + fam + " needs " + std::to_string(n) + " params");
    };
    if (fam == "cyclic") { need(1); return grp::GroupSpec::cyclic(params[0]); }
    if (fam == "dihedral") { need(1); return grp::GroupSpec::dihedral(params[0]); }
    if (fam == "product") return grp::GroupSpec::product(params);
    if (fam == "zd") { need(1); return grp::GroupSpec::zd(params[0]); }
    if (fam == "free-f2") return grp::GroupSpec::free_f2();
    if (fam == "z2-z3") return grp::GroupSpec::z2_z3();
    throw ConfigError("unknown group family: " + fam);
  }
  throw ConfigError("group must be a name or an object");
}

alg::Morphism parse_morphism(const json& j, const alg::AlgebraSpec& spec) {
  alg::Morphism m = alg::Morphism::identity(spec);
  if (j.contains("source")) {
    m.source = j["source"].get<std::vector<int>>();
    if (m.source.size() != spec.blocks()) throw ConfigError("morphism source needs one entry per block");
    for (std::size_t i = 0; i < m.source.size(); ++i) {
      if (m.source[i] < 0 || static_cast<std::size_t>(m.source[i]) >= spec.blocks())
        throw ConfigError("morphism source out of range");
      m.unitaries[i] = Eigen::MatrixXcd::Identity(spec.dims[i], spec.dims[i]);
    }
  }
  if (j.contains("unitaries")) {
    const auto& us = j["unitaries"];
    if (!us.is_array() || us.size() != spec.blocks()) throw ConfigError("morphism needs one unitary (or null) per block");
    for (std::size_t i = 0; i < us.size(); ++i)
      if (!us[i].is_null()) m.unitaries[i] = detail::parse_matrix(us[i]);
  }
  try {
    alg::check_morphism(spec, m);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("morphism: ") + e.what());
  }
  return m;
}

json rotation(double angle) {
  return json::array({json::array({std::cos(angle), -std::sin(angle)}), json::array({std::sin(angle), std::cos(angle)})});
}

json trivial_kind() { return {{"kind", "trivial"}}; }

struct Preset {
  std::string description;
  json system;
};

const std::map<std::string, Preset>& presets() {
  static const std::map<std::string, Preset> table = [] {
    std::map<std::string, Preset> t;
    const double w = 2.0 * std::numbers::pi / 12.0;
    t["z-m2c"] = {"Z acting on M2+C by Ad(rotation by 1 rad)+id, trivial cocycle",
                  {{"algebra", {2, 1}},
                   {"group", "Z"},
                   {"action", {{"kind", "generators"},
                               {"images", json::array({{{"source", {0, 1}}, {"unitaries", {rotation(1.0), nullptr}}}})}}},
                   {"cocycle", trivial_kind()}}};
    t["torus"] = {"noncommutative torus: Z^2, A = C, theta = 1/5",
                  {{"algebra", {1}}, {"group", "Z^2"}, {"action", trivial_kind()}, {"cocycle", {{"kind", "theta"}, {"theta", 0.2}}}}};
    t["torus-perturbed"] = {"torus with sigma((1,0),(0,1)) multiplied by exp(0.1 i); not a cocycle",
                            {{"algebra", {1}},
                             {"group", "Z^2"},
                             {"action", trivial_kind()},
                             {"cocycle", {{"kind", "theta"}, {"theta", 0.2},
                                          {"perturb", json::array({{{"g", {1, 0}}, {"h", {0, 1}}, {"phase", 0.1}}})}}}}};
    t["z12-twisted"] = {"Z12 on M2+C by Ad(diag(1, w^k))+id, w = exp(2 pi i/12), theta = 1/12",
                        {{"algebra", {2, 1}},
                         {"group", "Z12"},
                         {"action", {{"kind", "generators"},
                                     {"images", json::array({{{"source", {0, 1}},
                                                              {"unitaries", {json::array({json::array({1.0, 0.0}),
                                                                                          json::array({0.0, json::array({std::cos(w), std::sin(w)})})}),
                                                                             nullptr}}}})}}},
                         {"cocycle", {{"kind", "theta"}, {"theta", 1.0 / 12.0}}}}};
    t["z-scalar"] = {"Z, A = C, trivial", {{"algebra", {1}}, {"group", "Z"}, {"action", trivial_kind()}, {"cocycle", trivial_kind()}}};
    t["z2-scalar"] = {"Z^2, A = C, trivial", {{"algebra", {1}}, {"group", "Z^2"}, {"action", trivial_kind()}, {"cocycle", trivial_kind()}}};
    t["c2-z"] = {"Z, A = C^2, trivial action and cocycle",
                 {{"algebra", {1, 1}}, {"group", "Z"}, {"action", trivial_kind()}, {"cocycle", trivial_kind()}}};
    t["points-z2"] = {"Z^2, A = C^3, trivial action, theta = 1/5 scalar cocycle",
                      {{"algebra", {1, 1, 1}}, {"group", "Z^2"}, {"action", trivial_kind()}, {"cocycle", {{"kind", "theta"}, {"theta", 0.2}}}}};
    t["d6-swap"] = {"D6 on C^2: r acts trivially, s swaps the points",
                    {{"algebra", {1, 1}},
                     {"group", "D6"},
                     {"action", {{"kind", "generators"}, {"images", json::array({{{"source", {0, 1}}}, {{"source", {1, 0}}}})}}},
                     {"cocycle", trivial_kind()}}};
    t["z4xz6"] = {"Z4 x Z6, A = C, theta = 1/2",
                  {{"algebra", {1}}, {"group", "Z(4x6)"}, {"action", trivial_kind()}, {"cocycle", {{"kind", "theta"}, {"theta", 0.5}}}}};
    t["f2-scalar"] = {"free group F2, A = C, trivial", {{"algebra", {1}}, {"group", "F2"}, {"action", trivial_kind()}, {"cocycle", trivial_kind()}}};
    t["psl2z"] = {"PSL(2,Z) = Z2*Z3 with the SL(2,Z) section cocycle in C^2",
                  {{"algebra", {1, 1}}, {"group", "Z2*Z3"}, {"action", trivial_kind()}, {"cocycle", {{"kind", "sl2-section"}}}}};
    return t;
  }();
  return table;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : presets()) out.push_back(k);
  return out;
}

std::string preset_description(const std::string& name) {
  auto it = presets().find(name);
  if (it == presets().end()) throw ConfigError("unknown preset: " + name);
  return it->second.description;
}

json preset_system(const std::string& name) {
  auto it = presets().find(name);
  if (it == presets().end()) throw ConfigError("unknown preset: " + name);
  return it->second.system;
}

sys::SystemPtr build_system(const json& block_in) {
  if (!block_in.is_object()) throw ConfigError("system block must be an object");
  const json block = block_in.contains("preset") ? preset_system(block_in["preset"].get<std::string>()) : block_in;
  for (const char* key : {"algebra", "group"})
    if (!block.contains(key)) throw ConfigError(std::string("system block needs '") + key + "'");

  alg::AlgebraSpec spec;
  try {
    spec.dims = block["algebra"].get<std::vector<int>>();
    alg::check_spec(spec);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("algebra: ") + e.what());
  }
  std::shared_ptr<const grp::Group> group;
  try {
    group = std::make_shared<const grp::Group>(parse_group(block["group"]));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("group: ") + e.what());
  }

  const json action = block.value("action", trivial_kind());
  const std::string akind = param<std::string>(action, "kind", "trivial");
  sys::ActionRule alpha;
  std::string provenance;
  if (akind == "trivial") {
    alpha = sys::trivial_action(spec);
    provenance = "trivial-action";
  } else if (akind == "generators") {
    std::vector<alg::Morphism> images;
    for (const auto& im : action.value("images", json::array())) images.push_back(parse_morphism(im, spec));
    if (images.size() != group->basic_generators().size())
      throw ConfigError("action needs one image per basic generator (" +
                        std::to_string(group->basic_generators().size()) + ")");
    alpha = sys::action_from_generators(group, images);
    provenance = "generator-action";
  } else {
    throw ConfigError("unknown action kind: " + akind);
  }

  const json cocycle = block.value("cocycle", trivial_kind());
  const std::string ckind = param<std::string>(cocycle, "kind", "trivial");
  sys::CocycleRule sigma;
  if (ckind == "trivial") {
    sigma = sys::trivial_cocycle(spec);
    provenance += ", trivial";
  } else if (ckind == "theta") {
    const double theta = param<double>(cocycle, "theta", 0.0);
    sigma = sys::theta_cocycle(spec, theta);
    provenance += ", theta(" + format_double(theta) + ")";
  } else if (ckind == "sl2-section") {
    if (group->spec().family != grp::Family::FreeProductZ2Z3 || spec.dims != std::vector<int>{1, 1})
      throw ConfigError("sl2-section cocycle needs group Z2*Z3 and algebra [1, 1]");
    sigma = sys::section_cocycle(group, sys::sl2_extension());
    provenance += ", section";
  } else {
    throw ConfigError("unknown cocycle kind: " + ckind);
  }

  sys::SystemPtr out;
  try {
    out = sys::make_system(spec, group, std::move(alpha), std::move(sigma), provenance);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("system: ") + e.what());
  }
  for (const auto& p : cocycle.value("perturb", json::array())) {
    out = sys::perturb_cocycle(out, detail::parse_group_element(*group, p.at("g")),
                               detail::parse_group_element(*group, p.at("h")), param<double>(p, "phase", 0.0));
  }
  return out;
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  if (!doc.contains("seed")) throw ConfigError("config needs a 'seed'");
  if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer())
    throw ConfigError("seed must be a nonnegative integer");
  c.seed = doc["seed"].get<std::uint64_t>();
  if (!doc.contains("experiment")) throw ConfigError("config needs an 'experiment' block");
  const json& ex = doc["experiment"];
  c.kind = param<std::string>(ex, "kind", "");
  const auto& kinds = experiment_kinds();
  if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end()) throw ConfigError("unknown experiment kind: '" + c.kind + "'");
  c.params = ex.value("params", json::object());
  if (doc.contains("system")) {
    c.system = doc["system"];
  } else if (c.kind == "psl-preset") {
    c.system = {{"preset", "psl2z"}};
  } else {
    throw ConfigError("config needs a 'system' block");
  }
  if (doc.contains("output")) {
    const json& out = doc["output"];
    if (out.contains("json")) c.json_path = out["json"].get<std::string>();
    if (out.contains("csv")) c.csv_path = out["csv"].get<std::string>();
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return parse_config(doc);
}

}  // namespace twisted::cli
