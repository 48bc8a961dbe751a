#pragma once

#include <random>
#include <string>

#include "twisted/cli.hpp"

namespace twisted::cli::detail {

alg::Complex parse_complex(const json& j);
Eigen::MatrixXcd parse_matrix(const json& j);
// [c_1, ..., c_k] on a commutative algebra, or {"blocks": [matrix, ...]}, or {"scalar": c}.
alg::Element parse_element(const json& j, const alg::AlgebraSpec& spec);
// A word such as "a b^-1", or integer coordinates on Z^d.
grp::GroupElement parse_group_element(const grp::Group& G, const json& j);
// {"terms": [{"g": word, "a": element}, ...]} or {"random": {"radius": R}}.
cc::CcElement parse_cc(const json& j, const sys::SystemPtr& sys, std::mt19937_64& rng);

json element_json(const alg::Element& a);
json cc_json(const cc::CcElement& f);

template <typename T>
T param(const json& params, const char* key, T fallback) {
  if (!params.contains(key)) return fallback;
  try {
    return params.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("parameter '") + key + "': " + e.what());
  }
}

}  // namespace twisted::cli::detail
