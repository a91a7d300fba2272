// Copyright 2026 The rminv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON views of the library types.  Element integers are the field
// encodings; "auto" stands for a selector the builder resolves.

#ifndef RMINV_JSON_IO_HPP_
#define RMINV_JSON_IO_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rminv/census.hpp"

namespace rminv {

using ordered_json = nlohmann::ordered_json;

inline CodeFamily family_from_string(const std::string& name) {
  if (name == "gabidulin") return CodeFamily::Gabidulin;
  if (name == "sheekey" || name == "sheekey_twisted") return CodeFamily::SheekeyTwisted;
  if (name == "twisted" || name == "generalized_twisted") return CodeFamily::GeneralizedTwisted;
  if (name == "gabidulin_new") return CodeFamily::GabidulinNew;
  throw std::invalid_argument("unknown code family: " + name);
}

inline ordered_json to_json(const CodeSpec& sp) {
  ordered_json j;
  j["family"] = to_string(sp.family);
  j["q"] = sp.q;
  j["e"] = sp.e;
  j["m"] = sp.m;
  j["n"] = sp.n;
  j["k"] = sp.k;
  j["s"] = sp.sigma_exp;
  if (sp.alpha) {
    j["alpha"] = *sp.alpha;
  } else {
    j["alpha"] = "auto";
  }
  if (sp.eta) {
    j["eta"] = *sp.eta;
  } else {
    j["eta"] = "auto";
  }
  j["h"] = sp.h;
  j["t"] = sp.t;
  return j;
}

namespace detail {

inline long long json_int(const ordered_json& j, const std::string& key, long long fallback,
                          bool required) {
  if (!j.contains(key)) {
    if (required) throw std::invalid_argument("spec is missing required field \"" + key + "\"");
    return fallback;
  }
  if (!j.at(key).is_number_integer()) {
    throw std::invalid_argument("spec field \"" + key + "\" must be an integer");
  }
  return j.at(key).get<long long>();
}

inline std::vector<std::uint64_t> json_elem_list(const ordered_json& v, const std::string& key) {
  std::vector<std::uint64_t> out;
  if (v.is_number_integer()) {
    out.push_back(v.get<std::uint64_t>());
    return out;
  }
  if (!v.is_array()) {
    throw std::invalid_argument("spec field \"" + key + "\" must be \"auto\", an integer, or an array");
  }
  for (const auto& item : v) {
    if (!item.is_number_integer()) {
      throw std::invalid_argument("spec field \"" + key + "\" must contain integers");
    }
    out.push_back(item.get<std::uint64_t>());
  }
  return out;
}

}  // namespace detail

inline CodeSpec code_spec_from_json(const ordered_json& j) {
  if (!j.is_object()) throw std::invalid_argument("spec must be a JSON object");
  CodeSpec sp;
  if (!j.contains("family") || !j.at("family").is_string()) {
    throw std::invalid_argument("spec is missing a \"family\" string");
  }
  sp.family = family_from_string(j.at("family").get<std::string>());
  sp.q = static_cast<std::uint64_t>(detail::json_int(j, "q", 2, true));
  sp.e = static_cast<int>(detail::json_int(j, "e", 1, false));
  sp.m = static_cast<int>(detail::json_int(j, "m", 0, true));
  sp.n = static_cast<int>(detail::json_int(j, "n", 0, true));
  sp.k = static_cast<int>(detail::json_int(j, "k", 0, true));
  sp.sigma_exp = detail::json_int(j, "s", 1, false);
  if (j.contains("alpha") && !(j.at("alpha").is_string() && j.at("alpha") == "auto")) {
    sp.alpha = detail::json_elem_list(j.at("alpha"), "alpha");
  }
  if (j.contains("eta") && !(j.at("eta").is_string() && j.at("eta") == "auto")) {
    sp.eta = detail::json_elem_list(j.at("eta"), "eta");
  }
  if (j.contains("h")) {
    for (const auto& item : j.at("h")) sp.h.push_back(item.get<int>());
  }
  if (j.contains("t")) {
    for (const auto& item : j.at("t")) sp.t.push_back(item.get<int>());
  }
  return sp;
}

inline ordered_json to_json(const SigmaSequence& seq) {
  ordered_json j;
  j["auto_exp"] = seq.auto_exp;
  j["dims"] = seq.dims;
  return j;
}

inline ordered_json to_json(const Fingerprint& fp) {
  ordered_json j;
  j["context"] = {{"q", fp.q}, {"e", fp.e}, {"m", fp.m}, {"n", fp.n}, {"k", fp.k}};
  ordered_json seqs = ordered_json::array();
  for (const SigmaSequence& s : fp.entries) seqs.push_back(to_json(s));
  j["sequences"] = seqs;
  j["key"] = fp.key();
  return j;
}

inline ordered_json to_json(const CensusRow& row) {
  ordered_json j;
  j["q"] = row.q;
  j["e"] = row.e;
  j["m"] = row.m;
  j["n"] = row.n;
  j["k"] = row.k;
  j["a"] = row.a;
  j["b"] = row.b;
  j["auto_set"] = to_string(row.auto_set);
  j["runtime_seconds"] = row.runtime_seconds;
  return j;
}

}  // namespace rminv

#endif  // RMINV_JSON_IO_HPP_
