// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The risce Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "risce/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json_io.hpp"
#include "risce/error.hpp"

namespace risce {

namespace {

using detail::json;

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    throw ConfigError(source_ + ": " + field + ": " + msg);
  }

  void only_keys(const json& obj, const std::string& where,
                 std::initializer_list<const char*> allowed) const {
    if (!obj.is_object()) fail(where.empty() ? "/" : where, "expected an object");
    for (const auto& [key, value] : obj.items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) fail(where + "/" + key, "unknown key \"" + key + "\"");
    }
  }

  const json& required(const json& obj, const std::string& where, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where + "/" + key, "missing required key");
    return *it;
  }

  long long integer(const json& j, const std::string& field) const {
    if (!j.is_number_integer()) fail(field, "expected an integer");
    return j.is_number_unsigned() ? static_cast<long long>(j.get<unsigned long long>())
                                  : j.get<long long>();
  }

  int int32(const json& j, const std::string& field, long long min) const {
    const long long v = integer(j, field);
    if (v < min) fail(field, "must be >= " + std::to_string(min));
    if (v > 1'000'000'000LL) fail(field, "value too large");
    return static_cast<int>(v);
  }

  double real(const json& j, const std::string& field) const {
    if (!j.is_number()) fail(field, "expected a number");
    return j.get<double>();
  }

  bool boolean(const json& j, const std::string& field) const {
    if (!j.is_boolean()) fail(field, "expected true or false");
    return j.get<bool>();
  }

  std::string string(const json& j, const std::string& field) const {
    if (!j.is_string()) fail(field, "expected a string");
    return j.get<std::string>();
  }

 private:
  std::string source_;
};

ExperimentConfig from_json(const json& root, const Reader& rd) {
  rd.only_keys(root, "", {"dims", "model", "paths", "schemes", "grouping", "snr_db", "trials",
                          "seed", "T_d", "P", "omp", "coord_descent"});
  ExperimentConfig cfg;

  const json& dims = rd.required(root, "", "dims");
  rd.only_keys(dims, "/dims", {"M", "N", "K"});
  cfg.dims.M = rd.int32(rd.required(dims, "/dims", "M"), "/dims/M", 1);
  cfg.dims.N = rd.int32(rd.required(dims, "/dims", "N"), "/dims/N", 1);
  cfg.dims.K = rd.int32(rd.required(dims, "/dims", "K"), "/dims/K", 1);

  const std::string model = rd.string(rd.required(root, "", "model"), "/model");
  if (model == "rayleigh") {
    cfg.model = ChannelModel::rayleigh;
  } else if (model == "geometric") {
    cfg.model = ChannelModel::geometric;
  } else {
    rd.fail("/model", "expected \"rayleigh\" or \"geometric\", got \"" + model + "\"");
  }

  if (auto it = root.find("paths"); it != root.end()) {
    rd.only_keys(*it, "/paths", {"L_G", "L_r", "on_grid", "gain_variance"});
    cfg.paths.L_G = rd.int32(rd.required(*it, "/paths", "L_G"), "/paths/L_G", 1);
    cfg.paths.L_r = rd.int32(rd.required(*it, "/paths", "L_r"), "/paths/L_r", 1);
    if (auto o = it->find("on_grid"); o != it->end()) cfg.paths.on_grid = rd.boolean(*o, "/paths/on_grid");
    if (auto g = it->find("gain_variance"); g != it->end()) {
      cfg.paths.gain_variance = rd.real(*g, "/paths/gain_variance");
    }
  } else if (cfg.model == ChannelModel::geometric) {
    rd.fail("/paths", "required for the geometric model");
  }

  const json& schemes = rd.required(root, "", "schemes");
  if (!schemes.is_array()) rd.fail("/schemes", "expected an array");
  for (std::size_t i = 0; i < schemes.size(); ++i) {
    const std::string field = "/schemes/" + std::to_string(i);
    const std::string name = rd.string(schemes[i], field);
    Scheme s{};
    try {
      s = scheme_from_string(name);
    } catch (const ConfigError&) {
      rd.fail(field, "unknown scheme \"" + name + "\"");
    }
    if (s == Scheme::conventional) rd.fail(field, "\"conventional\" is not a simulated scheme");
    cfg.schemes.push_back(s);
  }

  if (auto it = root.find("grouping"); it != root.end()) {
    rd.only_keys(*it, "/grouping", {"B"});
    cfg.grouping = GroupingConfig{rd.int32(rd.required(*it, "/grouping", "B"), "/grouping/B", 1)};
  }

  const json& snr = rd.required(root, "", "snr_db");
  if (!snr.is_array()) rd.fail("/snr_db", "expected an array");
  for (std::size_t i = 0; i < snr.size(); ++i) {
    const std::string field = "/snr_db/" + std::to_string(i);
    if (snr[i].is_string()) {
      if (snr[i].get<std::string>() != "inf") rd.fail(field, "the only string allowed is \"inf\"");
      cfg.snr_db.push_back(INFINITY);
    } else {
      cfg.snr_db.push_back(rd.real(snr[i], field));
    }
  }

  cfg.trials = rd.int32(rd.required(root, "", "trials"), "/trials", 1);
  const json& seed = rd.required(root, "", "seed");
  if (!seed.is_number_unsigned()) rd.fail("/seed", "expected a non-negative 64-bit integer");
  cfg.seed = seed.get<std::uint64_t>();

  if (auto it = root.find("T_d"); it != root.end()) cfg.T_d = rd.int32(*it, "/T_d", 0);
  if (auto it = root.find("P"); it != root.end()) cfg.P = rd.int32(*it, "/P", 1);

  if (auto it = root.find("omp"); it != root.end()) {
    rd.only_keys(*it, "/omp", {"S", "epsilon", "T"});
    OmpConfig o;
    o.T = rd.int32(rd.required(*it, "/omp", "T"), "/omp/T", 1);
    if (auto s = it->find("S"); s != it->end()) o.S = rd.int32(*s, "/omp/S", 1);
    if (auto e = it->find("epsilon"); e != it->end()) o.epsilon = rd.real(*e, "/omp/epsilon");
    if (o.S.has_value() == o.epsilon.has_value()) rd.fail("/omp", "give exactly one of S or epsilon");
    cfg.omp = o;
  }

  if (auto it = root.find("coord_descent"); it != root.end()) {
    rd.only_keys(*it, "/coord_descent", {"max_sweeps", "rel_tol", "restarts"});
    if (auto v = it->find("max_sweeps"); v != it->end()) {
      cfg.coord_descent.max_sweeps = rd.int32(*v, "/coord_descent/max_sweeps", 1);
    }
    if (auto v = it->find("rel_tol"); v != it->end()) {
      cfg.coord_descent.rel_tol = rd.real(*v, "/coord_descent/rel_tol");
    }
    if (auto v = it->find("restarts"); v != it->end()) {
      cfg.coord_descent.restarts = rd.int32(*v, "/coord_descent/restarts", 1);
    }
  }

  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    rd.fail("config", e.what());
  }
  return cfg;
}

}  // namespace

ExperimentConfig parse_config_string(std::string_view text, std::string_view source) {
  const Reader rd{std::string(source)};
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports "parse error at line L, column C: ..."
    throw ConfigError(std::string(source) + ": malformed JSON: " + e.what());
  }
  return from_json(root, rd);
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str(), path.string());
}

namespace detail {

json encode_snr(double snr_db) {
  if (std::isinf(snr_db)) return "inf";
  return snr_db;
}

json config_json(const ExperimentConfig& cfg) {
  json j;
  j["dims"] = {{"M", cfg.dims.M}, {"N", cfg.dims.N}, {"K", cfg.dims.K}};
  j["model"] = cfg.model == ChannelModel::rayleigh ? "rayleigh" : "geometric";
  if (cfg.model == ChannelModel::geometric) {
    j["paths"] = {{"L_G", cfg.paths.L_G},
                  {"L_r", cfg.paths.L_r},
                  {"on_grid", cfg.paths.on_grid},
                  {"gain_variance", cfg.paths.gain_variance}};
  }
  j["schemes"] = json::array();
  for (Scheme s : cfg.schemes) j["schemes"].push_back(std::string(to_string(s)));
  if (cfg.grouping) j["grouping"] = {{"B", cfg.grouping->B}};
  j["snr_db"] = json::array();
  for (double v : cfg.snr_db) j["snr_db"].push_back(encode_snr(v));
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["T_d"] = cfg.T_d;
  j["P"] = cfg.P;
  if (cfg.omp) {
    json o = {{"T", cfg.omp->T}};
    if (cfg.omp->S) o["S"] = *cfg.omp->S;
    if (cfg.omp->epsilon) o["epsilon"] = *cfg.omp->epsilon;
    j["omp"] = o;
  }
  j["coord_descent"] = {{"max_sweeps", cfg.coord_descent.max_sweeps},
                        {"rel_tol", cfg.coord_descent.rel_tol},
                        {"restarts", cfg.coord_descent.restarts}};
  return j;
}

}  // namespace detail

std::string config_to_json(const ExperimentConfig& cfg, int indent) {
  return detail::config_json(cfg).dump(indent);
}

}  // namespace risce
