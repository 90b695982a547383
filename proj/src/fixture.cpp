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

#include "risce/fixture.hpp"

#include <fstream>
#include <sstream>

#include "json_io.hpp"
#include "risce/error.hpp"

namespace risce {

namespace detail {

json encode(cplx z) { return json::array({z.real(), z.imag()}); }

json encode(const CVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(encode(v(i)));
  return a;
}

json encode(const CMatrix& A) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < A.cols(); ++c) row.push_back(encode(A(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

cplx decode_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(where + ": expected a complex number [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

CVector decode_vector(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of complex numbers");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = decode_complex(j[i], where + "/" + std::to_string(i));
  return v;
}

CMatrix decode_matrix(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows > 0 && j[0].is_array() ? static_cast<Eigen::Index>(j[0].size()) : 0;
  CMatrix A(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto row = decode_vector(j[r], where + "/" + std::to_string(r));
    if (row.size() != cols) throw ShapeError(where + ": ragged matrix rows");
    A.row(r) = row.transpose();
  }
  return A;
}

}  // namespace detail

using detail::json;

std::string channel_set_to_json(const ChannelSet& chan, int indent) {
  json j;
  j["dims"] = {{"M", chan.dims.M}, {"N", chan.dims.N}, {"K", chan.dims.K}};
  j["h_d"] = json::array();
  j["h_r"] = json::array();
  for (const auto& v : chan.h_d) j["h_d"].push_back(detail::encode(v));
  j["G"] = detail::encode(chan.G);
  for (const auto& v : chan.h_r) j["h_r"].push_back(detail::encode(v));
  return j.dump(indent);
}

ChannelSet channel_set_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("channel fixture: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("channel fixture: expected an object");
  for (const char* key : {"dims", "h_d", "G", "h_r"}) {
    if (!j.contains(key)) throw ConfigError(std::string("channel fixture: missing \"") + key + "\"");
  }
  ChannelSet c;
  const json& d = j["dims"];
  try {
    c.dims = {d.at("M").get<int>(), d.at("N").get<int>(), d.at("K").get<int>()};
  } catch (const json::exception&) {
    throw ConfigError("channel fixture: dims needs integer M, N, K");
  }
  c.G = detail::decode_matrix(j["G"], "/G");
  if (c.G.size() == 0) c.G.resize(c.dims.M, c.dims.N);
  for (const char* key : {"h_d", "h_r"}) {
    if (!j[key].is_array()) throw ConfigError(std::string("channel fixture: \"") + key + "\" must be an array");
    auto& out = std::string_view(key) == "h_d" ? c.h_d : c.h_r;
    for (std::size_t k = 0; k < j[key].size(); ++k) {
      out.push_back(detail::decode_vector(j[key][k], "/" + std::string(key) + "/" + std::to_string(k)));
    }
  }
  c.validate();
  return c;
}

void save_channel_set(const ChannelSet& chan, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path.string() + ": cannot open for writing");
  out << channel_set_to_json(chan) << '\n';
  if (!out) throw Error(path.string() + ": write failed");
}

ChannelSet load_channel_set(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open channel fixture");
  std::ostringstream ss;
  ss << in.rdbuf();
  return channel_set_from_json(ss.str());
}

std::string estimate_to_json(const ChannelEstimate& est, int indent) {
  json j;
  j["scheme"] = est.scheme;
  j["slots"] = est.slots;
  if (est.H_hat) j["H"] = detail::encode(*est.H_hat);
  if (est.h_d_hat) j["h_d"] = json::array({detail::encode(*est.h_d_hat)});
  if (est.G_hat) j["G"] = detail::encode(*est.G_hat);
  if (est.h_r_hat) j["h_r"] = json::array({detail::encode(*est.h_r_hat)});
  return j.dump(indent);
}

std::string observation_to_json(const PilotObservation& obs, int indent) {
  json j;
  j["user"] = obs.user;
  j["kind"] = std::string(to_string(obs.schedule.kind()));
  j["Y"] = detail::encode(obs.Y);
  j["theta"] = detail::encode(obs.schedule.stacked());
  j["pilots"] = detail::encode(obs.pilots);
  return j.dump(indent);
}

}  // namespace risce
