// SPDX-License-Identifier: Apache-2.0
//
// pinchsim: simulation and placement optimization for pinching-antenna systems
// Copyright (C) 2026 The pinchsim Authors
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
// ------------------------------------------------------------------------

#include "pinch/io.hpp"
#include "pinch/errors.hpp"

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace pinch {

namespace {

template <class T>
T get(const YAML::Node& node, const char* key, const T& fallback) {
  const auto v = node[key];
  if (!v)
    return fallback;
  try {
    return v.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(std::string("field '") + key + "' has the wrong type");
  }
}

template <class T>
T require(const YAML::Node& node, const char* key) {
  if (!node[key])
    throw ConfigError(std::string("missing required field '") + key + "'");
  return get<T>(node, key, T{});
}

Vec3 as_vec3(const YAML::Node& node, const char* what) {
  if (!node.IsSequence() || node.size() != 3)
    throw ConfigError(std::string(what) + " must be a list of three coordinates");
  try {
    return {node[0].as<double>(), node[1].as<double>(), node[2].as<double>()};
  } catch (const YAML::Exception&) {
    throw ConfigError(std::string(what) + " must contain numbers");
  }
}

std::vector<double> as_doubles(const YAML::Node& node, const char* what) {
  if (!node || !node.IsSequence())
    throw ConfigError(std::string(what) + " must be a list of numbers");
  std::vector<double> out;
  try {
    for (const auto& x : node)
      out.push_back(x.as<double>());
  } catch (const YAML::Exception&) {
    throw ConfigError(std::string(what) + " must contain numbers");
  }
  return out;
}

PinchingLayout parse_layout(const YAML::Node& node) {
  PinchingLayout layout;
  layout.minimum_spacing_m = get<double>(node, "minimum_spacing_m", 0.0);
  const auto guides = node["waveguides"];
  if (!guides || !guides.IsSequence())
    throw ConfigError("layout.waveguides must be a list");
  for (const auto& g : guides) {
    GuideAntennas a;
    a.offsets = as_doubles(g["offsets"], "layout offsets");
    a.weights = g["weights"] ? as_doubles(g["weights"], "layout weights") : equal_split_weights(a.offsets.size());
    layout.guides.push_back(std::move(a));
  }
  return layout;
}

void emit_number(YAML::Emitter& out, double x) { out << format_double(x); }

void emit_vec3(YAML::Emitter& out, const Vec3& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (int i = 0; i < 3; ++i)
    emit_number(out, v[i]);
  out << YAML::EndSeq;
}

void emit_list(YAML::Emitter& out, const std::vector<double>& xs) {
  out << YAML::Flow << YAML::BeginSeq;
  for (double x : xs)
    emit_number(out, x);
  out << YAML::EndSeq;
}

void emit_layout(YAML::Emitter& out, const PinchingLayout& layout) {
  out << YAML::BeginMap;
  out << YAML::Key << "minimum_spacing_m" << YAML::Value;
  emit_number(out, layout.minimum_spacing_m);
  out << YAML::Key << "waveguides" << YAML::Value << YAML::BeginSeq;
  for (const auto& g : layout.guides) {
    out << YAML::BeginMap;
    out << YAML::Key << "offsets" << YAML::Value;
    emit_list(out, g.offsets);
    out << YAML::Key << "weights" << YAML::Value;
    emit_list(out, g.weights);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
}

YAML::Node load_yaml(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed scenario file: ") + e.what());
  }
}

} // namespace

std::string_view to_string(LoSKind kind) {
  switch (kind) {
  case LoSKind::exponential:
    return "exponential";
  case LoSKind::inmo:
    return "inmo";
  case LoSKind::always_los:
    return "always_los";
  }
  return "always_los";
}

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
  case ObjectiveKind::max_min_rate:
    return "max_min_rate";
  case ObjectiveKind::sum_rate:
    return "sum_rate";
  case ObjectiveKind::single_user_rate:
    return "single_user_rate";
  }
  return "sum_rate";
}

std::string_view to_string(BeamformerKind kind) { return kind == BeamformerKind::zf ? "zf" : "mrc"; }

LoSKind parse_los_kind(std::string_view s) {
  if (s == "exponential")
    return LoSKind::exponential;
  if (s == "inmo")
    return LoSKind::inmo;
  if (s == "always_los")
    return LoSKind::always_los;
  throw ConfigError("unknown LoS model kind '" + std::string(s) + "' (exponential, inmo, always_los)");
}

ObjectiveKind parse_objective_kind(std::string_view s) {
  if (s == "max_min_rate" || s == "max-min")
    return ObjectiveKind::max_min_rate;
  if (s == "sum_rate" || s == "sum")
    return ObjectiveKind::sum_rate;
  if (s == "single_user_rate")
    return ObjectiveKind::single_user_rate;
  throw ConfigError("unknown objective '" + std::string(s) + "' (sum_rate, max_min_rate, single_user_rate)");
}

BeamformerKind parse_beamformer_kind(std::string_view s) {
  if (s == "zf")
    return BeamformerKind::zf;
  if (s == "mrc")
    return BeamformerKind::mrc;
  throw ConfigError("unknown beamformer '" + std::string(s) + "' (zf, mrc)");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), r.ptr);
}

std::string format_complex(cdouble z) {
  std::string out = format_double(z.real());
  const double im = z.imag();
  if (std::signbit(im))
    out += "-" + format_double(-im);
  else
    out += "+" + format_double(im);
  return out + "j";
}

cdouble parse_complex(std::string_view text) {
  if (text.size() < 2 || text.back() != 'j')
    throw ConfigError("complex number must look like 're+imj'");
  const char* first = text.data();
  const char* last = text.data() + text.size() - 1;
  double re = 0.0, im = 0.0;
  auto r = std::from_chars(first, last, re);
  if (r.ec != std::errc{} || r.ptr == last || (*r.ptr != '+' && *r.ptr != '-'))
    throw ConfigError("malformed complex number '" + std::string(text) + "'");
  const bool negative = *r.ptr == '-';
  auto r2 = std::from_chars(r.ptr + 1, last, im);
  if (r2.ec != std::errc{} || r2.ptr != last)
    throw ConfigError("malformed complex number '" + std::string(text) + "'");
  return {re, negative ? -im : im};
}

ScenarioDocument parse_scenario_document(const std::string& text) {
  const YAML::Node root = load_yaml(text);
  if (!root.IsMap())
    throw ConfigError("scenario file must be a mapping");

  ScenarioDocument doc;
  doc.text = text;
  Scenario& s = doc.scenario;

  if (const auto c = root["carrier"])
    s.carrier.frequency_hz = get<double>(c, "frequency_hz", s.carrier.frequency_hz);
  if (root["transmit_snr_db"])
    s.transmit_snr = db_to_linear(get<double>(root, "transmit_snr_db", 0.0));

  if (const auto l = root["los_model"]) {
    s.los_model.kind = parse_los_kind(get<std::string>(l, "kind", "always_los"));
    s.los_model.rho_los = get<double>(l, "rho_los", s.los_model.rho_los);
    s.los_model.nlos_extra_loss_db = get<double>(l, "nlos_extra_loss_db", s.los_model.nlos_extra_loss_db);
    if (const auto m = l["inmo"]) {
      auto& p = s.los_model.inmo;
      p.plateau_m = get<double>(m, "plateau_m", p.plateau_m);
      p.near_scale_m = get<double>(m, "near_scale_m", p.near_scale_m);
      p.breakpoint_m = get<double>(m, "breakpoint_m", p.breakpoint_m);
      p.far_weight = get<double>(m, "far_weight", p.far_weight);
      p.far_scale_m = get<double>(m, "far_scale_m", p.far_scale_m);
    }
  }

  const auto guides = root["waveguides"];
  if (!guides || !guides.IsSequence())
    throw ConfigError("scenario needs a 'waveguides' list");
  for (const auto& g : guides) {
    WaveguideSpec w;
    w.feed_point = as_vec3(g["feed_point"], "waveguide feed_point");
    if (g["axis_direction"])
      w.axis_direction = as_vec3(g["axis_direction"], "waveguide axis_direction");
    w.length_m = require<double>(g, "length_m");
    w.relative_permittivity = get<double>(g, "relative_permittivity", w.relative_permittivity);
    w.guide_attenuation_np_per_m = get<double>(g, "guide_attenuation_np_per_m", 0.0);
    if (g["height_m"] && get<double>(g, "height_m", 0.0) != w.feed_point.z())
      throw ConfigError("waveguide height_m disagrees with the feed point z coordinate");
    s.waveguides.push_back(w);
  }

  if (const auto users = root["users"]) {
    if (!users.IsSequence())
      throw ConfigError("'users' must be a list of [x, y, z] positions");
    for (const auto& u : users)
      s.users.positions.push_back(as_vec3(u, "user position"));
  }

  if (const auto l = root["layout"])
    doc.layout = parse_layout(l);
  return doc;
}

ScenarioDocument load_scenario_document(const std::filesystem::path& path) {
  return parse_scenario_document(read_text_file(path));
}

Scenario parse_scenario(const std::string& text) { return parse_scenario_document(text).scenario; }

std::string emit_scenario(const Scenario& s, const std::optional<PinchingLayout>& layout) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "carrier" << YAML::Value << YAML::BeginMap << YAML::Key << "frequency_hz" << YAML::Value;
  emit_number(out, s.carrier.frequency_hz);
  out << YAML::EndMap;
  out << YAML::Key << "transmit_snr_db" << YAML::Value;
  emit_number(out, linear_to_db(s.transmit_snr));

  out << YAML::Key << "los_model" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value << std::string(to_string(s.los_model.kind));
  out << YAML::Key << "rho_los" << YAML::Value;
  emit_number(out, s.los_model.rho_los);
  out << YAML::Key << "nlos_extra_loss_db" << YAML::Value;
  emit_number(out, s.los_model.nlos_extra_loss_db);
  const auto& p = s.los_model.inmo;
  out << YAML::Key << "inmo" << YAML::Value << YAML::Flow << YAML::BeginMap;
  out << YAML::Key << "plateau_m" << YAML::Value << format_double(p.plateau_m);
  out << YAML::Key << "near_scale_m" << YAML::Value << format_double(p.near_scale_m);
  out << YAML::Key << "breakpoint_m" << YAML::Value << format_double(p.breakpoint_m);
  out << YAML::Key << "far_weight" << YAML::Value << format_double(p.far_weight);
  out << YAML::Key << "far_scale_m" << YAML::Value << format_double(p.far_scale_m);
  out << YAML::EndMap << YAML::EndMap;

  out << YAML::Key << "waveguides" << YAML::Value << YAML::BeginSeq;
  for (const auto& w : s.waveguides) {
    out << YAML::BeginMap;
    out << YAML::Key << "feed_point" << YAML::Value;
    emit_vec3(out, w.feed_point);
    out << YAML::Key << "axis_direction" << YAML::Value;
    emit_vec3(out, w.axis_direction);
    out << YAML::Key << "length_m" << YAML::Value;
    emit_number(out, w.length_m);
    out << YAML::Key << "relative_permittivity" << YAML::Value;
    emit_number(out, w.relative_permittivity);
    out << YAML::Key << "guide_attenuation_np_per_m" << YAML::Value;
    emit_number(out, w.guide_attenuation_np_per_m);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "users" << YAML::Value << YAML::BeginSeq;
  for (const auto& u : s.users.positions)
    emit_vec3(out, u);
  out << YAML::EndSeq;

  if (layout) {
    out << YAML::Key << "layout" << YAML::Value;
    emit_layout(out, *layout);
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::string emit_solution(const PlacementSolution& sol) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "objective_kind" << YAML::Value << std::string(to_string(sol.objective_kind));
  out << YAML::Key << "objective_value" << YAML::Value;
  emit_number(out, sol.objective_value);
  out << YAML::Key << "iterations" << YAML::Value << sol.iterations;
  out << YAML::Key << "converged" << YAML::Value << sol.converged;
  out << YAML::Key << "layout" << YAML::Value;
  emit_layout(out, sol.layout);
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

PlacementSolution parse_solution(const std::string& text) {
  const YAML::Node root = load_yaml(text);
  PlacementSolution sol;
  sol.objective_kind = parse_objective_kind(require<std::string>(root, "objective_kind"));
  const auto v = require<std::string>(root, "objective_value");
  sol.objective_value = v == "-inf" ? -INFINITY : std::stod(v);
  sol.iterations = get<std::size_t>(root, "iterations", 0);
  sol.converged = get<bool>(root, "converged", false);
  if (!root["layout"])
    throw ConfigError("solution file has no layout");
  sol.layout = parse_layout(root["layout"]);
  return sol;
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xf];
  }
  return out;
}

void write_channel_csv(std::ostream& os, const ChannelMatrix& H, const std::string& metadata) {
  os << "# " << metadata << "\n";
  os << "user";
  for (Eigen::Index m = 0; m < H.feeds(); ++m)
    os << ",feed" << m;
  os << "\n";
  for (Eigen::Index k = 0; k < H.users(); ++k) {
    os << k;
    for (Eigen::Index m = 0; m < H.feeds(); ++m)
      os << "," << format_complex(H.gains(k, m));
    os << "\n";
  }
}

void write_rate_reports_csv(std::ostream& os, const std::vector<RateReport>& reports, const std::string& metadata) {
  os << "# " << metadata << "\n";
  os << "scheme,user,sinr_db,rate_bps_hz\n";
  for (const auto& r : reports)
    for (std::size_t i = 0; i < r.per_user_rate_bps_hz.size(); ++i)
      os << r.scheme_label << "," << i << "," << format_double(linear_to_db(r.per_user_sinr[i])) << ","
         << format_double(r.per_user_rate_bps_hz[i]) << "\n";
}

void write_trace_csv(std::ostream& os, const std::vector<double>& trace, const std::string& metadata) {
  os << "# " << metadata << "\n";
  os << "iteration,objective\n";
  for (std::size_t i = 0; i < trace.size(); ++i)
    os << i << "," << format_double(trace[i]) << "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw ConfigError("cannot open '" + path.string() + "' for writing");
  f << content;
  if (!f)
    throw ConfigError("failed writing '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

} // namespace pinch
