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

#include "pinch/channel.hpp"
#include "pinch/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace pinch {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

double guided_wavelength(double lambda0, double eps_r) {
  if (!(lambda0 > 0.0))
    throw DomainError("guided_wavelength: free-space wavelength must be positive");
  if (!(eps_r >= 1.0))
    throw DomainError("guided_wavelength: relative permittivity must be >= 1, got " + std::to_string(eps_r));
  return lambda0 / std::sqrt(eps_r);
}

double GuidedWave::wavenumber_rad_per_m() const { return kTwoPi / guided_wavelength_m; }

GuidedWave guided_wave(const CarrierSpec& carrier, const WaveguideSpec& w) {
  return {guided_wavelength(carrier.free_space_wavelength_m(), w.relative_permittivity)};
}

double los_probability(const LoSModelConfig& model, double distance) {
  const double d = std::max(distance, 0.0);
  switch (model.kind) {
  case LoSKind::always_los:
    return 1.0;
  case LoSKind::exponential:
    return std::clamp(std::exp(-model.rho_los * d), 0.0, 1.0);
  case LoSKind::inmo: {
    const auto& p = model.inmo;
    double prob = 1.0;
    if (d <= p.plateau_m)
      prob = 1.0;
    else if (d < p.breakpoint_m)
      prob = std::exp(-(d - p.plateau_m) / p.near_scale_m);
    else
      prob = p.far_weight * std::exp(-(d - p.breakpoint_m) / p.far_scale_m);
    return std::clamp(prob, 0.0, 1.0);
  }
  }
  return 1.0;
}

cdouble free_space_gain(double distance, double lambda0, bool los, double nlos_extra_loss_db) {
  if (!(distance > 0.0))
    throw DomainError("free_space_gain: antenna coincides with the user (distance <= 0)");
  double amplitude = lambda0 / (2.0 * kTwoPi * distance);
  if (!los)
    amplitude *= std::pow(10.0, -nlos_extra_loss_db / 20.0);
  return std::polar(amplitude, -kTwoPi * distance / lambda0);
}

cdouble in_guide_factor(const WaveguideSpec& w, const GuidedWave& gw, double offset) {
  return std::polar(std::exp(-w.guide_attenuation_np_per_m * offset), -kTwoPi * offset / gw.guided_wavelength_m);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

double link_uniform(std::uint64_t seed, std::size_t user, const Vec3& antenna) {
  std::uint64_t h = derive_seed(seed, user);
  for (int i = 0; i < 3; ++i)
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(antenna[i] + 0.0));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

bool LosDraw::state(const LoSModelConfig& model, std::size_t user, std::size_t antenna, const Vec3& antenna_pos,
                    double distance) const {
  switch (mode_) {
  case Mode::force_los:
    return true;
  case Mode::explicit_states:
    if (static_cast<Eigen::Index>(user) >= states_.rows() || static_cast<Eigen::Index>(antenna) >= states_.cols())
      throw ConfigError("explicit LoS state matrix does not cover every link");
    return states_(static_cast<Eigen::Index>(user), static_cast<Eigen::Index>(antenna));
  case Mode::seeded:
    return link_uniform(seed_, user, antenna_pos) < los_probability(model, distance);
  }
  return true;
}

LinkGain link_gain(const Scenario& s, const LosDraw& draw, std::size_t user, std::size_t antenna,
                   const Vec3& antenna_pos) {
  const double d = (s.users.positions[user] - antenna_pos).norm();
  const bool los = draw.state(s.los_model, user, antenna, antenna_pos, d);
  return {free_space_gain(d, s.wavelength(), los, s.los_model.nlos_extra_loss_db), los, d};
}

ChannelMatrix build_channel(const Scenario& s, const PinchingLayout& layout, const LosDraw& draw) {
  require_valid(layout, s);
  const auto K = static_cast<Eigen::Index>(s.users.size());
  const auto M = static_cast<Eigen::Index>(s.waveguides.size());
  const auto N = static_cast<Eigen::Index>(layout.total_antennas());

  ChannelMatrix H;
  H.gains = Eigen::MatrixXcd::Zero(K, M);
  H.per_antenna = Eigen::MatrixXcd::Zero(K, N);
  H.los = BoolMatrix::Constant(K, N, true);
  H.distance = Eigen::MatrixXd::Zero(K, N);
  H.antenna_feed.reserve(static_cast<std::size_t>(N));

  Eigen::Index col = 0;
  for (Eigen::Index m = 0; m < M; ++m) {
    const auto& w = s.waveguides[static_cast<std::size_t>(m)];
    const auto gw = guided_wave(s.carrier, w);
    const auto& g = layout.guides[static_cast<std::size_t>(m)];
    for (std::size_t n = 0; n < g.size(); ++n, ++col) {
      const Vec3 pos = w.point_at(g.offsets[n]);
      const cdouble feed_to_antenna = g.weights[n] * in_guide_factor(w, gw, g.offsets[n]);
      H.antenna_feed.push_back(static_cast<std::size_t>(m));
      for (Eigen::Index k = 0; k < K; ++k) {
        const auto link = link_gain(s, draw, static_cast<std::size_t>(k), static_cast<std::size_t>(col), pos);
        H.per_antenna(k, col) = feed_to_antenna * link.complex_gain;
        H.los(k, col) = link.los_state;
        H.distance(k, col) = link.distance_m;
        H.gains(k, m) += H.per_antenna(k, col);
      }
    }
  }
  return H;
}

ChannelMatrix build_fixed_array_channel(const Scenario& s, std::span<const Vec3> antennas, const LosDraw& draw) {
  const auto K = static_cast<Eigen::Index>(s.users.size());
  const auto N = static_cast<Eigen::Index>(antennas.size());
  ChannelMatrix H;
  H.gains.resize(K, N);
  H.los.resize(K, N);
  H.distance.resize(K, N);
  for (Eigen::Index n = 0; n < N; ++n) {
    H.antenna_feed.push_back(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < K; ++k) {
      const auto link = link_gain(s, draw, static_cast<std::size_t>(k), static_cast<std::size_t>(n),
                                  antennas[static_cast<std::size_t>(n)]);
      H.gains(k, n) = link.complex_gain;
      H.los(k, n) = link.los_state;
      H.distance(k, n) = link.distance_m;
    }
  }
  H.per_antenna = H.gains;
  return H;
}

cdouble guide_gain_at_user(const Scenario& s, std::size_t guide, const GuideAntennas& antennas, std::size_t user,
                           const LosDraw& draw) {
  if (draw.mode() == LosDraw::Mode::explicit_states)
    throw ConfigError("guide_gain_at_user: explicit LoS states need the full layout, use build_channel");
  const auto& w = s.waveguides[guide];
  const auto gw = guided_wave(s.carrier, w);
  cdouble sum{};
  for (std::size_t n = 0; n < antennas.size(); ++n) {
    const Vec3 pos = w.point_at(antennas.offsets[n]);
    const auto link = link_gain(s, draw, user, n, pos);
    sum += antennas.weights[n] * in_guide_factor(w, gw, antennas.offsets[n]) * link.complex_gain;
  }
  return sum;
}

} // namespace pinch
