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

#pragma once

#include "pinch/layout.hpp"
#include "pinch/scenario.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace pinch {

using cdouble = std::complex<double>;
using BoolMatrix = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Wavelength inside a dielectric waveguide, lambda0 / sqrt(eps_r).
/// Throws DomainError if lambda0 <= 0 or eps_r < 1.
double guided_wavelength(double lambda0, double eps_r);

struct GuidedWave {
  double guided_wavelength_m = 0.0;

  double wavenumber_rad_per_m() const;
};

GuidedWave guided_wave(const CarrierSpec& carrier, const WaveguideSpec& w);

/// Probability of a line-of-sight link at the given distance; always in [0,1].
double los_probability(const LoSModelConfig& model, double distance);

/// Spherical-wave gain (lambda0 / (4 pi d)) exp(-j 2 pi d / lambda0). NLoS links
/// are attenuated by nlos_extra_loss_db in power. Throws DomainError for d <= 0.
cdouble free_space_gain(double distance, double lambda0, bool los, double nlos_extra_loss_db);

/// Propagation from the feed to an antenna at `offset`: exp(-j 2 pi offset / lambda_g)
/// times exp(-attenuation * offset).
cdouble in_guide_factor(const WaveguideSpec& w, const GuidedWave& gw, double offset);

struct LinkGain {
  cdouble complex_gain{};
  bool los_state = true;
  double distance_m = 0.0;
};

// Uniform draw in [0,1) keyed on (seed, user, antenna position). The same link
// always gets the same LoS state under one seed, independent of evaluation order.
double link_uniform(std::uint64_t seed, std::size_t user, const Vec3& antenna);

// Mixes values into a new 64-bit seed (splitmix64 chain).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// How link LoS states are chosen when synthesizing a channel.
class LosDraw {
public:
  enum class Mode { seeded, explicit_states, force_los };

  static LosDraw seeded(std::uint64_t seed) { return LosDraw(Mode::seeded, seed, {}); }
  /// users x total-antennas matrix of LoS flags.
  static LosDraw explicit_states(BoolMatrix states) { return LosDraw(Mode::explicit_states, 0, std::move(states)); }
  static LosDraw force_los() { return LosDraw(Mode::force_los, 0, {}); }

  Mode mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }
  const BoolMatrix& states() const { return states_; }

  bool state(const LoSModelConfig& model, std::size_t user, std::size_t antenna, const Vec3& antenna_pos,
             double distance) const;

private:
  LosDraw(Mode mode, std::uint64_t seed, BoolMatrix states)
      : mode_(mode), seed_(seed), states_(std::move(states)) {}

  Mode mode_;
  std::uint64_t seed_;
  BoolMatrix states_;
};

LinkGain link_gain(const Scenario& s, const LosDraw& draw, std::size_t user, std::size_t antenna,
                   const Vec3& antenna_pos);

// Entry (k, m) is the aggregate gain from feed m to user k; the received
// amplitude for precoder w is gains.row(k) * w.
struct ChannelMatrix {
  Eigen::MatrixXcd gains;
  // users x total antennas: weight * in-guide factor * free-space gain.
  Eigen::MatrixXcd per_antenna;
  BoolMatrix los;
  Eigen::MatrixXd distance;
  std::vector<std::size_t> antenna_feed; // feed index of each antenna column

  Eigen::Index users() const { return gains.rows(); }
  Eigen::Index feeds() const { return gains.cols(); }
};

ChannelMatrix build_channel(const Scenario& s, const PinchingLayout& layout, const LosDraw& draw);

// Fixed antennas, each with its own feed (conventional array baseline).
ChannelMatrix build_fixed_array_channel(const Scenario& s, std::span<const Vec3> antennas, const LosDraw& draw);

// Aggregate gain of one waveguide's antennas at a single user. Used by the
// placement optimizers, where only one column changes per candidate.
cdouble guide_gain_at_user(const Scenario& s, std::size_t guide, const GuideAntennas& antennas,
                           std::size_t user, const LosDraw& draw);

} // namespace pinch
