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

#include <Eigen/Core>

#include <string>
#include <vector>

namespace pinch {

using Vec3 = Eigen::Vector3d;

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

struct CarrierSpec {
  double frequency_hz = 28.0e9;

  double free_space_wavelength_m() const { return kSpeedOfLight / frequency_hz; }
};

// A finite straight dielectric waveguide. Antenna positions are scalar offsets
// measured from the feed along axis_direction, in [0, length_m].
struct WaveguideSpec {
  Vec3 feed_point{0.0, 0.0, 3.0};
  Vec3 axis_direction{0.0, 1.0, 0.0};
  double length_m = 20.0;
  double relative_permittivity = 2.1;
  double guide_attenuation_np_per_m = 0.0;

  double height_m() const { return feed_point.z(); }
  Vec3 point_at(double offset) const { return feed_point + offset * axis_direction; }
};

struct UserSet {
  std::vector<Vec3> positions;

  std::size_t size() const { return positions.size(); }
};

enum class LoSKind { exponential, inmo, always_los };

// Piecewise indoor-mixed-office LoS probability:
//   1                                       d <= plateau
//   exp(-(d - plateau) / near_scale)        plateau < d < breakpoint
//   far_weight * exp(-(d - bp) / far_scale) d >= breakpoint
struct InmoParams {
  double plateau_m = 1.2;
  double near_scale_m = 4.7;
  double breakpoint_m = 6.5;
  double far_weight = 0.32;
  double far_scale_m = 32.6;
};

struct LoSModelConfig {
  LoSKind kind = LoSKind::always_los;
  double rho_los = 0.0;            // 1/m, exponential kind
  double nlos_extra_loss_db = 20.0;
  InmoParams inmo{};
};

struct Scenario {
  CarrierSpec carrier{};
  std::vector<WaveguideSpec> waveguides;
  UserSet users;
  double transmit_snr = 1.0; // linear
  LoSModelConfig los_model{};

  double wavelength() const { return carrier.free_space_wavelength_m(); }
};

struct Violation {
  std::string code;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
  friend auto operator<=>(const Violation&, const Violation&) = default;
};

struct ValidationOptions {
  // Conventional-antenna comparisons need every waveguide at one height.
  bool require_common_height = false;
};

// Every invariant violation of the scenario; empty when valid. Messages carry
// offending values but no list indices, so the result is order independent.
std::vector<Violation> validate_scenario(const Scenario& s, const ValidationOptions& opts = {});

// Throws ConfigError listing all violations.
void require_valid(const Scenario& s, const ValidationOptions& opts = {});

struct Projection {
  double offset = 0.0;
  Vec3 foot_point = Vec3::Zero();
  double distance = 0.0;
};

Projection project_onto_waveguide(const WaveguideSpec& w, const Vec3& p);

} // namespace pinch
