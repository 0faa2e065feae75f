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

#include "pinch/scenario.hpp"

#include <cstddef>
#include <vector>

namespace pinch {

struct GuideAntennas {
  std::vector<double> offsets; // ascending, m from the feed
  std::vector<double> weights; // power-split amplitudes, sum of squares 1

  std::size_t size() const { return offsets.size(); }
};

// Activated pinching antennas, one entry per waveguide of the scenario.
struct PinchingLayout {
  std::vector<GuideAntennas> guides;
  double minimum_spacing_m = 0.0;

  std::size_t total_antennas() const;

  // One antenna with unit weight on each waveguide.
  static PinchingLayout single_antenna(const std::vector<double>& offsets, double minimum_spacing_m = 0.0);
};

// Equal amplitude split 1/sqrt(n).
std::vector<double> equal_split_weights(std::size_t n);

// Half a free-space wavelength.
double default_minimum_spacing(const Scenario& s);

std::vector<Violation> validate_layout(const PinchingLayout& layout, const Scenario& s);
void require_valid(const PinchingLayout& layout, const Scenario& s);

} // namespace pinch
