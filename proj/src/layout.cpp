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

#include "pinch/layout.hpp"
#include "pinch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pinch {

std::size_t PinchingLayout::total_antennas() const {
  return std::accumulate(guides.begin(), guides.end(), std::size_t{0},
                         [](std::size_t n, const GuideAntennas& g) { return n + g.size(); });
}

PinchingLayout PinchingLayout::single_antenna(const std::vector<double>& offsets, double minimum_spacing_m) {
  PinchingLayout layout;
  layout.minimum_spacing_m = minimum_spacing_m;
  for (double x : offsets)
    layout.guides.push_back({{x}, {1.0}});
  return layout;
}

std::vector<double> equal_split_weights(std::size_t n) {
  return std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n)));
}

double default_minimum_spacing(const Scenario& s) { return 0.5 * s.wavelength(); }

std::vector<Violation> validate_layout(const PinchingLayout& layout, const Scenario& s) {
  std::vector<Violation> out;
  auto add = [&out](const char* code, const std::string& msg) { out.push_back({code, msg}); };

  if (!(layout.minimum_spacing_m >= 0.0))
    add("negative_minimum_spacing", "minimum spacing is negative");
  if (layout.guides.size() != s.waveguides.size()) {
    std::ostringstream os;
    os << "layout has " << layout.guides.size() << " waveguides, scenario has " << s.waveguides.size();
    add("waveguide_count_mismatch", os.str());
    return out;
  }
  for (std::size_t m = 0; m < layout.guides.size(); ++m) {
    const auto& g = layout.guides[m];
    const auto& w = s.waveguides[m];
    if (g.offsets.empty()) {
      add("no_antennas", "waveguide has no activated antenna");
      continue;
    }
    if (g.weights.size() != g.offsets.size()) {
      add("weight_count_mismatch", "weights and offsets differ in length");
      continue;
    }
    for (double x : g.offsets)
      if (!(x >= 0.0 && x <= w.length_m))
        add("offset_out_of_range", "antenna offset outside the waveguide");
    for (std::size_t n = 1; n < g.offsets.size(); ++n) {
      if (!(g.offsets[n] > g.offsets[n - 1]))
        add("offsets_not_sorted", "antenna offsets not strictly ascending");
      else if (g.offsets[n] - g.offsets[n - 1] < layout.minimum_spacing_m - 1e-12)
        add("spacing_violation", "adjacent antennas closer than the minimum spacing");
    }
    double energy = 0.0;
    for (double a : g.weights) {
      if (!(a >= 0.0))
        add("negative_weight", "power-split weight is negative");
      energy += a * a;
    }
    if (std::abs(energy - 1.0) > 1e-12)
      add("weights_not_normalized", "power-split weights do not have unit sum of squares");
  }
  return out;
}

void require_valid(const PinchingLayout& layout, const Scenario& s) {
  const auto violations = validate_layout(layout, s);
  if (violations.empty())
    return;
  std::string msg = "invalid pinching layout:";
  for (const auto& v : violations)
    msg += "\n  " + v.code + ": " + v.message;
  throw ConfigError(msg);
}

} // namespace pinch
