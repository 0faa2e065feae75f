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

#include "pinch/scenario.hpp"
#include "pinch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pinch {

namespace {

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os.precision(17);
  os << what << " " << value;
  return os.str();
}

void check_waveguide(const WaveguideSpec& w, std::vector<Violation>& out) {
  const double norm = w.axis_direction.norm();
  if (!(std::abs(norm - 1.0) <= 1e-12))
    out.push_back({"axis_not_unit", describe("waveguide axis norm", norm)});
  if (!(w.relative_permittivity >= 1.0))
    out.push_back({"permittivity_below_one", describe("waveguide relative permittivity", w.relative_permittivity)});
  if (!(w.length_m > 0.0))
    out.push_back({"non_positive_length", describe("waveguide length", w.length_m)});
  if (!(w.height_m() > 0.0))
    out.push_back({"non_positive_height", describe("waveguide height", w.height_m())});
  if (!(w.guide_attenuation_np_per_m >= 0.0))
    out.push_back({"negative_attenuation", describe("waveguide attenuation", w.guide_attenuation_np_per_m)});
}

} // namespace

std::vector<Violation> validate_scenario(const Scenario& s, const ValidationOptions& opts) {
  std::vector<Violation> out;

  if (!(s.carrier.frequency_hz > 0.0) || !std::isfinite(s.carrier.frequency_hz))
    out.push_back({"non_positive_frequency", describe("carrier frequency", s.carrier.frequency_hz)});

  if (s.waveguides.empty())
    out.push_back({"empty_waveguide_set", "scenario has no waveguides"});
  for (const auto& w : s.waveguides)
    check_waveguide(w, out);

  if (opts.require_common_height && !s.waveguides.empty()) {
    const double h0 = s.waveguides.front().height_m();
    const bool mixed = std::any_of(s.waveguides.begin(), s.waveguides.end(),
                                   [h0](const WaveguideSpec& w) { return w.height_m() != h0; });
    if (mixed)
      out.push_back({"mixed_waveguide_heights", "waveguides do not share a common height"});
  }

  if (s.users.positions.empty())
    out.push_back({"empty_user_set", "scenario has no users"});
  for (const auto& p : s.users.positions)
    if (p.z() != 0.0)
      out.push_back({"user_off_ground", describe("user z coordinate", p.z())});

  if (!(s.transmit_snr > 0.0))
    out.push_back({"non_positive_snr", describe("transmit snr", s.transmit_snr)});

  const auto& los = s.los_model;
  if (!(los.rho_los >= 0.0))
    out.push_back({"negative_rho_los", describe("los rho", los.rho_los)});
  if (!(los.nlos_extra_loss_db >= 0.0))
    out.push_back({"negative_nlos_penalty", describe("nlos extra loss", los.nlos_extra_loss_db)});
  if (los.kind == LoSKind::inmo) {
    const auto& m = los.inmo;
    if (!(m.plateau_m >= 0.0 && m.near_scale_m > 0.0 && m.breakpoint_m >= m.plateau_m &&
          m.far_weight >= 0.0 && m.far_weight <= 1.0 && m.far_scale_m > 0.0))
      out.push_back({"invalid_inmo_parameters", "inmo curve parameters out of range"});
  }

  std::sort(out.begin(), out.end());
  return out;
}

void require_valid(const Scenario& s, const ValidationOptions& opts) {
  const auto violations = validate_scenario(s, opts);
  if (violations.empty())
    return;
  std::string msg = "invalid scenario:";
  for (const auto& v : violations)
    msg += "\n  " + v.code + ": " + v.message;
  throw ConfigError(msg);
}

Projection project_onto_waveguide(const WaveguideSpec& w, const Vec3& p) {
  Projection out;
  out.offset = std::clamp((p - w.feed_point).dot(w.axis_direction), 0.0, w.length_m);
  out.foot_point = w.point_at(out.offset);
  out.distance = (p - out.foot_point).norm();
  return out;
}

} // namespace pinch
