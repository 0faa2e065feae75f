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

#include "pinch/beamforming.hpp"
#include "pinch/channel.hpp"
#include "pinch/layout.hpp"
#include "pinch/placement.hpp"
#include "pinch/scenario.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pinch {

// Scenario files are YAML:
//
//   carrier: {frequency_hz: 28.0e9}
//   transmit_snr_db: 20
//   los_model: {kind: inmo, rho_los: 0.1, nlos_extra_loss_db: 20}
//   waveguides:
//     - {feed_point: [0, 0, 3], axis_direction: [0, 1, 0], length_m: 20,
//        relative_permittivity: 2.1, guide_attenuation_np_per_m: 0}
//   users: [[2, 5, 0]]
//   layout:                        # optional
//     minimum_spacing_m: 0.00535
//     waveguides: [{offsets: [5.0], weights: [1.0]}]
//   experiment: {...}              # optional, see experiments.hpp
struct ScenarioDocument {
  Scenario scenario;
  std::optional<PinchingLayout> layout;
  std::string text; // source, for digests
};

ScenarioDocument parse_scenario_document(const std::string& text);
ScenarioDocument load_scenario_document(const std::filesystem::path& path);
Scenario parse_scenario(const std::string& text);

std::string emit_scenario(const Scenario& s, const std::optional<PinchingLayout>& layout = std::nullopt);

// Solutions use the same tree format: the layout section plus objective fields.
std::string emit_solution(const PlacementSolution& sol);
PlacementSolution parse_solution(const std::string& text);

std::string_view to_string(LoSKind kind);
std::string_view to_string(ObjectiveKind kind);
std::string_view to_string(BeamformerKind kind);
LoSKind parse_los_kind(std::string_view s);
ObjectiveKind parse_objective_kind(std::string_view s);
BeamformerKind parse_beamformer_kind(std::string_view s);

double db_to_linear(double db);
double linear_to_db(double x);

// Shortest round-trip decimal form.
std::string format_double(double x);
// "re+imj" / "re-imj".
std::string format_complex(cdouble z);
cdouble parse_complex(std::string_view text);

std::string sha256_hex(std::string_view data);

// CSV writers. `metadata` is written verbatim as a single '#' header line.
void write_channel_csv(std::ostream& os, const ChannelMatrix& H, const std::string& metadata);
void write_rate_reports_csv(std::ostream& os, const std::vector<RateReport>& reports, const std::string& metadata);
void write_trace_csv(std::ostream& os, const std::vector<double>& trace, const std::string& metadata);

// Writes `content` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

} // namespace pinch
