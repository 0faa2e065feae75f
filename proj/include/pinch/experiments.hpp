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
#include "pinch/io.hpp"
#include "pinch/placement.hpp"
#include "pinch/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pinch {

enum class ExperimentKind { heatmap, compare_mimo, noma_region, tdma_demo };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view s);

// Axis-aligned region on the ground plane. Heatmaps sample it on a grid;
// compare_mimo draws users uniformly from it.
struct GridSpec {
  double x_min = -5.0;
  double x_max = 5.0;
  double y_min = 0.0;
  double y_max = 10.0;
  double resolution_m = 0.25;
};

struct ExperimentConfig {
  std::filesystem::path scenario_path;
  ExperimentKind kind = ExperimentKind::heatmap;
  GridSpec grid{};
  std::vector<double> snr_sweep_db; // empty: use the scenario's transmit SNR
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = ".";

  std::size_t drops = 100;
  std::size_t users_per_drop = 3;
  std::size_t threads = 1; // does not affect output bytes
  ObjectiveKind objective = ObjectiveKind::sum_rate;
  std::size_t max_cycles = 20;
  std::vector<double> noma_alpha; // power share of the stronger user; empty: 0.01 .. 0.99
  bool pinching_force_los = true;
};

// Overlays the optional `experiment:` section of a scenario file onto cfg.
//   experiment: {region: [x0, x1, y0, y1], grid_resolution_m: 0.25, snr_db: [0, 10],
//                seed: 1, drops: 100, users_per_drop: 3, objective: sum_rate,
//                max_cycles: 20, noma_alpha: [0.1, 0.2], pinching_force_los: true}
void apply_experiment_section(const std::string& scenario_text, ExperimentConfig& cfg);

// Throws ConfigError on an unusable configuration.
void validate_config(const ExperimentConfig& cfg);

// Digest of everything that determines the output bytes.
std::string config_digest(const ExperimentConfig& cfg, const std::string& scenario_text);
std::string metadata_line(const ExperimentConfig& cfg, const std::string& scenario_text);

// M antennas at the waveguides' height spaced lambda0/2, centred on the origin along x.
std::vector<Vec3> conventional_array(const Scenario& s, std::size_t count);

struct HeatmapCell {
  double x = 0.0;
  double y = 0.0;
  double rate_conventional = 0.0;     // LoS state sampled from the scenario's model
  double rate_conventional_los = 0.0; // same antenna, LoS forced
  double rate_pinching = 0.0;
  bool conventional_los = true;
};

struct HeatmapResult {
  std::vector<HeatmapCell> cells; // row-major, y outer loop
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::string metadata;
};

// Grid coordinates covering [lo, hi] exactly; throws if resolution does not tile it.
std::vector<double> grid_axis(double lo, double hi, double resolution);

HeatmapResult run_heatmap(const ExperimentConfig& cfg, const Scenario& s, const std::string& scenario_text = {});
std::string heatmap_csv(const HeatmapResult& r);

struct MimoRow {
  double snr_db = 0.0;
  double conv_zf = 0.0;
  double conv_mrc = 0.0;
  double conv_bound = 0.0;
  double pinching_zf = 0.0;
  std::size_t drops = 0;
  std::size_t conv_zf_failures = 0;
};

struct CompareMimoResult {
  std::vector<MimoRow> rows;
  std::string metadata;
};

// Mean per-user rates over seeded user drops for each swept SNR.
CompareMimoResult run_compare_mimo(const ExperimentConfig& cfg, const Scenario& s,
                                   const std::string& scenario_text = {});
std::string compare_mimo_csv(const CompareMimoResult& r);

// Users drawn for drop `index`; reproducible in isolation from the other drops.
UserSet draw_users(const ExperimentConfig& cfg, std::size_t index);

struct NomaPoint {
  double alpha = 0.0; // power share of the stronger user
  double rate_weak = 0.0;
  double rate_strong = 0.0;
  double sum_rate = 0.0;
};

struct NomaRegionResult {
  std::vector<NomaPoint> points;
  double single_weak = 0.0;   // full-power single-user rates (OMA corner points)
  double single_strong = 0.0;
  double offset = 0.0;        // antenna position used
  std::string metadata;
};

NomaRegionResult run_noma_region(const ExperimentConfig& cfg, const Scenario& s,
                                 const std::string& scenario_text = {});
std::string noma_region_csv(const NomaRegionResult& r);

struct TdmaDemoResult {
  std::vector<RateReport> reports; // tdma (re-placed per slot), tdma_fixed (one group position)
  std::string metadata;
};

TdmaDemoResult run_tdma_demo(const ExperimentConfig& cfg, const Scenario& s, const std::string& scenario_text = {});
std::string tdma_demo_csv(const TdmaDemoResult& r);

// Runs the configured experiment on the scenario and writes its CSV into the
// output directory. Returns the written path.
std::filesystem::path run_experiment(const ExperimentConfig& cfg, const ScenarioDocument& doc);

} // namespace pinch
