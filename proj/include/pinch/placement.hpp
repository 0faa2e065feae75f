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
#include "pinch/scenario.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace pinch {

enum class ObjectiveKind { max_min_rate, sum_rate, single_user_rate };

struct PlacementSolution {
  PinchingLayout layout;
  double objective_value = 0.0;
  ObjectiveKind objective_kind = ObjectiveKind::sum_rate;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> trace; // objective after the initial point and each accepted step
};

struct PlacementOptions {
  double grid_step_m = 0.0;     // 0 selects a quarter free-space wavelength
  double tolerance_m = 1e-9;    // golden-section bracket width
  double minimum_spacing_m = -1; // negative selects half a free-space wavelength
  double phase_tolerance_rad = 1e-6;
  LosDraw los = LosDraw::force_los(); // pinching links are LoS unless overridden
};

// Result of a 1-D maximization.
struct ScanResult {
  double x = 0.0;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

using Objective1D = std::function<double(double)>;

/// Golden-section search for a maximum of f on [a, b], stopping when the bracket
/// is narrower than tol.
ScanResult golden_section_maximize(const Objective1D& f, double a, double b, double tol);

/// Grid scan over [lo, hi] at `step` (both ends included), then golden-section
/// refinement inside the cells adjacent to the best grid point. Ties within
/// 1e-12 resolve to the smaller offset.
ScanResult scan_and_refine(const Objective1D& f, double lo, double hi, double step, double tol);

// Clamped projection of the user onto the waveguide.
double place_single_for_user(const WaveguideSpec& w, const Vec3& user);

// Complex gain of a single antenna at `offset` to each user.
std::vector<cdouble> single_antenna_gains(const Scenario& s, const WaveguideSpec& w, const UserSet& users, double offset,
                                          const LosDraw& los = LosDraw::force_los());

// Per-user rates log2(1 + rho |g_k|^2) of a single antenna at `offset` serving `users`.
std::vector<double> single_antenna_rates(const Scenario& s, const WaveguideSpec& w, const UserSet& users, double offset,
                                         const LosDraw& los = LosDraw::force_los());

/// One antenna on `w` serving the whole group; maximizes the sum or the minimum
/// of the per-user rates over the waveguide.
PlacementSolution place_single_for_group(const WaveguideSpec& w, const UserSet& users, ObjectiveKind objective,
                                         const Scenario& s, const PlacementOptions& opts = {});

/// Places n antennas around the user's projection and moves each so its
/// in-guide plus free-space phase matches the first antenna's modulo 2 pi.
/// Throws DomainError when the waveguide cannot host the array.
PlacementSolution align_multi_on_guide(const WaveguideSpec& w, const GuidedWave& gw, const Vec3& user,
                                       std::size_t n_antennas, const Scenario& s, const PlacementOptions& opts = {});

// Magnitude of the aggregate gain of a one-waveguide array at a user, and the
// coherent (triangle inequality) bound sum_n weight_n |gain_n|.
struct CoherenceCheck {
  double aggregate = 0.0;
  double coherent_bound = 0.0;
  double max_phase_error_rad = 0.0;
};

CoherenceCheck coherence(const WaveguideSpec& w, const GuideAntennas& antennas, const Vec3& user, const Scenario& s);

struct MultiWaveguideOptions {
  BeamformerKind beamformer = BeamformerKind::zf;
  ObjectiveKind objective = ObjectiveKind::sum_rate;
  std::size_t max_cycles = 20;
  double improvement_tolerance = 1e-9;
  std::optional<std::vector<double>> initial_offsets; // default: projection of the nearest user
  PlacementOptions placement{};
};

// Objective of a user x feed channel under the chosen beamformer. Rank
// deficient candidates score -infinity.
double beamformed_objective(const Eigen::MatrixXcd& gains, BeamformerKind kind, ObjectiveKind objective,
                            double transmit_snr);

/// Coordinate descent over the single antenna of every waveguide. Each step is a
/// grid scan plus golden-section refinement of one offset with the others held
/// fixed; the beamformer is re-derived for every candidate.
PlacementSolution optimize_multi_waveguide(const Scenario& s, const MultiWaveguideOptions& opts = {});

} // namespace pinch
