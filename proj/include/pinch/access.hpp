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

#include <cstddef>
#include <vector>

namespace pinch {

struct TdmaSlot {
  std::size_t user = 0;
  PinchingLayout layout;
  double fraction = 0.0; // time share in (0, 1]
};

struct TdmaSchedule {
  std::vector<TdmaSlot> slots;
};

// Throws ConfigError unless every user has a slot, every slot names a known
// user, and the fractions lie in (0,1] and sum to one within 1e-12.
void validate_schedule(const TdmaSchedule& schedule, const Scenario& s);

// One equal slot per user with the antenna of waveguide 0 at that user's projection.
TdmaSchedule projection_schedule(const Scenario& s);

/// Rate of user k is the sum over its slots of fraction * log2(1 + rho |g_k|^2),
/// with |g_k|^2 the squared norm of k's row in that slot (matched combining
/// across feeds). The reported SINR is the equivalent 2^rate - 1.
RateReport tdma_rates(const Scenario& s, const TdmaSchedule& schedule, const LosDraw& los = LosDraw::force_los());

struct NomaCluster {
  std::vector<std::size_t> users;  // scenario user indices
  std::vector<double> power_split; // per member, in (0,1), sums to 1
  // Members ordered strongest first by |g_i beam|^2. Messages are decoded in
  // the reverse order: a stronger user cancels every weaker user's message
  // before decoding its own.
  std::vector<std::size_t> sic_order;
};

// Effective gain |g_k beam|^2 of each scenario user.
std::vector<double> effective_gains(const Eigen::MatrixXcd& gains, const Eigen::VectorXcd& beam);

// Fills sic_order from the effective gains (ties keep member order).
NomaCluster make_noma_cluster(const Eigen::MatrixXcd& gains, std::vector<std::size_t> users,
                              std::vector<double> power_split, const Eigen::VectorXcd& beam);

struct InterferingBeam {
  Eigen::VectorXcd beam;
  double power = 0.0; // share of the total budget
};

/// Downlink SIC rates of one cluster sharing `beam`. Each message's rate is set
/// by the weakest SINR among the users that must decode it. Rates are reported
/// in cluster member order.
RateReport noma_rates(const Scenario& s, const ChannelMatrix& H, const NomaCluster& cluster,
                      const Eigen::VectorXcd& beam, double transmit_snr,
                      const std::vector<InterferingBeam>& other_clusters = {});
RateReport noma_rates(const Eigen::MatrixXcd& gains, const NomaCluster& cluster, const Eigen::VectorXcd& beam,
                      double transmit_snr, const std::vector<InterferingBeam>& other_clusters = {});

/// Single waveguide, single antenna: finds an offset on the grid whose gain
/// ranking of the cluster equals target_order (strongest first). If the
/// group-optimal offset already matches it is returned; otherwise the matching
/// offset with the best group objective. Without any match, converged is false
/// and the offset ranks closest (fewest discordant pairs) to the target.
PlacementSolution noma_gain_reorder(const Scenario& s, const std::vector<std::size_t>& cluster_users,
                                    const std::vector<std::size_t>& target_order,
                                    ObjectiveKind objective = ObjectiveKind::sum_rate,
                                    const PlacementOptions& opts = {});

} // namespace pinch
