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

#include "pinch/access.hpp"
#include "pinch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pinch {

void validate_schedule(const TdmaSchedule& schedule, const Scenario& s) {
  if (schedule.slots.empty())
    throw ConfigError("tdma schedule has no slots");
  std::vector<bool> served(s.users.size(), false);
  double total = 0.0;
  for (const auto& slot : schedule.slots) {
    if (slot.user >= s.users.size())
      throw ConfigError("tdma schedule references unknown user " + std::to_string(slot.user));
    if (!(slot.fraction > 0.0 && slot.fraction <= 1.0))
      throw ConfigError("tdma slot fraction must lie in (0, 1]");
    served[slot.user] = true;
    total += slot.fraction;
    require_valid(slot.layout, s);
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ConfigError("tdma slot fractions do not sum to one");
  if (std::find(served.begin(), served.end(), false) != served.end())
    throw ConfigError("tdma schedule leaves a user without a slot");
}

TdmaSchedule projection_schedule(const Scenario& s) {
  TdmaSchedule schedule;
  const double share = 1.0 / static_cast<double>(s.users.size());
  for (std::size_t k = 0; k < s.users.size(); ++k) {
    std::vector<double> offsets;
    for (const auto& w : s.waveguides)
      offsets.push_back(place_single_for_user(w, s.users.positions[k]));
    schedule.slots.push_back({k, PinchingLayout::single_antenna(offsets, default_minimum_spacing(s)), share});
  }
  // Absorb rounding so the fractions sum to one exactly.
  double rest = 1.0;
  for (std::size_t i = 0; i + 1 < schedule.slots.size(); ++i)
    rest -= schedule.slots[i].fraction;
  schedule.slots.back().fraction = rest;
  return schedule;
}

RateReport tdma_rates(const Scenario& s, const TdmaSchedule& schedule, const LosDraw& los) {
  validate_schedule(schedule, s);
  std::vector<double> rate(s.users.size(), 0.0);
  for (const auto& slot : schedule.slots) {
    const auto H = build_channel(s, slot.layout, los);
    const double g = H.gains.row(static_cast<Eigen::Index>(slot.user)).squaredNorm();
    rate[slot.user] += slot.fraction * std::log2(1.0 + s.transmit_snr * g);
  }
  RateReport r;
  r.scheme_label = "tdma";
  for (double x : rate) {
    r.per_user_rate_bps_hz.push_back(x);
    r.per_user_sinr.push_back(std::exp2(x) - 1.0);
    r.sum_rate_bps_hz += x;
  }
  return r;
}

std::vector<double> effective_gains(const Eigen::MatrixXcd& gains, const Eigen::VectorXcd& beam) {
  if (beam.size() != gains.cols())
    throw ConfigError("beam length does not match the feed count");
  std::vector<double> g(static_cast<std::size_t>(gains.rows()));
  for (Eigen::Index k = 0; k < gains.rows(); ++k)
    g[static_cast<std::size_t>(k)] = std::norm((gains.row(k) * beam).value());
  return g;
}

NomaCluster make_noma_cluster(const Eigen::MatrixXcd& gains, std::vector<std::size_t> users,
                              std::vector<double> power_split, const Eigen::VectorXcd& beam) {
  const auto g = effective_gains(gains, beam);
  NomaCluster c;
  c.users = std::move(users);
  c.power_split = std::move(power_split);
  c.sic_order = c.users;
  for (auto u : c.users)
    if (u >= g.size())
      throw ConfigError("noma cluster references unknown user " + std::to_string(u));
  std::stable_sort(c.sic_order.begin(), c.sic_order.end(),
                   [&g](std::size_t a, std::size_t b) { return g[a] > g[b]; });
  return c;
}

RateReport noma_rates(const Eigen::MatrixXcd& gains, const NomaCluster& cluster, const Eigen::VectorXcd& beam,
                      double transmit_snr, const std::vector<InterferingBeam>& other_clusters) {
  const std::size_t n = cluster.users.size();
  if (n == 0)
    throw ConfigError("noma cluster is empty");
  if (cluster.power_split.size() != n || cluster.sic_order.size() != n)
    throw ConfigError("noma cluster power split or SIC order has the wrong length");
  double total = 0.0;
  for (double p : cluster.power_split) {
    if (!(p > 0.0 && p <= 1.0) || (n > 1 && p >= 1.0))
      throw ConfigError("noma power fractions must lie in (0, 1)");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ConfigError("noma power fractions do not sum to one");
  if (std::abs(beam.norm() - 1.0) > 1e-9)
    throw ConfigError("noma beam must have unit norm");

  const auto g = effective_gains(gains, beam);

  // rank[i]: position of member i in sic_order (0 = strongest).
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = std::find(cluster.sic_order.begin(), cluster.sic_order.end(), cluster.users[i]);
    if (it == cluster.sic_order.end())
      throw ConfigError("sic_order is not a permutation of the cluster");
    rank[i] = static_cast<std::size_t>(it - cluster.sic_order.begin());
  }

  std::vector<double> external(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& other : other_clusters)
      external[i] += transmit_snr * other.power *
                     std::norm((gains.row(static_cast<Eigen::Index>(cluster.users[i])) * other.beam).value());

  std::vector<double> sinr(n, 0.0);
  for (std::size_t q = 0; q < n; ++q) {
    // Undecoded power while message q is being decoded: every stronger member.
    double residual = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (rank[j] < rank[q])
        residual += cluster.power_split[j];
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < n; ++v) {
      if (rank[v] > rank[q])
        continue; // weaker users never decode q
      const double gv = g[cluster.users[v]];
      const double s = gv * cluster.power_split[q] * transmit_snr / (1.0 + gv * transmit_snr * residual + external[v]);
      worst = std::min(worst, s);
    }
    sinr[q] = worst;
  }
  return make_rate_report(std::move(sinr), "noma");
}

RateReport noma_rates(const Scenario& s, const ChannelMatrix& H, const NomaCluster& cluster,
                      const Eigen::VectorXcd& beam, double transmit_snr,
                      const std::vector<InterferingBeam>& other_clusters) {
  if (static_cast<std::size_t>(H.users()) != s.users.size())
    throw ConfigError("channel matrix does not match the scenario's users");
  return noma_rates(H.gains, cluster, beam, transmit_snr, other_clusters);
}

namespace {

std::size_t discordant_pairs(const std::vector<double>& gain, const std::vector<std::size_t>& target) {
  std::size_t d = 0;
  for (std::size_t a = 0; a < target.size(); ++a)
    for (std::size_t b = a + 1; b < target.size(); ++b)
      if (!(gain[target[a]] > gain[target[b]]))
        ++d;
  return d;
}

} // namespace

PlacementSolution noma_gain_reorder(const Scenario& s, const std::vector<std::size_t>& cluster_users,
                                    const std::vector<std::size_t>& target_order, ObjectiveKind objective,
                                    const PlacementOptions& opts) {
  if (s.waveguides.empty())
    throw ConfigError("noma_gain_reorder: scenario has no waveguide");
  std::vector<std::size_t> sorted_target = target_order, sorted_users = cluster_users;
  std::sort(sorted_target.begin(), sorted_target.end());
  std::sort(sorted_users.begin(), sorted_users.end());
  if (sorted_target != sorted_users)
    throw ConfigError("noma_gain_reorder: target order is not a permutation of the cluster");

  const auto& w = s.waveguides.front();
  UserSet members;
  for (auto u : cluster_users) {
    if (u >= s.users.size())
      throw ConfigError("noma_gain_reorder: unknown user " + std::to_string(u));
    members.positions.push_back(s.users.positions[u]);
  }
  // Target expressed in member positions.
  std::vector<std::size_t> target;
  for (auto u : target_order)
    target.push_back(static_cast<std::size_t>(std::find(cluster_users.begin(), cluster_users.end(), u) -
                                              cluster_users.begin()));

  auto gains_at = [&](double x) {
    std::vector<double> g;
    for (const auto& c : single_antenna_gains(s, w, members, x, opts.los))
      g.push_back(std::norm(c));
    return g;
  };
  auto objective_at = [&](double x) {
    const auto r = single_antenna_rates(s, w, members, x, opts.los);
    if (objective == ObjectiveKind::max_min_rate)
      return *std::min_element(r.begin(), r.end());
    return std::accumulate(r.begin(), r.end(), 0.0);
  };

  auto group = place_single_for_group(w, members, objective == ObjectiveKind::max_min_rate
                                                      ? ObjectiveKind::max_min_rate
                                                      : ObjectiveKind::sum_rate,
                                      s, opts);
  const double group_x = group.layout.guides.front().offsets.front();
  if (discordant_pairs(gains_at(group_x), target) == 0) {
    group.converged = true;
    return group;
  }

  const double step = opts.grid_step_m > 0.0 ? opts.grid_step_m : 0.25 * s.wavelength();
  const auto n = static_cast<std::size_t>(std::floor(w.length_m / step + 1e-9));
  double best_x = 0.0, best_obj = -std::numeric_limits<double>::infinity();
  std::size_t best_d = std::numeric_limits<std::size_t>::max();
  for (std::size_t j = 0; j <= n + 1; ++j) {
    const double x = std::min(static_cast<double>(j) * step, w.length_m);
    if (j == n + 1 && x <= static_cast<double>(n) * step)
      break;
    const auto d = discordant_pairs(gains_at(x), target);
    const double obj = objective_at(x);
    if (d < best_d || (d == best_d && obj > best_obj + 1e-12)) {
      best_d = d;
      best_obj = obj;
      best_x = x;
    }
  }

  PlacementSolution sol;
  sol.objective_kind = objective;
  sol.layout = PinchingLayout::single_antenna({best_x}, group.layout.minimum_spacing_m);
  sol.objective_value = best_obj;
  sol.iterations = n + 1;
  sol.converged = best_d == 0;
  sol.trace = {best_obj};
  return sol;
}

} // namespace pinch
