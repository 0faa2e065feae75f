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
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace pinch;
using pinch::test::Rng;

namespace {

Eigen::VectorXcd one_beam() { return Eigen::VectorXcd::Ones(1); }

Eigen::MatrixXcd gains_column(std::initializer_list<double> g) {
  Eigen::MatrixXcd G(static_cast<Eigen::Index>(g.size()), 1);
  Eigen::Index i = 0;
  for (double x : g)
    G(i++, 0) = std::sqrt(x);
  return G;
}

TdmaSchedule with_fractions(TdmaSchedule s, const std::vector<double>& f) {
  for (std::size_t i = 0; i < f.size(); ++i)
    s.slots[i].fraction = f[i];
  return s;
}

} // namespace

TEST_CASE("TDMA single user equals the bound at the projection") {
  auto s = test::single_guide_scenario({Vec3(2, 5, 0)}, 1e9);
  const auto r = tdma_rates(s, projection_schedule(s));
  const double d = std::sqrt(4.0 + 9.0);
  const double amp = test::kLambda28 / (4 * 3.14159265358979323846 * d);
  CHECK(r.per_user_rate_bps_hz[0] == doctest::Approx(std::log2(1 + 1e9 * amp * amp)).epsilon(1e-12));
  const auto H = build_channel(s, projection_schedule(s).slots[0].layout, LosDraw::force_los());
  CHECK(r.per_user_rate_bps_hz[0] == doctest::Approx(conventional_bound(H, 1e9)[0]).epsilon(1e-14));
  CHECK(r.per_user_sinr[0] == doctest::Approx(1e9 * amp * amp).epsilon(1e-9));
}

TEST_CASE("TDMA symmetric pair gets equal rates") {
  auto s = test::single_guide_scenario({Vec3(-2, 3, 0), Vec3(2, 9, 0)}, 1e9);
  const auto r = tdma_rates(s, projection_schedule(s));
  CHECK(std::abs(r.per_user_rate_bps_hz[0] - r.per_user_rate_bps_hz[1]) <= 1e-12);
  CHECK(r.sum_rate_bps_hz == doctest::Approx(r.per_user_rate_bps_hz[0] * 2));
}

TEST_CASE("TDMA re-placement beats half of a fixed compromise for distant users") {
  for (double gap : {10.0, 14.0, 18.0}) {
    auto s = test::single_guide_scenario({Vec3(1, 1, 0), Vec3(-1, 1 + gap, 0)}, 1e9);
    const auto& w = s.waveguides[0];
    const auto r = tdma_rates(s, projection_schedule(s));
    const auto fixed = place_single_for_group(w, s.users, ObjectiveKind::max_min_rate, s);
    const auto fr = single_antenna_rates(s, w, s.users, fixed.layout.guides[0].offsets[0]);
    for (std::size_t k = 0; k < 2; ++k)
      CHECK(r.per_user_rate_bps_hz[k] >= 0.5 * fr[k]);
  }
}

TEST_CASE("TDMA rate grows with the user's time share") {
  Rng rng(51);
  for (int t = 0; t < 50; ++t) {
    auto s = test::single_guide_scenario({rng.ground_point(-5, 5, 0, 20), rng.ground_point(-5, 5, 0, 20),
                                          rng.ground_point(-5, 5, 0, 20)},
                                         std::pow(10.0, rng.uniform(0, 10)));
    const auto base = projection_schedule(s);
    std::vector<double> f{rng.uniform(0.05, 1), rng.uniform(0.05, 1), rng.uniform(0.05, 1)};
    const double tot = f[0] + f[1] + f[2];
    for (auto& x : f)
      x /= tot;
    f[2] = 1.0 - f[0] - f[1];
    const auto before = tdma_rates(s, with_fractions(base, f));
    const std::size_t k = rng.index(3);
    auto g = f;
    g[k] *= 2;
    const double tg = g[0] + g[1] + g[2];
    for (auto& x : g)
      x /= tg;
    g[2] = 1.0 - g[0] - g[1];
    const auto after = tdma_rates(s, with_fractions(base, g));
    CHECK(after.per_user_rate_bps_hz[k] >= before.per_user_rate_bps_hz[k]);
  }
}

TEST_CASE("TDMA schedule validation") {
  auto s = test::single_guide_scenario({Vec3(0, 1, 0), Vec3(0, 4, 0)});
  auto sched = projection_schedule(s);
  CHECK_NOTHROW(validate_schedule(sched, s));
  auto bad = sched;
  bad.slots[0].user = 7;
  CHECK_THROWS_AS(tdma_rates(s, bad), ConfigError);
  bad = with_fractions(sched, {0.7, 0.7});
  CHECK_THROWS_AS(validate_schedule(bad, s), ConfigError);
  bad = with_fractions(sched, {1.0, 0.0});
  CHECK_THROWS_AS(validate_schedule(bad, s), ConfigError);
  bad = sched;
  bad.slots[1].user = 0;
  CHECK_THROWS_AS(validate_schedule(bad, s), ConfigError);
  CHECK_THROWS_AS(validate_schedule(TdmaSchedule{}, s), ConfigError);
}

TEST_CASE("NOMA single-user cluster reduces to the single-beam rate") {
  const auto G = gains_column({2.5e-7});
  const NomaCluster c{{0}, {1.0}, {0}};
  const auto r = noma_rates(G, c, one_beam(), 1e8);
  CHECK(r.per_user_rate_bps_hz[0] == doctest::Approx(std::log2(1 + 2.5e-7 * 1e8)).epsilon(1e-14));
}

TEST_CASE("equal-gain SIC sum rate identity") {
  const double g = 3e-7, rho = 1e8;
  const auto G = gains_column({g, g});
  for (int i = 1; i <= 99; ++i) {
    const double alpha = i / 100.0;
    const NomaCluster c{{0, 1}, {alpha, 1 - alpha}, {0, 1}};
    const auto r = noma_rates(G, c, one_beam(), rho);
    CHECK(std::abs(r.sum_rate_bps_hz - std::log2(1 + g * rho)) <= 1e-12);
    CHECK(r.per_user_rate_bps_hz[0] == doctest::Approx(std::log2(1 + g * rho * alpha)).epsilon(1e-13));
    CHECK(r.per_user_rate_bps_hz[1] ==
          doctest::Approx(std::log2(1 + g * rho * (1 - alpha) / (1 + g * rho * alpha))).epsilon(1e-13));
  }
}

TEST_CASE("NOMA power share near one serves the stronger user alone") {
  const auto G = gains_column({4e-7, 1e-7});
  const double rho = 1e8;
  const NomaCluster c{{0, 1}, {1 - 1e-12, 1e-12}, {0, 1}};
  const auto r = noma_rates(G, c, one_beam(), rho);
  CHECK(r.per_user_rate_bps_hz[0] == doctest::Approx(std::log2(1 + 4e-7 * rho)).epsilon(1e-9));
  CHECK(r.per_user_rate_bps_hz[1] < 1e-9);
}

TEST_CASE("weak message rate is limited by the stronger decoder only when it is worse") {
  // Deliberately mislabelled order: user 1 is listed as stronger but has the smaller gain.
  const auto G = gains_column({4e-7, 1e-7});
  const double rho = 1e8;
  const NomaCluster wrong{{0, 1}, {0.2, 0.8}, {1, 0}};
  const auto r = noma_rates(G, wrong, one_beam(), rho);
  // User 0's message is decoded by user 0 and user 1; user 1 is the bottleneck.
  const double at1 = 1e-7 * rho * 0.2 / (1 + 1e-7 * rho * 0.8);
  CHECK(r.per_user_sinr[0] == doctest::Approx(at1).epsilon(1e-13));
}

TEST_CASE("NOMA cluster ordering strongest first") {
  const auto G = gains_column({1e-7, 5e-7, 3e-7});
  const auto c = make_noma_cluster(G, {0, 1, 2}, {0.2, 0.3, 0.5}, one_beam());
  CHECK(c.sic_order == std::vector<std::size_t>{1, 2, 0});
  const auto eg = effective_gains(G, one_beam());
  CHECK(eg[1] == doctest::Approx(5e-7));
}

TEST_CASE("NOMA dominates the OMA time-sharing line") {
  Rng rng(52);
  for (int t = 0; t < 200; ++t) {
    const double gs = rng.uniform(1e-8, 1e-6);
    const double gw = gs * rng.uniform(0.01, 0.95);
    const double rho = std::pow(10.0, rng.uniform(5, 10));
    const auto G = gains_column({gw, gs});
    const double cw = std::log2(1 + gw * rho), cs = std::log2(1 + gs * rho);
    for (int i = 1; i <= 99; ++i) {
      const double a = i / 100.0;
      const auto c = make_noma_cluster(G, {0, 1}, {1 - a, a}, one_beam());
      const auto r = noma_rates(G, c, one_beam(), rho);
      CHECK(r.per_user_rate_bps_hz[0] / cw + r.per_user_rate_bps_hz[1] / cs >= 1.0 - 1e-12);
    }
  }
}

TEST_CASE("NOMA interference from other clusters lowers rates") {
  Rng rng(53);
  const auto G = rng.cmatrix(2, 2) * 1e-3;
  const auto beam = rng.unit_vector(2);
  const auto c = make_noma_cluster(G, {0, 1}, {0.3, 0.7}, beam);
  const auto clean = noma_rates(G, c, beam, 1e6);
  const auto dirty = noma_rates(G, c, beam, 1e6, {{rng.unit_vector(2), 0.5}});
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(dirty.per_user_rate_bps_hz[i] < clean.per_user_rate_bps_hz[i]);
}

TEST_CASE("NOMA input validation") {
  const auto G = gains_column({1e-7, 2e-7});
  const auto b = one_beam();
  CHECK_THROWS_AS(noma_rates(G, NomaCluster{}, b, 1), ConfigError);
  CHECK_THROWS_AS(noma_rates(G, NomaCluster{{0, 1}, {0.6, 0.6}, {1, 0}}, b, 1), ConfigError);
  CHECK_THROWS_AS(noma_rates(G, NomaCluster{{0, 1}, {1.0, 0.0}, {1, 0}}, b, 1), ConfigError);
  CHECK_THROWS_AS(noma_rates(G, NomaCluster{{0, 1}, {0.5, 0.5}, {1}}, b, 1), ConfigError);
  CHECK_THROWS_AS(noma_rates(G, NomaCluster{{0, 1}, {0.5, 0.5}, {1, 1}}, b, 1), ConfigError);
  CHECK_THROWS_AS(noma_rates(G, NomaCluster{{0, 1}, {0.5, 0.5}, {1, 0}}, (2.0 * b).eval(), 1), ConfigError);
  CHECK_THROWS_AS(effective_gains(G, Eigen::VectorXcd::Ones(2)), ConfigError);
  CHECK_THROWS_AS(make_noma_cluster(G, {0, 5}, {0.5, 0.5}, b), ConfigError);
}

TEST_CASE("NOMA scenario overload checks the channel") {
  auto s = test::single_guide_scenario({Vec3(0, 2, 0), Vec3(3, 8, 0)});
  const auto H = build_channel(s, PinchingLayout::single_antenna({4.0}), LosDraw::force_los());
  const auto c = make_noma_cluster(H.gains, {0, 1}, {0.2, 0.8}, one_beam());
  const auto a = noma_rates(s, H, c, one_beam(), s.transmit_snr);
  const auto b = noma_rates(H.gains, c, one_beam(), s.transmit_snr);
  CHECK(a.per_user_rate_bps_hz == b.per_user_rate_bps_hz);
  s.users.positions.pop_back();
  CHECK_THROWS_AS(noma_rates(s, H, c, one_beam(), s.transmit_snr), ConfigError);
}

TEST_CASE("gain reordering under geometric dominance") {
  // User 0 sits under the guide, user 1 far to the side at the same y.
  auto s = test::single_guide_scenario({Vec3(0, 5, 0), Vec3(8, 5, 0)});
  const auto ok = noma_gain_reorder(s, {0, 1}, {0, 1});
  CHECK(ok.converged);
  const auto group = place_single_for_group(s.waveguides[0], s.users, ObjectiveKind::sum_rate, s);
  CHECK(ok.layout.guides[0].offsets == group.layout.guides[0].offsets);
  const auto no = noma_gain_reorder(s, {0, 1}, {1, 0});
  CHECK_FALSE(no.converged);
}

TEST_CASE("gain reordering on opposite sides reaches both orders") {
  auto s = test::single_guide_scenario({Vec3(1, 3, 0), Vec3(-1, 15, 0)});
  const auto& w = s.waveguides[0];
  // Grid scan oracle: both rank regions are non-empty.
  bool first = false, second = false;
  for (double x = 0; x <= 20; x += test::kLambda28 / 4) {
    const auto g = single_antenna_gains(s, w, s.users, x);
    (std::norm(g[0]) > std::norm(g[1]) ? first : second) = true;
  }
  CHECK(first);
  CHECK(second);
  for (const std::vector<std::size_t>& target : {std::vector<std::size_t>{0, 1}, std::vector<std::size_t>{1, 0}}) {
    const auto sol = noma_gain_reorder(s, {0, 1}, target);
    CHECK(sol.converged);
    const auto g = single_antenna_gains(s, w, s.users, sol.layout.guides[0].offsets[0]);
    CHECK(std::norm(g[target[0]]) > std::norm(g[target[1]]));
  }
}

TEST_CASE("gain reordering input checks") {
  auto s = test::single_guide_scenario({Vec3(1, 3, 0), Vec3(-1, 15, 0)});
  CHECK_THROWS_AS(noma_gain_reorder(s, {0, 1}, {0, 0}), ConfigError);
  CHECK_THROWS_AS(noma_gain_reorder(s, {0, 4}, {4, 0}), ConfigError);
}
