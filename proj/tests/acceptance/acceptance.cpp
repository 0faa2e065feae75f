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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "pinch/access.hpp"
#include "pinch/beamforming.hpp"
#include "pinch/channel.hpp"
#include "pinch/errors.hpp"
#include "pinch/experiments.hpp"
#include "pinch/io.hpp"
#include "pinch/placement.hpp"
#include "support.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace pinch;
using pinch::test::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Clock {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::filesystem::path scenario_dir() { return PINCHSIM_SCENARIO_DIR; }

Outcome ac1() {
  double worst = 0.0;
  Rng rng(101);
  std::vector<double> lambdas{test::kLambda28};
  for (int i = 0; i < 999; ++i)
    lambdas.push_back(rng.uniform(1e-4, 1.0));
  for (double l0 : lambdas) {
    const double expect = l0 / std::sqrt(2.1);
    worst = std::max(worst, std::abs(guided_wavelength(l0, 2.1) - expect) / expect);
  }
  return {worst <= 1e-12, fmt("max relative error %.3g (tol 1e-12)", worst)};
}

Outcome ac2() {
  LoSModelConfig m;
  m.kind = LoSKind::exponential;
  Rng rng(102);
  double worst = 0.0;
  bool zero_ok = true;
  for (int i = 0; i < 1000; ++i) {
    m.rho_los = rng.uniform(0.0, 2.0);
    const double r = rng.uniform(0.0, 50.0);
    worst = std::max(worst, std::abs(los_probability(m, r) - std::exp(-m.rho_los * r)));
    zero_ok = zero_ok && los_probability(m, 0.0) == 1.0;
  }
  return {zero_ok && worst <= 1e-12,
          std::string(zero_ok ? "P(0)=1; " : "P(0)!=1; ") + fmt("max |error| %.3g over 1000 pairs (tol 1e-12)", worst)};
}

Outcome ac3() {
  const auto w = test::y_guide();
  const auto gw = guided_wave(CarrierSpec{}, w);
  const double lg = gw.guided_wavelength_m;
  Rng rng(103);
  double full = 0.0, half = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.uniform(0.0, 19.9);
    const auto fa = in_guide_factor(w, gw, a);
    full = std::max(full, std::abs(test::wrap_phase(std::arg(in_guide_factor(w, gw, a + lg) / fa))));
    half = std::max(half, std::abs(std::abs(test::wrap_phase(std::arg(in_guide_factor(w, gw, a + lg / 2) / fa))) - kPi));
  }
  return {full <= 1e-9 && half <= 1e-9,
          fmt("lambda_g step error %.3g rad, ", full) + fmt("lambda_g/2 step error %.3g rad (tol 1e-9)", half)};
}

Outcome ac4() {
  Rng rng(104);
  double worst = 0.0;
  int done = 0;
  while (done < 1000) {
    const auto G = rng.cmatrix(3, 3);
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G);
    const auto& sv = svd.singularValues();
    if (sv(0) / sv(2) > 1e3)
      continue; // keep well-conditioned draws only
    const auto B = zf_beamformer(G);
    for (Eigen::Index i = 0; i < 3; ++i)
      for (Eigen::Index j = 0; j < 3; ++j)
        if (i != j)
          worst = std::max(worst, std::abs((G.row(j) * B.precoder(i)).value()) / G.row(j).norm());
    ++done;
  }
  return {worst <= 1e-10, fmt("max normalized cross term %.3g over 1000 channels (tol 1e-10)", worst)};
}

Outcome ac5() {
  Rng rng(105);
  std::size_t losses = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto G = rng.cmatrix(1, 3);
    const double matched = std::abs((G.row(0) * mrc_beamformer(G).precoder(0)).value());
    for (int v = 0; v < 1000; ++v)
      if (std::abs((G.row(0) * rng.unit_vector(3)).value()) > matched)
        ++losses;
  }
  return {losses == 0, std::to_string(losses) + " random beams beat the matched beam in 1000 x 1000 trials"};
}

Outcome ac6() {
  Rng rng(106);
  double worst = -1e300; // max over rate - bound
  std::size_t checked = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<Vec3> users;
    for (int k = 0; k < 3; ++k)
      users.push_back(rng.ground_point(-5, 5, 0, 10));
    auto s = test::three_guide_scenario(users, std::pow(10.0, rng.uniform(0, 12)));
    s.los_model.kind = LoSKind::inmo;
    const auto layout = PinchingLayout::single_antenna({rng.uniform(0, 10), rng.uniform(0, 10), rng.uniform(0, 10)});
    const auto draw = LosDraw::seeded(static_cast<std::uint64_t>(t));
    const auto H = build_channel(s, layout, draw);
    const auto bound = conventional_bound(H, s.transmit_snr);
    auto against = [&](const std::vector<double>& rates, const std::vector<std::size_t>& users_of) {
      for (std::size_t i = 0; i < rates.size(); ++i) {
        worst = std::max(worst, rates[i] - bound[users_of[i]]);
        ++checked;
      }
    };
    const std::vector<std::size_t> all{0, 1, 2};
    try {
      against(evaluate_rates(H, zf_beamformer(H), s.transmit_snr).per_user_rate_bps_hz, all);
    } catch (const NumericalError&) {
    }
    against(evaluate_rates(H, mrc_beamformer(H), s.transmit_snr).per_user_rate_bps_hz, all);

    const auto beam = rng.unit_vector(3);
    std::vector<double> p{rng.uniform(0.1, 1), rng.uniform(0.1, 1), rng.uniform(0.1, 1)};
    const double tot = p[0] + p[1] + p[2];
    for (auto& x : p)
      x /= tot;
    p[2] = 1.0 - p[0] - p[1];
    const auto cluster = make_noma_cluster(H.gains, all, p, beam);
    against(noma_rates(s, H, cluster, beam, s.transmit_snr).per_user_rate_bps_hz, cluster.users);

    TdmaSchedule schedule;
    for (std::size_t k = 0; k < 3; ++k)
      schedule.slots.push_back({k, layout, k == 2 ? 1.0 - 2.0 / 3.0 : 1.0 / 3.0});
    against(tdma_rates(s, schedule, draw).per_user_rate_bps_hz, all);
  }
  return {worst <= 1e-12,
          fmt("max (rate - bound) %.3g", worst) + " over " + std::to_string(checked) +
              " ZF/MRC/NOMA/TDMA user rates in 1000 instances (slack 1e-12)"};
}

Outcome ac7() {
  const auto doc = load_scenario_document(scenario_dir() / "heatmap_single_waveguide.yaml");
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::heatmap;
  apply_experiment_section(doc.text, cfg);
  cfg.grid = {-5, 5, 0, 10, 0.25};
  const Clock clock;
  const auto r = run_heatmap(cfg, doc.scenario, doc.text);
  const double elapsed = clock.seconds();

  double deviation = 0.0;
  std::size_t below = 0, not_decaying = 0;
  const double y0 = doc.scenario.waveguides[0].feed_point.y();
  for (std::size_t i = 0; i < r.nx; ++i) {
    const double ref = r.cells[i].rate_pinching;
    for (std::size_t j = 0; j < r.ny; ++j) {
      const auto& c = r.cells[j * r.nx + i];
      deviation = std::max(deviation, std::abs(c.rate_pinching - ref));
      if (c.rate_pinching < c.rate_conventional_los)
        ++below;
      if (j > 0 && c.y > y0 && !(c.rate_conventional_los < r.cells[(j - 1) * r.nx + i].rate_conventional_los))
        ++not_decaying;
    }
  }
  const bool pass = deviation <= 1e-9 && below == 0 && not_decaying == 0 && elapsed < 10.0;
  std::ostringstream os;
  os << r.nx << "x" << r.ny << " cells; along-axis pinching deviation " << fmt("%.3g", deviation)
     << " (tol 1e-9); cells with pinching < conventional LoS: " << below
     << "; non-decaying steps: " << not_decaying << "; " << fmt("%.2f s (target < 10 s)", elapsed);
  return {pass, os.str()};
}

Outcome ac8() {
  const auto doc = load_scenario_document(scenario_dir() / "mimo_three_waveguides.yaml");
  std::ostringstream os;
  bool pass = true;
  double total = 0.0;
  for (auto objective : {ObjectiveKind::sum_rate, ObjectiveKind::max_min_rate}) {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::compare_mimo;
    apply_experiment_section(doc.text, cfg);
    cfg.snr_sweep_db = {0, 10, 20, 30};
    cfg.drops = std::max<std::size_t>(cfg.drops, 100);
    cfg.users_per_drop = 3;
    cfg.objective = objective;
    const Clock clock;
    const auto r = run_compare_mimo(cfg, doc.scenario, doc.text);
    const double elapsed = clock.seconds();
    total += elapsed;
    os << to_string(objective) << " (" << cfg.drops << " drops, " << fmt("%.1f s", elapsed) << "):";
    for (const auto& row : r.rows) {
      const bool ok = row.pinching_zf > row.conv_bound && row.conv_bound > row.conv_zf && row.conv_bound > row.conv_mrc;
      pass = pass && ok;
      os << " " << fmt("%g dB", row.snr_db) << (ok ? " ok" : " VIOLATED")
         << fmt(" [pinching/bound %.4f", row.pinching_zf / row.conv_bound)
         << fmt(", zf/bound %.4f", row.conv_zf / row.conv_bound)
         << fmt(", mrc/bound %.4f]", row.conv_mrc / row.conv_bound) << ";";
    }
    os << " ";
  }
  // Runtime target applies to the default objective's run.
  os << fmt("total %.1f s", total);
  return {pass, os.str()};
}

Outcome ac9() {
  Rng rng(109);
  double worst = 1e300;
  std::size_t runs = 0;
  for (int t = 0; t < 100; ++t) {
    const Vec3 u = rng.ground_point(-5, 5, 0, 20);
    auto s = test::single_guide_scenario({u});
    const auto& w = s.waveguides[0];
    const auto gw = guided_wave(s.carrier, w);
    for (std::size_t n : {2, 4}) {
      const auto sol = align_multi_on_guide(w, gw, u, n, s);
      const auto c = coherence(w, sol.layout.guides[0], u, s);
      worst = std::min(worst, c.aggregate / c.coherent_bound);
      ++runs;
    }
  }
  return {worst >= 0.99, fmt("min aggregate/coherent bound %.9f", worst) + " over " + std::to_string(runs) +
                             " alignments, n in {2, 4} (threshold 0.99)"};
}

Outcome ac10() {
  double identity = 0.0;
  Rng rng(110);
  for (int t = 0; t < 100; ++t) {
    const double g = rng.uniform(1e-9, 1e-6), rho = std::pow(10.0, rng.uniform(3, 12));
    Eigen::MatrixXcd G(2, 1);
    G << std::sqrt(g), std::sqrt(g);
    for (int i = 1; i <= 99; ++i) {
      const double a = i / 100.0;
      const NomaCluster c{{0, 1}, {a, 1 - a}, {0, 1}};
      const auto r = noma_rates(G, c, Eigen::VectorXcd::Ones(1), rho);
      identity = std::max(identity, std::abs(r.sum_rate_bps_hz - std::log2(1 + g * rho)));
    }
  }
  double margin = 1e300;
  for (int t = 0; t < 100; ++t) {
    auto s = test::single_guide_scenario({rng.ground_point(-5, 5, 0, 20), rng.ground_point(-5, 5, 0, 20)},
                                         std::pow(10.0, rng.uniform(6, 11)));
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::noma_region;
    const auto r = run_noma_region(cfg, s);
    if (!(r.single_strong > r.single_weak))
      continue;
    for (const auto& p : r.points)
      margin = std::min(margin, p.rate_weak / r.single_weak + p.rate_strong / r.single_strong - 1.0);
  }
  return {identity <= 1e-12 && margin >= -1e-12,
          fmt("max |sum - log2(1+g rho)| %.3g (tol 1e-12); ", identity) +
              fmt("min OMA-line margin %.4g on 100 asymmetric drops (>= 0)", margin)};
}

struct Brute {
  double x = 0.0;
  double value = -1e300;
};

Brute dense_scan(const std::function<double(double)>& f, double lo, double hi, double step) {
  Brute b;
  const auto n = static_cast<long>(std::floor((hi - lo) / step));
  for (long i = 0; i <= n; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    const double v = f(x);
    if (v > b.value) {
      b.value = v;
      b.x = x;
    }
  }
  return b;
}

Outcome ac11() {
  Rng rng(111);
  const double grid = test::kLambda28 / 4;
  const double dense = 1e-4;
  std::size_t mismatches = 0, comparisons = 0;
  double worst_value = 0.0;
  auto compare = [&](double x, double v, const Brute& b) {
    ++comparisons;
    worst_value = std::max(worst_value, b.value - v);
    const bool located = std::abs(x - b.x) <= grid || std::abs(v - b.value) <= 1e-9;
    if (!(v >= b.value - 1e-9 && located))
      ++mismatches;
  };
  for (int t = 0; t < 100; ++t) {
    Scenario s;
    s.waveguides = {test::y_guide(10)};
    s.transmit_snr = std::pow(10.0, rng.uniform(0, 11));
    const std::size_t k = 2 + rng.index(3);
    for (std::size_t i = 0; i < k; ++i)
      s.users.positions.push_back(rng.ground_point(-5, 5, -2, 12));
    const auto& w = s.waveguides[0];

    // Single-user placement.
    const UserSet one{{s.users.positions[0]}};
    const auto f1 = [&](double x) { return single_antenna_rates(s, w, one, x)[0]; };
    const double x1 = place_single_for_user(w, one.positions[0]);
    compare(x1, f1(x1), dense_scan(f1, 0, w.length_m, dense));

    // Group placement, both objectives.
    for (auto kind : {ObjectiveKind::sum_rate, ObjectiveKind::max_min_rate}) {
      const auto f = [&](double x) {
        const auto r = single_antenna_rates(s, w, s.users, x);
        double acc = kind == ObjectiveKind::max_min_rate ? 1e300 : 0.0;
        for (double v : r)
          acc = kind == ObjectiveKind::max_min_rate ? std::min(acc, v) : acc + v;
        return acc;
      };
      const auto sol = place_single_for_group(w, s.users, kind, s);
      compare(sol.layout.guides[0].offsets[0], sol.objective_value, dense_scan(f, 0, w.length_m, dense));
    }
  }
  std::ostringstream os;
  os << mismatches << " mismatches in " << comparisons << " comparisons on 100 scenarios; max value shortfall "
     << fmt("%.3g", worst_value) << " (dense scan 1e-4 m, location tolerance lambda0/4)";
  return {mismatches == 0, os.str()};
}

std::string file_bytes(const std::filesystem::path& p) { return read_text_file(p); }

Outcome ac12() {
  const auto root = std::filesystem::temp_directory_path() / "pinchsim_acceptance_repro";
  std::filesystem::remove_all(root);
  struct Job {
    ExperimentKind kind;
    const char* scenario;
  };
  const Job jobs[] = {{ExperimentKind::heatmap, "heatmap_single_waveguide.yaml"},
                      {ExperimentKind::compare_mimo, "mimo_three_waveguides.yaml"},
                      {ExperimentKind::noma_region, "noma_pair.yaml"},
                      {ExperimentKind::tdma_demo, "tdma_pair.yaml"}};
  std::size_t files = 0, differing = 0;
  for (const auto& job : jobs) {
    const auto doc = load_scenario_document(scenario_dir() / job.scenario);
    std::vector<std::string> outputs;
    int run = 0;
    for (std::size_t threads : {1, 1, 4}) {
      ExperimentConfig cfg;
      cfg.kind = job.kind;
      apply_experiment_section(doc.text, cfg);
      if (job.kind == ExperimentKind::compare_mimo)
        cfg.drops = 6;
      cfg.threads = threads;
      cfg.output_dir = root / (std::string(to_string(job.kind)) + "_" + std::to_string(run++));
      outputs.push_back(file_bytes(run_experiment(cfg, doc)));
      ++files;
    }
    for (const auto& o : outputs)
      if (o != outputs.front())
        ++differing;
  }
  std::filesystem::remove_all(root);
  return {differing == 0, std::to_string(files) + " files from 4 experiments (2 serial runs + 1 run on 4 threads each); " +
                              std::to_string(differing) + " differ from the first run"};
}

} // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"AC1", "guided-wavelength law", ac1},
      {"AC2", "exponential LoS probability", ac2},
      {"AC3", "in-guide phase model", ac3},
      {"AC4", "ZF nulling", ac4},
      {"AC5", "MRC optimality", ac5},
      {"AC6", "bound dominance", ac6},
      {"AC7", "single-waveguide heatmap structure", ac7},
      {"AC8", "multi-waveguide ordering", ac8},
      {"AC9", "phase-alignment coherence", ac9},
      {"AC10", "NOMA identity and OMA dominance", ac10},
      {"AC11", "1-D placement oracle equivalence", ac11},
      {"AC12", "byte-identical reproducibility", ac12},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
