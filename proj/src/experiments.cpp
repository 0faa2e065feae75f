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

#include "pinch/experiments.hpp"
#include "pinch/access.hpp"
#include "pinch/channel.hpp"
#include "pinch/errors.hpp"
#include "pinch/io.hpp"
#include "pinch/parallel.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <random>
#include <sstream>

namespace pinch {

namespace {

// Stream tags for derive_seed; one generator stream per purpose.
constexpr std::uint64_t kTagHeatmapLos = 0x4845'4154ULL;
constexpr std::uint64_t kTagDropUsers = 0x4452'4f50ULL;
constexpr std::uint64_t kTagDropLos = 0x4c4f'5344ULL;

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<double> default_alpha_sweep() {
  std::vector<double> a;
  for (int i = 1; i <= 99; ++i)
    a.push_back(i / 100.0);
  return a;
}

std::vector<double> snr_list(const ExperimentConfig& cfg, const Scenario& s) {
  if (cfg.snr_sweep_db.empty())
    return {linear_to_db(s.transmit_snr)};
  return cfg.snr_sweep_db;
}

double snr_linear(const ExperimentConfig& cfg, const Scenario& s) {
  return cfg.snr_sweep_db.empty() ? s.transmit_snr : db_to_linear(cfg.snr_sweep_db.front());
}

} // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
  case ExperimentKind::heatmap:
    return "heatmap";
  case ExperimentKind::compare_mimo:
    return "compare-mimo";
  case ExperimentKind::noma_region:
    return "noma-region";
  case ExperimentKind::tdma_demo:
    return "tdma-demo";
  }
  return "heatmap";
}

ExperimentKind parse_experiment_kind(std::string_view s) {
  if (s == "heatmap")
    return ExperimentKind::heatmap;
  if (s == "compare-mimo" || s == "compare_mimo")
    return ExperimentKind::compare_mimo;
  if (s == "noma-region" || s == "noma_region")
    return ExperimentKind::noma_region;
  if (s == "tdma-demo" || s == "tdma_demo")
    return ExperimentKind::tdma_demo;
  throw ConfigError("unknown experiment '" + std::string(s) + "'");
}

void apply_experiment_section(const std::string& scenario_text, ExperimentConfig& cfg) {
  YAML::Node root;
  try {
    root = YAML::Load(scenario_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed scenario file: ") + e.what());
  }
  const auto e = root["experiment"];
  if (!e)
    return;
  try {
    if (const auto r = e["region"]) {
      if (!r.IsSequence() || r.size() != 4)
        throw ConfigError("experiment.region must be [x_min, x_max, y_min, y_max]");
      cfg.grid.x_min = r[0].as<double>();
      cfg.grid.x_max = r[1].as<double>();
      cfg.grid.y_min = r[2].as<double>();
      cfg.grid.y_max = r[3].as<double>();
    }
    if (e["grid_resolution_m"])
      cfg.grid.resolution_m = e["grid_resolution_m"].as<double>();
    if (e["snr_db"])
      cfg.snr_sweep_db = e["snr_db"].as<std::vector<double>>();
    if (e["seed"])
      cfg.seed = e["seed"].as<std::uint64_t>();
    if (e["drops"])
      cfg.drops = e["drops"].as<std::size_t>();
    if (e["users_per_drop"])
      cfg.users_per_drop = e["users_per_drop"].as<std::size_t>();
    if (e["objective"])
      cfg.objective = parse_objective_kind(e["objective"].as<std::string>());
    if (e["max_cycles"])
      cfg.max_cycles = e["max_cycles"].as<std::size_t>();
    if (e["noma_alpha"])
      cfg.noma_alpha = e["noma_alpha"].as<std::vector<double>>();
    if (e["pinching_force_los"])
      cfg.pinching_force_los = e["pinching_force_los"].as<bool>();
  } catch (const YAML::Exception& ex) {
    throw ConfigError(std::string("bad experiment section: ") + ex.what());
  }
}

void validate_config(const ExperimentConfig& cfg) {
  const auto& g = cfg.grid;
  if (!(g.resolution_m > 0.0))
    throw ConfigError("grid resolution must be positive");
  if (!(g.x_max >= g.x_min && g.y_max >= g.y_min))
    throw ConfigError("grid bounds are inverted");
  if (cfg.kind == ExperimentKind::compare_mimo) {
    if (cfg.snr_sweep_db.empty())
      throw ConfigError("compare-mimo needs a non-empty SNR sweep (--snr-db)");
    if (cfg.drops == 0 || cfg.users_per_drop == 0)
      throw ConfigError("compare-mimo needs at least one drop and one user per drop");
  }
  for (double a : cfg.noma_alpha)
    if (!(a > 0.0 && a < 1.0))
      throw ConfigError("noma power shares must lie in (0, 1)");
}

std::string config_digest(const ExperimentConfig& cfg, const std::string& scenario_text) {
  std::ostringstream os;
  os << "kind=" << to_string(cfg.kind) << ";grid=" << format_double(cfg.grid.x_min) << ","
     << format_double(cfg.grid.x_max) << "," << format_double(cfg.grid.y_min) << "," << format_double(cfg.grid.y_max)
     << "," << format_double(cfg.grid.resolution_m) << ";snr=";
  for (double x : cfg.snr_sweep_db)
    os << format_double(x) << ",";
  os << ";seed=" << cfg.seed << ";drops=" << cfg.drops << ";users=" << cfg.users_per_drop
     << ";objective=" << to_string(cfg.objective) << ";cycles=" << cfg.max_cycles << ";alpha=";
  for (double x : cfg.noma_alpha)
    os << format_double(x) << ",";
  os << ";force_los=" << cfg.pinching_force_los << ";scenario=" << scenario_text;
  return sha256_hex(os.str());
}

std::string metadata_line(const ExperimentConfig& cfg, const std::string& scenario_text) {
  std::ostringstream os;
  os << "pinchsim " << PINCHSIM_VERSION << " experiment=" << to_string(cfg.kind) << " seed=" << cfg.seed
     << " config_sha256=" << config_digest(cfg, scenario_text);
  return os.str();
}

std::vector<Vec3> conventional_array(const Scenario& s, std::size_t count) {
  const double h = s.waveguides.empty() ? 3.0 : s.waveguides.front().height_m();
  const double spacing = 0.5 * s.wavelength();
  std::vector<Vec3> out;
  for (std::size_t m = 0; m < count; ++m)
    out.emplace_back((static_cast<double>(m) - 0.5 * static_cast<double>(count - 1)) * spacing, 0.0, h);
  return out;
}

std::vector<double> grid_axis(double lo, double hi, double resolution) {
  const double cells = (hi - lo) / resolution;
  const double n = std::round(cells);
  if (std::abs(cells - n) > 1e-9 * std::max(1.0, n))
    throw ConfigError("grid resolution does not tile the region bounds exactly");
  std::vector<double> axis;
  const auto count = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i <= count; ++i)
    axis.push_back(i == count ? hi : lo + static_cast<double>(i) * resolution);
  return axis;
}

HeatmapResult run_heatmap(const ExperimentConfig& cfg, const Scenario& s, const std::string& scenario_text) {
  validate_config(cfg);
  require_valid(s);
  if (s.waveguides.size() != 1)
    throw ConfigError("heatmap needs a scenario with exactly one waveguide");

  const auto& w = s.waveguides.front();
  const auto gw = guided_wave(s.carrier, w);
  const double rho = snr_linear(cfg, s);
  const double lambda0 = s.wavelength();
  const double penalty = s.los_model.nlos_extra_loss_db;
  const auto conv_draw = LosDraw::seeded(derive_seed(cfg.seed, kTagHeatmapLos));
  const auto pinch_draw = cfg.pinching_force_los ? LosDraw::force_los() : conv_draw;

  const auto xs = grid_axis(cfg.grid.x_min, cfg.grid.x_max, cfg.grid.resolution_m);
  const auto ys = grid_axis(cfg.grid.y_min, cfg.grid.y_max, cfg.grid.resolution_m);

  HeatmapResult r;
  r.nx = xs.size();
  r.ny = ys.size();
  r.cells.resize(r.nx * r.ny);
  r.metadata = metadata_line(cfg, scenario_text);

  parallel_for(r.cells.size(), cfg.threads, [&](std::size_t idx) {
    const Vec3 user(xs[idx % r.nx], ys[idx / r.nx], 0.0);
    HeatmapCell& c = r.cells[idx];
    c.x = user.x();
    c.y = user.y();

    const double dc = (user - w.feed_point).norm();
    c.conventional_los = conv_draw.state(s.los_model, idx, 0, w.feed_point, dc);
    c.rate_conventional = std::log2(1.0 + rho * std::norm(free_space_gain(dc, lambda0, c.conventional_los, penalty)));
    c.rate_conventional_los = std::log2(1.0 + rho * std::norm(free_space_gain(dc, lambda0, true, penalty)));

    const double x = place_single_for_user(w, user);
    const Vec3 pos = w.point_at(x);
    const double dp = (user - pos).norm();
    const bool los = pinch_draw.state(s.los_model, idx, 1, pos, dp);
    const cdouble g = in_guide_factor(w, gw, x) * free_space_gain(dp, lambda0, los, penalty);
    c.rate_pinching = std::log2(1.0 + rho * std::norm(g));
  });
  return r;
}

std::string heatmap_csv(const HeatmapResult& r) {
  std::ostringstream os;
  os << "# " << r.metadata << "\n";
  os << "x,y,rate_conventional,rate_conventional_los,rate_pinching,conventional_los\n";
  for (const auto& c : r.cells)
    os << format_double(c.x) << "," << format_double(c.y) << "," << format_double(c.rate_conventional) << ","
       << format_double(c.rate_conventional_los) << "," << format_double(c.rate_pinching) << ","
       << (c.conventional_los ? 1 : 0) << "\n";
  return os.str();
}

UserSet draw_users(const ExperimentConfig& cfg, std::size_t index) {
  std::mt19937_64 rng(derive_seed(cfg.seed, kTagDropUsers, index));
  UserSet users;
  const auto& g = cfg.grid;
  for (std::size_t k = 0; k < cfg.users_per_drop; ++k) {
    const double x = g.x_min + (g.x_max - g.x_min) * uniform01(rng);
    const double y = g.y_min + (g.y_max - g.y_min) * uniform01(rng);
    users.positions.emplace_back(x, y, 0.0);
  }
  return users;
}

CompareMimoResult run_compare_mimo(const ExperimentConfig& cfg, const Scenario& base,
                                   const std::string& scenario_text) {
  validate_config(cfg);
  ValidationOptions vopts;
  vopts.require_common_height = true;
  require_valid(base, vopts);
  if (base.waveguides.size() < 2)
    throw ConfigError("compare-mimo needs at least two waveguides");
  if (cfg.users_per_drop > base.waveguides.size())
    throw ConfigError("compare-mimo with zero-forcing needs users_per_drop <= waveguide count");

  const auto snrs = snr_list(cfg, base);
  const auto antennas = conventional_array(base, base.waveguides.size());

  struct DropResult {
    std::vector<MimoRow> rows;
  };
  std::vector<DropResult> per_drop(cfg.drops);

  parallel_for(cfg.drops, cfg.threads, [&](std::size_t d) {
    Scenario s = base;
    s.users = draw_users(cfg, d);
    const auto conv = build_fixed_array_channel(s, antennas, LosDraw::seeded(derive_seed(cfg.seed, kTagDropLos, d)));

    std::optional<Beamformer> conv_zf;
    try {
      conv_zf = zf_beamformer(conv);
    } catch (const NumericalError&) {
    }
    const auto conv_mrc = mrc_beamformer(conv);

    auto& rows = per_drop[d].rows;
    std::optional<std::vector<double>> warm;
    for (double snr_db : snrs) {
      const double rho = db_to_linear(snr_db);
      MimoRow row;
      row.snr_db = snr_db;
      row.drops = 1;
      if (conv_zf)
        row.conv_zf = evaluate_rates(conv, *conv_zf, rho).mean_rate();
      else
        row.conv_zf_failures = 1;
      row.conv_mrc = evaluate_rates(conv, conv_mrc, rho).mean_rate();
      const auto bound = conventional_bound(conv, rho);
      for (double b : bound)
        row.conv_bound += b / static_cast<double>(bound.size());

      s.transmit_snr = rho;
      MultiWaveguideOptions mopts;
      mopts.beamformer = BeamformerKind::zf;
      mopts.objective = cfg.objective;
      mopts.max_cycles = cfg.max_cycles;
      mopts.initial_offsets = warm;
      if (!cfg.pinching_force_los)
        mopts.placement.los = LosDraw::seeded(derive_seed(cfg.seed, kTagDropLos, d));
      const auto sol = optimize_multi_waveguide(s, mopts);
      warm.emplace();
      for (const auto& g : sol.layout.guides)
        warm->push_back(g.offsets.front());
      const auto H = build_channel(s, sol.layout, mopts.placement.los);
      try {
        row.pinching_zf = evaluate_rates(H, zf_beamformer(H), rho).mean_rate();
      } catch (const NumericalError&) {
        row.pinching_zf = 0.0;
      }
      rows.push_back(row);
    }
  });

  CompareMimoResult result;
  result.metadata = metadata_line(cfg, scenario_text);
  for (std::size_t i = 0; i < snrs.size(); ++i) {
    MimoRow acc;
    acc.snr_db = snrs[i];
    for (const auto& d : per_drop) {
      const auto& r = d.rows[i];
      acc.conv_zf += r.conv_zf;
      acc.conv_mrc += r.conv_mrc;
      acc.conv_bound += r.conv_bound;
      acc.pinching_zf += r.pinching_zf;
      acc.drops += r.drops;
      acc.conv_zf_failures += r.conv_zf_failures;
    }
    const double n = static_cast<double>(acc.drops);
    acc.conv_zf /= n;
    acc.conv_mrc /= n;
    acc.conv_bound /= n;
    acc.pinching_zf /= n;
    result.rows.push_back(acc);
  }
  return result;
}

std::string compare_mimo_csv(const CompareMimoResult& r) {
  std::ostringstream os;
  os << "# " << r.metadata << "\n";
  os << "snr_db,conv_zf,conv_mrc,conv_bound,pinching_zf,drops,conv_zf_failures\n";
  for (const auto& row : r.rows)
    os << format_double(row.snr_db) << "," << format_double(row.conv_zf) << "," << format_double(row.conv_mrc) << ","
       << format_double(row.conv_bound) << "," << format_double(row.pinching_zf) << "," << row.drops << ","
       << row.conv_zf_failures << "\n";
  return os.str();
}

NomaRegionResult run_noma_region(const ExperimentConfig& cfg, const Scenario& base, const std::string& scenario_text) {
  validate_config(cfg);
  require_valid(base);
  if (base.waveguides.size() != 1)
    throw ConfigError("noma-region needs a scenario with exactly one waveguide");
  if (base.users.size() != 2)
    throw ConfigError("noma-region needs exactly two users");

  Scenario s = base;
  s.transmit_snr = snr_linear(cfg, base);
  PlacementOptions popts;
  if (!cfg.pinching_force_los)
    popts.los = LosDraw::seeded(cfg.seed);
  const auto group = place_single_for_group(s.waveguides.front(), s.users, ObjectiveKind::sum_rate, s, popts);
  const auto H = build_channel(s, group.layout, popts.los);
  const Eigen::VectorXcd beam = Eigen::VectorXcd::Ones(1);

  NomaRegionResult r;
  r.metadata = metadata_line(cfg, scenario_text);
  r.offset = group.layout.guides.front().offsets.front();
  const auto order = make_noma_cluster(H.gains, {0, 1}, {0.5, 0.5}, beam).sic_order;
  const std::size_t strong = order[0];
  const std::size_t weak = order[1];
  const auto single = conventional_bound(H, s.transmit_snr);
  r.single_strong = single[strong];
  r.single_weak = single[weak];

  for (double alpha : cfg.noma_alpha.empty() ? default_alpha_sweep() : cfg.noma_alpha) {
    NomaCluster c;
    c.users = {strong, weak};
    c.power_split = {alpha, 1.0 - alpha};
    c.sic_order = order;
    const auto rates = noma_rates(s, H, c, beam, s.transmit_snr);
    r.points.push_back({alpha, rates.per_user_rate_bps_hz[1], rates.per_user_rate_bps_hz[0], rates.sum_rate_bps_hz});
  }
  return r;
}

std::string noma_region_csv(const NomaRegionResult& r) {
  std::ostringstream os;
  os << "# " << r.metadata << "\n";
  os << "alpha,rate_weak,rate_strong,sum,single_weak,single_strong\n";
  for (const auto& p : r.points)
    os << format_double(p.alpha) << "," << format_double(p.rate_weak) << "," << format_double(p.rate_strong) << ","
       << format_double(p.sum_rate) << "," << format_double(r.single_weak) << "," << format_double(r.single_strong)
       << "\n";
  return os.str();
}

TdmaDemoResult run_tdma_demo(const ExperimentConfig& cfg, const Scenario& base, const std::string& scenario_text) {
  validate_config(cfg);
  require_valid(base);
  Scenario s = base;
  s.transmit_snr = snr_linear(cfg, base);
  const LosDraw los = cfg.pinching_force_los ? LosDraw::force_los() : LosDraw::seeded(cfg.seed);

  TdmaDemoResult r;
  r.metadata = metadata_line(cfg, scenario_text);
  r.reports.push_back(tdma_rates(s, projection_schedule(s), los));

  // Same time shares, antenna fixed at the max-min group position.
  PlacementOptions popts;
  popts.los = los;
  std::vector<double> offsets;
  for (const auto& w : s.waveguides)
    offsets.push_back(s.users.size() == 1
                          ? place_single_for_user(w, s.users.positions.front())
                          : place_single_for_group(w, s.users, ObjectiveKind::max_min_rate, s, popts)
                                .layout.guides.front()
                                .offsets.front());
  TdmaSchedule fixed = projection_schedule(s);
  for (auto& slot : fixed.slots)
    slot.layout = PinchingLayout::single_antenna(offsets, default_minimum_spacing(s));
  auto fixed_report = tdma_rates(s, fixed, los);
  fixed_report.scheme_label = "tdma_fixed";
  r.reports.push_back(std::move(fixed_report));
  return r;
}

std::string tdma_demo_csv(const TdmaDemoResult& r) {
  std::ostringstream os;
  write_rate_reports_csv(os, r.reports, r.metadata);
  return os.str();
}

std::filesystem::path run_experiment(const ExperimentConfig& cfg, const ScenarioDocument& doc) {
  std::filesystem::path out;
  std::string content;
  switch (cfg.kind) {
  case ExperimentKind::heatmap:
    out = cfg.output_dir / "heatmap.csv";
    content = heatmap_csv(run_heatmap(cfg, doc.scenario, doc.text));
    break;
  case ExperimentKind::compare_mimo:
    out = cfg.output_dir / "compare_mimo.csv";
    content = compare_mimo_csv(run_compare_mimo(cfg, doc.scenario, doc.text));
    break;
  case ExperimentKind::noma_region:
    out = cfg.output_dir / "noma_region.csv";
    content = noma_region_csv(run_noma_region(cfg, doc.scenario, doc.text));
    break;
  case ExperimentKind::tdma_demo:
    out = cfg.output_dir / "tdma_demo.csv";
    content = tdma_demo_csv(run_tdma_demo(cfg, doc.scenario, doc.text));
    break;
  }
  write_text_file(out, content);
  return out;
}

} // namespace pinch
