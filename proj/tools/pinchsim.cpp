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

// pinchsim command-line driver.

#include "pinch/errors.hpp"
#include "pinch/experiments.hpp"
#include "pinch/io.hpp"
#include "pinch/placement.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum ExitCode : int { kOk = 0, kOther = 1, kConfig = 2, kNumerical = 3 };

struct Flags {
  std::string scenario;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> grid_res;
  std::vector<double> snr_db;
  std::optional<std::size_t> drops;
  std::optional<std::size_t> threads;
  std::optional<std::string> objective;
  std::optional<std::size_t> max_cycles;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--scenario", f.scenario, "scenario file")->required();
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--seed", f.seed, "random seed");
  sub->add_option("--grid-res", f.grid_res, "heatmap grid resolution in metres");
  sub->add_option("--snr-db", f.snr_db, "transmit SNR sweep in dB")->delimiter(',');
  sub->add_option("--drops", f.drops, "number of random user drops");
  sub->add_option("--threads", f.threads, "worker threads");
  sub->add_option("--objective", f.objective, "sum_rate, max_min_rate or single_user_rate");
  sub->add_option("--max-cycles", f.max_cycles, "coordinate-descent cycle limit");
}

pinch::ExperimentConfig make_config(const Flags& f, pinch::ExperimentKind kind, const pinch::ScenarioDocument& doc) {
  pinch::ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.scenario_path = f.scenario;
  pinch::apply_experiment_section(doc.text, cfg);
  cfg.output_dir = f.out;
  if (f.seed)
    cfg.seed = *f.seed;
  if (f.grid_res)
    cfg.grid.resolution_m = *f.grid_res;
  if (!f.snr_db.empty())
    cfg.snr_sweep_db = f.snr_db;
  if (f.drops)
    cfg.drops = *f.drops;
  if (f.threads)
    cfg.threads = *f.threads;
  if (f.objective)
    cfg.objective = pinch::parse_objective_kind(*f.objective);
  if (f.max_cycles)
    cfg.max_cycles = *f.max_cycles;
  pinch::validate_config(cfg);
  return cfg;
}

std::string tool_metadata(std::string_view command, const std::string& text) {
  std::ostringstream os;
  os << "pinchsim " << PINCHSIM_VERSION << " command=" << command << " config_sha256=" << pinch::sha256_hex(text);
  return os.str();
}

int run_optimize(const Flags& f) {
  const auto doc = pinch::load_scenario_document(f.scenario);
  pinch::ExperimentConfig cfg;
  pinch::apply_experiment_section(doc.text, cfg);
  pinch::MultiWaveguideOptions opts;
  opts.objective = f.objective ? pinch::parse_objective_kind(*f.objective) : cfg.objective;
  opts.max_cycles = f.max_cycles ? *f.max_cycles : cfg.max_cycles;
  const auto sol = pinch::optimize_multi_waveguide(doc.scenario, opts);
  const std::filesystem::path out = f.out;
  std::filesystem::create_directories(out);
  pinch::write_text_file(out / "solution.yaml", pinch::emit_solution(sol));
  std::ostringstream trace;
  pinch::write_trace_csv(trace, sol.trace, tool_metadata("optimize", doc.text));
  pinch::write_text_file(out / "trace.csv", trace.str());
  std::cout << (out / "solution.yaml").string() << "\n";
  return kOk;
}

int run_channel(const Flags& f) {
  const auto doc = pinch::load_scenario_document(f.scenario);
  if (!doc.layout)
    throw pinch::ConfigError("channel: scenario has no layout section");
  const auto draw = pinch::LosDraw::seeded(f.seed.value_or(1));
  const auto H = pinch::build_channel(doc.scenario, *doc.layout, draw);
  const std::filesystem::path out = f.out;
  std::filesystem::create_directories(out);
  std::ostringstream os;
  pinch::write_channel_csv(os, H, tool_metadata("channel", doc.text));
  pinch::write_text_file(out / "channel.csv", os.str());
  std::cout << (out / "channel.csv").string() << "\n";
  return kOk;
}

int run_kind(const Flags& f, pinch::ExperimentKind kind) {
  const auto doc = pinch::load_scenario_document(f.scenario);
  const auto cfg = make_config(f, kind, doc);
  std::filesystem::create_directories(cfg.output_dir);
  std::cout << pinch::run_experiment(cfg, doc).string() << "\n";
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"pinchsim: pinching-antenna system simulator"};
  app.set_version_flag("--version", std::string(PINCHSIM_VERSION));
  app.require_subcommand(1);

  Flags flags;
  struct Entry {
    const char* name;
    const char* help;
    std::optional<pinch::ExperimentKind> kind;
  };
  const Entry entries[] = {
      {"heatmap", "rate heatmap over a user grid, one waveguide", pinch::ExperimentKind::heatmap},
      {"compare-mimo", "pinching vs conventional multi-user rates over random drops",
       pinch::ExperimentKind::compare_mimo},
      {"noma-region", "two-user NOMA rate pairs over a power-split sweep", pinch::ExperimentKind::noma_region},
      {"tdma-demo", "per-user TDMA rates", pinch::ExperimentKind::tdma_demo},
      {"optimize", "coordinate-descent placement; writes solution.yaml and trace.csv", std::nullopt},
      {"channel", "channel matrix for the scenario's layout; writes channel.csv", std::nullopt},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, flags);
    subs.emplace_back(sub, &e);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    for (const auto& [sub, entry] : subs) {
      if (!sub->parsed())
        continue;
      if (entry->kind)
        return run_kind(flags, *entry->kind);
      if (std::string_view(entry->name) == "optimize")
        return run_optimize(flags);
      return run_channel(flags);
    }
  } catch (const pinch::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const pinch::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const pinch::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return kOther;
}
