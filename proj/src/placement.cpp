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

#include "pinch/placement.hpp"
#include "pinch/errors.hpp"
#include "detail/beamforming_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pinch {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double wrap_phase(double phi) { return std::remainder(phi, kTwoPi); }

double resolve_step(const Scenario& s, const PlacementOptions& opts) {
  return opts.grid_step_m > 0.0 ? opts.grid_step_m : 0.25 * s.wavelength();
}

double resolve_spacing(const Scenario& s, const PlacementOptions& opts) {
  return opts.minimum_spacing_m >= 0.0 ? opts.minimum_spacing_m : default_minimum_spacing(s);
}

std::vector<double> grid_points(double lo, double hi, double step) {
  std::vector<double> pts;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  pts.reserve(n + 2);
  for (std::size_t i = 0; i <= n; ++i)
    pts.push_back(std::min(lo + static_cast<double>(i) * step, hi));
  if (pts.back() < hi)
    pts.push_back(hi);
  return pts;
}

bool better(double candidate, double incumbent) { return candidate > incumbent + kTieTolerance; }

// Golden-section refinement in the cells around grid index j; keeps the grid
// point if refinement does not beat it.
ScanResult refine_around(const Objective1D& f, const std::vector<double>& pts, std::size_t j, double best,
                         double tol, std::size_t evaluations) {
  const double a = pts[j == 0 ? 0 : j - 1];
  const double b = pts[std::min(j + 1, pts.size() - 1)];
  ScanResult g = golden_section_maximize(f, a, b, tol);
  g.evaluations += evaluations;
  if (!better(g.value, best)) {
    g.x = pts[j];
    g.value = best;
  }
  return g;
}

std::vector<double> rates_from_gains(const std::vector<cdouble>& g, double rho) {
  std::vector<double> r;
  r.reserve(g.size());
  for (const auto& x : g)
    r.push_back(std::log2(1.0 + rho * std::norm(x)));
  return r;
}

double group_objective(const std::vector<double>& rates, ObjectiveKind kind) {
  if (rates.empty())
    return 0.0;
  if (kind == ObjectiveKind::max_min_rate)
    return *std::min_element(rates.begin(), rates.end());
  double sum = 0.0;
  for (double r : rates)
    sum += r;
  return sum;
}

cdouble single_gain(const Scenario& s, const WaveguideSpec& w, const GuidedWave& gw, const Vec3& user,
                    std::size_t user_index, double offset, const LosDraw& los) {
  const Vec3 pos = w.point_at(offset);
  const double d = (user - pos).norm();
  const bool state = los.state(s.los_model, user_index, 0, pos, d);
  return in_guide_factor(w, gw, offset) * free_space_gain(d, s.wavelength(), state, s.los_model.nlos_extra_loss_db);
}

} // namespace

ScanResult golden_section_maximize(const Objective1D& f, double a, double b, double tol) {
  constexpr double kInvPhi = 0.6180339887498948482;
  ScanResult out;
  if (b < a)
    std::swap(a, b);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  out.evaluations = 2;
  while (b - a >= tol && out.evaluations < 200) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++out.evaluations;
  }
  out.converged = (b - a) < tol;
  if (fc >= fd) {
    out.x = c;
    out.value = fc;
  } else {
    out.x = d;
    out.value = fd;
  }
  return out;
}

ScanResult scan_and_refine(const Objective1D& f, double lo, double hi, double step, double tol) {
  if (!(step > 0.0))
    throw DomainError("scan_and_refine: grid step must be positive");
  const auto pts = grid_points(lo, hi, step);
  std::size_t best_j = 0;
  double best = kNegInf;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const double v = f(pts[j]);
    if (j == 0 || better(v, best)) {
      best = v;
      best_j = j;
    }
  }
  return refine_around(f, pts, best_j, best, tol, pts.size());
}

double place_single_for_user(const WaveguideSpec& w, const Vec3& user) {
  return project_onto_waveguide(w, user).offset;
}

std::vector<cdouble> single_antenna_gains(const Scenario& s, const WaveguideSpec& w, const UserSet& users,
                                          double offset, const LosDraw& los) {
  const auto gw = guided_wave(s.carrier, w);
  std::vector<cdouble> g;
  g.reserve(users.size());
  for (std::size_t k = 0; k < users.size(); ++k)
    g.push_back(single_gain(s, w, gw, users.positions[k], k, offset, los));
  return g;
}

std::vector<double> single_antenna_rates(const Scenario& s, const WaveguideSpec& w, const UserSet& users,
                                         double offset, const LosDraw& los) {
  return rates_from_gains(single_antenna_gains(s, w, users, offset, los), s.transmit_snr);
}

PlacementSolution place_single_for_group(const WaveguideSpec& w, const UserSet& users, ObjectiveKind objective,
                                         const Scenario& s, const PlacementOptions& opts) {
  if (users.positions.empty())
    throw ConfigError("place_single_for_group: empty user group");

  PlacementSolution sol;
  sol.objective_kind = objective;
  auto f = [&](double x) { return group_objective(single_antenna_rates(s, w, users, x, opts.los), objective); };

  double x = 0.0;
  if (users.size() == 1) {
    x = place_single_for_user(w, users.positions.front());
    sol.converged = true;
  } else {
    const auto r = scan_and_refine(f, 0.0, w.length_m, resolve_step(s, opts), opts.tolerance_m);
    x = r.x;
    sol.iterations = r.evaluations;
    sol.converged = r.converged;
  }
  sol.layout = PinchingLayout::single_antenna({x}, resolve_spacing(s, opts));
  sol.objective_value = f(x);
  sol.trace = {sol.objective_value};
  return sol;
}

CoherenceCheck coherence(const WaveguideSpec& w, const GuideAntennas& antennas, const Vec3& user, const Scenario& s) {
  const auto gw = guided_wave(s.carrier, w);
  CoherenceCheck out;
  cdouble sum{};
  double ref_phase = 0.0;
  for (std::size_t n = 0; n < antennas.size(); ++n) {
    const cdouble c =
        antennas.weights[n] * single_gain(s, w, gw, user, 0, antennas.offsets[n], LosDraw::force_los());
    sum += c;
    out.coherent_bound += std::abs(c);
    if (n == 0)
      ref_phase = std::arg(c);
    else
      out.max_phase_error_rad = std::max(out.max_phase_error_rad, std::abs(wrap_phase(std::arg(c) - ref_phase)));
  }
  out.aggregate = std::abs(sum);
  return out;
}

PlacementSolution align_multi_on_guide(const WaveguideSpec& w, const GuidedWave& gw, const Vec3& user,
                                       std::size_t n_antennas, const Scenario& s, const PlacementOptions& opts) {
  if (n_antennas == 0)
    throw DomainError("align_multi_on_guide: need at least one antenna");

  PlacementSolution sol;
  sol.objective_kind = ObjectiveKind::single_user_rate;
  const double spacing = resolve_spacing(s, opts);
  const double lg = gw.guided_wavelength_m;
  const double lambda0 = s.wavelength();

  // Total phase of an antenna at offset t as seen by the user (continuous form).
  auto total_phase = [&](double t) {
    return -kTwoPi * t / lg - kTwoPi * (user - w.point_at(t)).norm() / lambda0;
  };

  std::vector<double> offsets;
  if (n_antennas == 1) {
    offsets.push_back(place_single_for_user(w, user));
  } else {
    const double span = static_cast<double>(n_antennas - 1) * spacing;
    // Refinement can push each antenna up to one guided wavelength further out.
    const double reach = span + static_cast<double>(n_antennas - 1) * lg;
    if (span > w.length_m)
      throw DomainError("align_multi_on_guide: waveguide too short for the requested array");
    const double centre = place_single_for_user(w, user);
    const double start = std::clamp(centre - 0.5 * span, 0.0, std::max(0.0, w.length_m - reach));

    const double ref = total_phase(start);
    offsets.push_back(start);
    for (std::size_t i = 1; i < n_antennas; ++i) {
      const double coarse = start + static_cast<double>(i) * spacing;
      const double lo = std::max(coarse - 0.5 * lg, offsets.back() + spacing);
      const double hi = std::min(lo + 1.25 * lg, w.length_m);
      auto err = [&](double t) { return wrap_phase(total_phase(t) - ref); };

      // Sample the window, keep sign changes that are genuine roots rather than
      // wrap discontinuities, bisect, and take the root nearest the coarse slot.
      constexpr int kSamples = 128;
      double best_root = std::numeric_limits<double>::quiet_NaN();
      double prev_t = lo;
      double prev_e = err(lo);
      if (prev_e == 0.0)
        best_root = lo;
      for (int k = 1; k <= kSamples; ++k) {
        const double t = lo + (hi - lo) * k / kSamples;
        const double e = err(t);
        if ((prev_e < 0.0) != (e < 0.0) && std::abs(e - prev_e) < std::numbers::pi) {
          double a = prev_t, b = t, ea = prev_e;
          for (int it = 0; it < 100 && b - a > 0.0; ++it) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b)
              break;
            const double em = err(mid);
            if ((em < 0.0) == (ea < 0.0)) {
              a = mid;
              ea = em;
            } else {
              b = mid;
            }
          }
          const double root = std::abs(err(a)) <= std::abs(err(b)) ? a : b;
          if (std::isnan(best_root) || std::abs(root - coarse) < std::abs(best_root - coarse))
            best_root = root;
        }
        prev_t = t;
        prev_e = e;
      }
      if (std::isnan(best_root))
        throw DomainError("align_multi_on_guide: no phase-aligned position fits on the waveguide");
      offsets.push_back(best_root);
      ++sol.iterations;
    }
  }

  GuideAntennas antennas{offsets, equal_split_weights(offsets.size())};
  const auto check = coherence(w, antennas, user, s);
  sol.converged = check.max_phase_error_rad <= opts.phase_tolerance_rad;
  sol.objective_value = std::log2(1.0 + s.transmit_snr * check.aggregate * check.aggregate);
  sol.layout.minimum_spacing_m = spacing;
  sol.layout.guides.push_back(std::move(antennas));
  sol.trace = {sol.objective_value};
  return sol;
}

namespace {

using SmallComplex = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;

template <class Mat>
double objective_kernel(const Mat& G, Mat& W, BeamformerKind kind, ObjectiveKind objective, double rho) {
  const auto status = kind == BeamformerKind::zf ? detail::zf_precoders_gram(G, W, kZfRcondThreshold)
                                                 : detail::mrc_precoders(G, W);
  if (status != detail::KernelStatus::ok)
    return kNegInf;
  const double p = 1.0 / static_cast<double>(G.rows());
  double sum = 0.0;
  double worst = std::numeric_limits<double>::infinity();
  detail::sinr_kernel(
      G, W, rho, [p](Eigen::Index) { return p; },
      [&](Eigen::Index, double v) {
        const double r = std::log2(1.0 + v);
        sum += r;
        worst = std::min(worst, r);
      });
  return objective == ObjectiveKind::max_min_rate ? worst : sum;
}

template <class Mat>
PlacementSolution optimize_impl(const Scenario& s, const MultiWaveguideOptions& opts) {
  const auto K = static_cast<Eigen::Index>(s.users.size());
  const auto M = static_cast<Eigen::Index>(s.waveguides.size());
  const auto& popts = opts.placement;
  const double step = resolve_step(s, popts);

  auto column = [&](Eigen::Index m, double x, auto&& out) {
    const auto& w = s.waveguides[static_cast<std::size_t>(m)];
    const auto gw = guided_wave(s.carrier, w);
    for (Eigen::Index k = 0; k < K; ++k)
      out(k) = single_gain(s, w, gw, s.users.positions[static_cast<std::size_t>(k)], static_cast<std::size_t>(k), x,
                           popts.los);
  };

  std::vector<double> offsets(static_cast<std::size_t>(M));
  if (opts.initial_offsets) {
    if (opts.initial_offsets->size() != offsets.size())
      throw ConfigError("optimize_multi_waveguide: initial offsets do not match the waveguide count");
    offsets = *opts.initial_offsets;
    for (std::size_t m = 0; m < offsets.size(); ++m)
      offsets[m] = std::clamp(offsets[m], 0.0, s.waveguides[m].length_m);
  } else {
    for (std::size_t m = 0; m < offsets.size(); ++m) {
      const auto& w = s.waveguides[m];
      double best_d = std::numeric_limits<double>::infinity();
      for (const auto& u : s.users.positions) {
        const auto p = project_onto_waveguide(w, u);
        if (p.distance < best_d) {
          best_d = p.distance;
          offsets[m] = p.offset;
        }
      }
    }
  }

  Mat G(K, M);
  for (Eigen::Index m = 0; m < M; ++m)
    column(m, offsets[static_cast<std::size_t>(m)], G.col(m));

  // Grid columns depend only on the waveguide, so they are computed once per run.
  std::vector<std::vector<double>> grids(static_cast<std::size_t>(M));
  std::vector<Eigen::MatrixXcd> cached(static_cast<std::size_t>(M));
  for (Eigen::Index m = 0; m < M; ++m) {
    auto& pts = grids[static_cast<std::size_t>(m)];
    pts = grid_points(0.0, s.waveguides[static_cast<std::size_t>(m)].length_m, step);
    auto& C = cached[static_cast<std::size_t>(m)];
    C.resize(K, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t j = 0; j < pts.size(); ++j)
      column(m, pts[j], C.col(static_cast<Eigen::Index>(j)));
  }

  Mat W;
  auto objective = [&](const Mat& gains) {
    return objective_kernel(gains, W, opts.beamformer, opts.objective, s.transmit_snr);
  };

  PlacementSolution sol;
  sol.objective_kind = opts.objective;
  double current = objective(G);
  sol.trace.push_back(current);

  Mat trial = G;
  for (std::size_t cycle = 0; cycle < opts.max_cycles; ++cycle) {
    const double cycle_start = current;
    for (Eigen::Index m = 0; m < M; ++m) {
      const auto& pts = grids[static_cast<std::size_t>(m)];
      const auto& C = cached[static_cast<std::size_t>(m)];
      trial = G;
      std::size_t best_j = 0;
      double best = kNegInf;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        trial.col(m) = C.col(static_cast<Eigen::Index>(j));
        const double v = objective(trial);
        if (better(v, best)) {
          best = v;
          best_j = j;
        }
      }
      auto f = [&](double x) {
        column(m, x, trial.col(m));
        return objective(trial);
      };
      const auto r = refine_around(f, pts, best_j, best, popts.tolerance_m, pts.size());
      if (r.value > current) {
        offsets[static_cast<std::size_t>(m)] = r.x;
        column(m, r.x, G.col(m));
        current = r.value;
        sol.trace.push_back(current);
      }
    }
    ++sol.iterations;
    if (!(current - cycle_start >= opts.improvement_tolerance)) {
      sol.converged = std::isfinite(current);
      break;
    }
  }

  sol.layout = PinchingLayout::single_antenna(offsets, resolve_spacing(s, popts));
  sol.objective_value = current;
  return sol;
}

} // namespace

double beamformed_objective(const Eigen::MatrixXcd& gains, BeamformerKind kind, ObjectiveKind objective,
                            double transmit_snr) {
  Eigen::MatrixXcd W;
  return objective_kernel(gains, W, kind, objective, transmit_snr);
}

PlacementSolution optimize_multi_waveguide(const Scenario& s, const MultiWaveguideOptions& opts) {
  require_valid(s);
  if (s.users.size() <= 4 && s.waveguides.size() <= 4)
    return optimize_impl<SmallComplex>(s, opts);
  return optimize_impl<Eigen::MatrixXcd>(s, opts);
}

} // namespace pinch
