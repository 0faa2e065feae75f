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

#include "pinch/channel.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace pinch {

// Row i is the unit-norm precoder w_i over the feeds; user i's power share is
// power_allocation[i] of the total budget (normalized to 1).
struct Beamformer {
  Eigen::MatrixXcd vectors;
  std::vector<double> power_allocation;

  Eigen::VectorXcd precoder(Eigen::Index i) const { return vectors.row(i).transpose(); }
};

struct RateReport {
  std::vector<double> per_user_sinr;
  std::vector<double> per_user_rate_bps_hz;
  double sum_rate_bps_hz = 0.0;
  std::string scheme_label;

  double min_rate() const;
  double mean_rate() const;
};

// Builds a report with rate_i = log2(1 + sinr_i).
RateReport make_rate_report(std::vector<double> sinr, std::string label);

enum class BeamformerKind { zf, mrc };

// Reciprocal condition number below which zero-forcing is refused.
inline constexpr double kZfRcondThreshold = 1e-10;

std::vector<double> equal_power(Eigen::Index users);

/// Maximum-ratio precoding, w_i = conj(g_i) / |g_i|. Throws DegenerateChannelError
/// for an all-zero user row.
Beamformer mrc_beamformer(const Eigen::MatrixXcd& gains);
Beamformer mrc_beamformer(const ChannelMatrix& H);

/// Zero-forcing precoding from the normalized columns of the right pseudo-inverse.
/// Throws RankDeficientError when rcond < kZfRcondThreshold and
/// DegenerateChannelError when users outnumber feeds.
Beamformer zf_beamformer(const Eigen::MatrixXcd& gains);
Beamformer zf_beamformer(const ChannelMatrix& H);

Beamformer make_beamformer(BeamformerKind kind, const Eigen::MatrixXcd& gains);

// sinr_i = p_i |g_i w_i|^2 rho / (1 + rho sum_{j != i} p_j |g_i w_j|^2), unit noise.
std::vector<double> sinr(const Eigen::MatrixXcd& gains, const Beamformer& B, double transmit_snr);

RateReport evaluate_rates(const Eigen::MatrixXcd& gains, const Beamformer& B, double transmit_snr,
                          std::string label = {});
RateReport evaluate_rates(const ChannelMatrix& H, const Beamformer& B, double transmit_snr,
                          std::string label = {});

// Interference-free single-user rate log2(1 + rho |g_i|^2).
std::vector<double> conventional_bound(const Eigen::MatrixXcd& gains, double transmit_snr);
std::vector<double> conventional_bound(const ChannelMatrix& H, double transmit_snr);

} // namespace pinch
