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

#include "pinch/beamforming.hpp"
#include "pinch/errors.hpp"
#include "detail/beamforming_kernels.hpp"


#include <cmath>
#include <numeric>

namespace pinch {

double RateReport::min_rate() const {
  double m = per_user_rate_bps_hz.empty() ? 0.0 : per_user_rate_bps_hz.front();
  for (double r : per_user_rate_bps_hz)
    m = std::min(m, r);
  return m;
}

double RateReport::mean_rate() const {
  return per_user_rate_bps_hz.empty() ? 0.0 : sum_rate_bps_hz / static_cast<double>(per_user_rate_bps_hz.size());
}

RateReport make_rate_report(std::vector<double> sinr, std::string label) {
  RateReport r;
  r.per_user_rate_bps_hz.reserve(sinr.size());
  for (double s : sinr) {
    const double rate = std::log2(1.0 + s);
    r.per_user_rate_bps_hz.push_back(rate);
    r.sum_rate_bps_hz += rate;
  }
  r.per_user_sinr = std::move(sinr);
  r.scheme_label = std::move(label);
  return r;
}

std::vector<double> equal_power(Eigen::Index users) {
  return std::vector<double>(static_cast<std::size_t>(users), 1.0 / static_cast<double>(users));
}

Beamformer mrc_beamformer(const Eigen::MatrixXcd& gains) {
  Eigen::MatrixXcd W;
  if (detail::mrc_precoders(gains, W) != detail::KernelStatus::ok)
    throw DegenerateChannelError("mrc_beamformer: a user has an all-zero channel");
  return {W.transpose(), equal_power(gains.rows())};
}

Beamformer mrc_beamformer(const ChannelMatrix& H) { return mrc_beamformer(H.gains); }

Beamformer zf_beamformer(const Eigen::MatrixXcd& gains) {
  Eigen::MatrixXcd W;
  switch (detail::zf_precoders(gains, W, kZfRcondThreshold)) {
  case detail::KernelStatus::oversubscribed:
    throw DegenerateChannelError("zf_beamformer: " + std::to_string(gains.rows()) + " users exceed " +
                                 std::to_string(gains.cols()) + " feeds");
  case detail::KernelStatus::rank_deficient:
    throw RankDeficientError("zf_beamformer: channel rows are linearly dependent (rcond below 1e-10)");
  default:
    break;
  }
  return {W.transpose(), equal_power(gains.rows())};
}

Beamformer zf_beamformer(const ChannelMatrix& H) { return zf_beamformer(H.gains); }

Beamformer make_beamformer(BeamformerKind kind, const Eigen::MatrixXcd& gains) {
  return kind == BeamformerKind::zf ? zf_beamformer(gains) : mrc_beamformer(gains);
}

std::vector<double> sinr(const Eigen::MatrixXcd& gains, const Beamformer& B, double transmit_snr) {
  const Eigen::Index K = gains.rows();
  if (B.vectors.cols() != gains.cols() || B.vectors.rows() != K ||
      static_cast<std::size_t>(K) != B.power_allocation.size())
    throw ConfigError("evaluate_rates: beamformer dimensions do not match the channel");

  std::vector<double> out(static_cast<std::size_t>(K));
  const Eigen::MatrixXcd W = B.vectors.transpose();
  detail::sinr_kernel(
      gains, W, transmit_snr, [&B](Eigen::Index j) { return B.power_allocation[static_cast<std::size_t>(j)]; },
      [&out](Eigen::Index i, double v) { out[static_cast<std::size_t>(i)] = v; });
  return out;
}

RateReport evaluate_rates(const Eigen::MatrixXcd& gains, const Beamformer& B, double transmit_snr,
                          std::string label) {
  return make_rate_report(sinr(gains, B, transmit_snr), std::move(label));
}

RateReport evaluate_rates(const ChannelMatrix& H, const Beamformer& B, double transmit_snr, std::string label) {
  return evaluate_rates(H.gains, B, transmit_snr, std::move(label));
}

std::vector<double> conventional_bound(const Eigen::MatrixXcd& gains, double transmit_snr) {
  std::vector<double> out(static_cast<std::size_t>(gains.rows()));
  for (Eigen::Index i = 0; i < gains.rows(); ++i)
    out[static_cast<std::size_t>(i)] = std::log2(1.0 + transmit_snr * gains.row(i).squaredNorm());
  return out;
}

std::vector<double> conventional_bound(const ChannelMatrix& H, double transmit_snr) {
  return conventional_bound(H.gains, transmit_snr);
}

} // namespace pinch
