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

// Allocation-free precoding kernels shared by the public beamformers and the
// placement optimizers. Mat is any Eigen complex matrix type; small
// fixed-capacity types keep hot loops off the heap.

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/SVD>

#include <cmath>
#include <complex>

namespace pinch::detail {

template <class Mat>
using SmallReal = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, Mat::MaxRowsAtCompileTime,
                                Mat::MaxRowsAtCompileTime>;

enum class KernelStatus { ok, oversubscribed, rank_deficient, zero_row };

// Columns of W (feeds x users) are the unit-norm precoders.
template <class Mat>
KernelStatus zf_precoders(const Mat& G, Mat& W, double rcond_threshold) {
  const Eigen::Index K = G.rows();
  if (K > G.cols())
    return KernelStatus::oversubscribed;
  // G = U S V^H; the right pseudo-inverse V S^-1 U^H satisfies G G^+ = I.
  Eigen::JacobiSVD<Mat> svd(G, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(K - 1);
  if (!(smax > 0.0) || !(smin / smax >= rcond_threshold))
    return KernelStatus::rank_deficient;
  W = svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
  for (Eigen::Index i = 0; i < K; ++i)
    W.col(i).normalize();
  return KernelStatus::ok;
}

// Same precoders through the Gram matrix G G^H. Used only when its condition
// estimate is comfortably small, otherwise defers to the SVD.
template <class Mat>
KernelStatus zf_precoders_gram(const Mat& G, Mat& W, double rcond_threshold) {
  constexpr double kGramRcondFloor = 1e-4;
  const Eigen::Index K = G.rows();
  if (K > G.cols())
    return KernelStatus::oversubscribed;
  const Mat A = G * G.adjoint();
  const Eigen::LLT<Mat> llt(A);
  if (llt.info() != Eigen::Success || !(llt.rcond() >= kGramRcondFloor))
    return zf_precoders(G, W, rcond_threshold);
  W = G.adjoint() * llt.solve(Mat::Identity(K, K));
  for (Eigen::Index i = 0; i < K; ++i)
    W.col(i).normalize();
  return KernelStatus::ok;
}

template <class Mat>
KernelStatus mrc_precoders(const Mat& G, Mat& W) {
  W = G.adjoint();
  for (Eigen::Index i = 0; i < G.rows(); ++i) {
    const double n = W.col(i).norm();
    if (!(n > 0.0))
      return KernelStatus::zero_row;
    W.col(i) /= n;
  }
  return KernelStatus::ok;
}

// sinr_i = p_i |g_i w_i|^2 rho / (1 + rho sum_{j != i} p_j |g_i w_j|^2).
// `power(i)` returns user i's share; `out(i, value)` receives each SINR.
template <class Mat, class Power, class Out>
void sinr_kernel(const Mat& G, const Mat& W, double rho, Power&& power, Out&& out) {
  const Eigen::Index K = G.rows();
  const SmallReal<Mat> coupling = (G * W).cwiseAbs2();
  for (Eigen::Index i = 0; i < K; ++i) {
    double interference = 0.0;
    for (Eigen::Index j = 0; j < K; ++j)
      if (j != i)
        interference += power(j) * coupling(i, j);
    out(i, power(i) * coupling(i, i) * rho / (1.0 + rho * interference));
  }
}

} // namespace pinch::detail
