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

// Helpers shared by the unit and acceptance tests.

#pragma once

#include "pinch/channel.hpp"
#include "pinch/scenario.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <random>

namespace pinch::test {

inline constexpr double kLambda28 = 299792458.0 / 28e9;

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  cdouble cnormal() { return {normal(), normal()}; }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }
  std::mt19937_64& engine() { return gen_; }

  Eigen::MatrixXcd cmatrix(Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j)
        m(i, j) = cnormal();
    return m;
  }
  Eigen::VectorXcd unit_vector(Eigen::Index n) {
    Eigen::VectorXcd v = cmatrix(n, 1).col(0);
    return v / v.norm();
  }
  Vec3 ground_point(double x0, double x1, double y0, double y1) { return {uniform(x0, x1), uniform(y0, y1), 0.0}; }

private:
  std::mt19937_64 gen_;
};

// One waveguide along +y at height 3 m, fed at the origin, 28 GHz.
inline WaveguideSpec y_guide(double length = 20.0, double x = 0.0, double height = 3.0) {
  WaveguideSpec w;
  w.feed_point = Vec3(x, 0.0, height);
  w.axis_direction = Vec3(0.0, 1.0, 0.0);
  w.length_m = length;
  return w;
}

inline Scenario single_guide_scenario(std::vector<Vec3> users, double snr = 1e9) {
  Scenario s;
  s.waveguides = {y_guide()};
  s.users.positions = std::move(users);
  s.transmit_snr = snr;
  return s;
}

inline Scenario three_guide_scenario(std::vector<Vec3> users, double snr = 1e9) {
  Scenario s;
  for (double x : {-10.0 / 3.0, 0.0, 10.0 / 3.0})
    s.waveguides.push_back(y_guide(10.0, x));
  s.users.positions = std::move(users);
  s.transmit_snr = snr;
  return s;
}

inline double wrap_phase(double a) { return std::remainder(a, 2.0 * 3.14159265358979323846); }

} // namespace pinch::test
