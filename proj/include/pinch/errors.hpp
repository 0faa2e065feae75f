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

#include <stdexcept>
#include <string>

namespace pinch {

// Invalid physical input (negative distance, permittivity below one, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Numerical failure in linear algebra (singular or degenerate channels).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class RankDeficientError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class DegenerateChannelError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

// Malformed configuration, scenario file or schedule.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace pinch
