// Copyright 2026 The gaussent Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAUSSENT_CONFIG_HPP
#define GAUSSENT_CONFIG_HPP

#include <cmath>
#include <limits>
#include <numbers>

namespace gaussent {

inline constexpr const char* kVersion = "0.3.0";

enum class LogBase { Two, E };

// Converts a natural logarithm into the requested base.
inline double in_base(double natural_log, LogBase base) {
  return base == LogBase::Two ? natural_log / std::numbers::ln2 : natural_log;
}

// log_base(e): the factor in front of the weak-coupling negativity.
inline double log_e(LogBase base) { return in_base(1.0, base); }

inline const char* to_string(LogBase base) { return base == LogBase::Two ? "2" : "e"; }

struct Tolerances {
  double physicality = 1e-9;  // symplectic eigenvalues may dip this far below their floor
  double pairing = 1e-8;      // (f, -(1+f)) pair matching residual
  double imaginary = 1e-8;    // discarded imaginary parts of eigenvalues
  double symmetry = 1e-12;    // hermiticity / symmetry residuals of input blocks
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace gaussent

#endif  // GAUSSENT_CONFIG_HPP
