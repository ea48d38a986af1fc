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

#ifndef GAUSSENT_ERRORS_HPP
#define GAUSSENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gaussent {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define GAUSSENT_DEFINE_ERROR(Name)          \
  class Name : public Error {                                           \
   public:                                                              \
    using Error::Error;                                                 \
    const char* kind() const noexcept override { return #Name; }        \
  }

GAUSSENT_DEFINE_ERROR(NonPhysical);
GAUSSENT_DEFINE_ERROR(NumericalFailure);
GAUSSENT_DEFINE_ERROR(WrongKind);
GAUSSENT_DEFINE_ERROR(OverlappingRegions);
GAUSSENT_DEFINE_ERROR(UnsupportedNorm);
GAUSSENT_DEFINE_ERROR(SymmetryViolation);
GAUSSENT_DEFINE_ERROR(Unstable);
GAUSSENT_DEFINE_ERROR(UnequalLocalEnergies);
GAUSSENT_DEFINE_ERROR(CouplingTooStrong);
GAUSSENT_DEFINE_ERROR(NoCriticalPoint);
GAUSSENT_DEFINE_ERROR(OutOfBounds);
GAUSSENT_DEFINE_ERROR(NotWeaklyCorrelated);
GAUSSENT_DEFINE_ERROR(InvalidSeparation);
GAUSSENT_DEFINE_ERROR(InvalidArgument);
GAUSSENT_DEFINE_ERROR(MemoryCap);
GAUSSENT_DEFINE_ERROR(ConfigError);

#undef GAUSSENT_DEFINE_ERROR

// Regions handed to pair operations must be disjoint.
using OverlapError = OverlappingRegions;

}  // namespace gaussent

#endif  // GAUSSENT_ERRORS_HPP
