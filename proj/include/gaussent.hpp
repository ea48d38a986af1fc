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

#ifndef GAUSSENT_GAUSSENT_HPP
#define GAUSSENT_GAUSSENT_HPP

#include "gaussent/closed_form.hpp"
#include "gaussent/config.hpp"
#include "gaussent/errors.hpp"
#include "gaussent/harness.hpp"
#include "gaussent/lattice.hpp"
#include "gaussent/linalg.hpp"
#include "gaussent/quadratic_model.hpp"
#include "gaussent/region_json.hpp"
#include "gaussent/scenario.hpp"
#include "gaussent/symplectic.hpp"
#include "gaussent/weak_coupling.hpp"

#endif  // GAUSSENT_GAUSSENT_HPP
