// Copyright 2026 The SPL Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPL_ORACLE_GRADIENT_CHECK_H_
#define SPL_ORACLE_GRADIENT_CHECK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "spl/ptrgen.h"

namespace spl::oracle {

struct PtrgenInstance {
  ptrgen::EncoderStates enc;
  ptrgen::Params params;
  std::vector<ptrgen::Step> steps;
};

struct InstanceLimits {
  size_t max_n = 6;
  size_t max_d = 5;
  size_t max_vocab = 8;
  size_t max_steps = 4;
  size_t max_hidden = 5;
};

// Entries uniform in [-1, 1], switches in [0.05, 0.95]; some source ids
// fall outside the output vocabulary so the joint id space is exercised.
PtrgenInstance RandomInstance(uint64_t seed, const InstanceLimits& limits = {});

inline constexpr double kFiniteDifferenceStep = 1e-5;
// Relative errors divide by max(|analytic|, |numeric|, kGradientFloor).
inline constexpr double kGradientFloor = 1e-6;

struct GradientCheckResult {
  double max_rel_error = 0.0;
  std::string worst;  // parameter name and index of the worst entry
  size_t entries = 0;
};

// Compares every analytic gradient entry of LossAndGrads with a central
// finite difference of the loss.
GradientCheckResult CheckGradients(const PtrgenInstance& inst, double step = kFiniteDifferenceStep);

}  // namespace spl::oracle

#endif  // SPL_ORACLE_GRADIENT_CHECK_H_
