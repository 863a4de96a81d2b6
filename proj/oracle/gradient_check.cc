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

#include "oracle/gradient_check.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "spl/rng.h"

namespace spl::oracle {
namespace {

using ptrgen::Matrix;
using ptrgen::Vector;

size_t Between(Rng& rng, size_t lo, size_t hi) { return lo + static_cast<size_t>(rng.Below(hi - lo + 1)); }

Matrix RandomMatrix(Rng& rng, size_t r, size_t c) {
  Matrix m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = 2.0 * rng.Uniform() - 1.0;
  }
  return m;
}

double Loss(const PtrgenInstance& inst) {
  return ptrgen::LossAndGrads(inst.enc, inst.params, inst.steps).loss;
}

}  // namespace

PtrgenInstance RandomInstance(uint64_t seed, const InstanceLimits& limits) {
  Rng rng(seed);
  const size_t n = Between(rng, 1, limits.max_n);
  const size_t d = Between(rng, 1, limits.max_d);
  const size_t v = Between(rng, 1, limits.max_vocab);
  const size_t t = Between(rng, 1, limits.max_steps);
  const size_t m = Between(rng, 1, limits.max_hidden);
  PtrgenInstance inst;
  inst.enc.h = RandomMatrix(rng, n, d);
  for (size_t i = 0; i < n; ++i) inst.enc.token_ids.push_back(Between(rng, 0, v + 1));
  inst.params.pool.w_e = RandomMatrix(rng, m, d);
  inst.params.pool.w_agg = RandomMatrix(rng, d, m);
  inst.params.w_o = RandomMatrix(rng, v, d);
  const size_t joint = ptrgen::JointSize(inst.enc, v);
  for (size_t s = 0; s < t; ++s) {
    ptrgen::Step step;
    step.decoder_state = RandomMatrix(rng, d, 1).col(0);
    step.copy_switch = 0.05 + 0.9 * rng.Uniform();
    step.gold = Between(rng, 0, joint - 1);
    inst.steps.push_back(std::move(step));
  }
  return inst;
}

GradientCheckResult CheckGradients(const PtrgenInstance& inst, double step) {
  const ptrgen::LossValue analytic = ptrgen::LossAndGrads(inst.enc, inst.params, inst.steps);
  GradientCheckResult result;
  PtrgenInstance probe = inst;

  auto compare = [&](const std::string& name, Eigen::Index index, double grad, double& slot) {
    const double saved = slot;
    slot = saved + step;
    const double up = Loss(probe);
    slot = saved - step;
    const double down = Loss(probe);
    slot = saved;
    const double numeric = (up - down) / (2.0 * step);
    const double denom = std::max({std::abs(grad), std::abs(numeric), kGradientFloor});
    const double rel = std::abs(grad - numeric) / denom;
    ++result.entries;
    if (rel > result.max_rel_error || result.worst.empty()) {
      result.max_rel_error = std::max(result.max_rel_error, rel);
      if (rel >= result.max_rel_error) result.worst = name + "[" + std::to_string(index) + "]";
    }
  };
  auto matrix = [&](const std::string& name, Matrix& m, const Matrix& g) {
    for (Eigen::Index i = 0; i < m.size(); ++i) compare(name, i, g.data()[i], m.data()[i]);
  };

  matrix("h", probe.enc.h, analytic.grads.h);
  matrix("w_e", probe.params.pool.w_e, analytic.grads.w_e);
  matrix("w_agg", probe.params.pool.w_agg, analytic.grads.w_agg);
  matrix("w_o", probe.params.w_o, analytic.grads.w_o);
  for (size_t t = 0; t < probe.steps.size(); ++t) {
    Vector& dt = probe.steps[t].decoder_state;
    for (Eigen::Index i = 0; i < dt.size(); ++i) {
      compare("d" + std::to_string(t), i, analytic.grads.decoder_state[t](i), dt(i));
    }
    compare("s" + std::to_string(t), 0, analytic.grads.copy_switch[t], probe.steps[t].copy_switch);
  }
  return result;
}

}  // namespace spl::oracle
