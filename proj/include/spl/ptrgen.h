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

#ifndef SPL_PTRGEN_H_
#define SPL_PTRGEN_H_

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace spl::ptrgen {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Contextual sub-word representations from the encoder, one row per source
// token, and the vocabulary id each source token copies to.
struct EncoderStates {
  Matrix h;  // N x d
  std::vector<size_t> token_ids;
};

struct PoolParams {
  Matrix w_agg;  // d x m
  Matrix w_e;    // m x d
};

// Sentence embedding H = W_agg * ReLU(W_E * mean_rows(h)).
// Throws Error(kShapeMismatch).
Vector Pool(const EncoderStates& enc, const PoolParams& p);

struct StepDistributions {
  Vector attention;  // softmax over source positions, size N
  Vector context;    // attention-weighted sum of rows of h, size d
  Vector copy;       // P_c over the joint id space
  Vector vocab;      // P_v over the joint id space (zero past |V|)
  Vector mixed;      // s * P_c + (1 - s) * P_v
};

// Size of the joint id space: max(|V|, largest source token id + 1).
size_t JointSize(const EncoderStates& enc, size_t vocab_size);

// One decoder step. Attention scores are the query against every encoder
// row; P_c sums the attention of source positions sharing an id; P_v is a
// softmax of W_o * context. `copy_switch` must be in [0, 1].
StepDistributions StepDistributionsFor(const EncoderStates& enc, const Vector& query,
                                       const Matrix& w_o, double copy_switch);

struct Params {
  PoolParams pool;
  Matrix w_o;  // |V| x d
};

struct Step {
  Vector decoder_state;  // d
  double copy_switch = 0.5;
  size_t gold = 0;
};

struct Gradients {
  Matrix w_agg;
  Matrix w_e;
  Matrix w_o;
  Matrix h;
  std::vector<Vector> decoder_state;
  std::vector<double> copy_switch;
};

struct LossValue {
  double loss = 0.0;
  Gradients grads;
};

inline constexpr double kProbabilityFloor = 1e-12;

// Teacher-forced token-level cross-entropy, L = -sum_t log P_t(gold_t),
// with analytic gradients. The pooled sentence embedding H conditions every
// step: step t attends with query decoder_state_t + H. Probabilities below
// kProbabilityFloor are clamped (their gradient is zero).
LossValue LossAndGrads(const EncoderStates& enc, const Params& params, const std::vector<Step>& steps);

}  // namespace spl::ptrgen

#endif  // SPL_PTRGEN_H_
