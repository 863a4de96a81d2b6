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

#include "spl/ptrgen.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "spl/error.h"

namespace spl::ptrgen {
namespace {

Vector Softmax(const Vector& z) {
  const double m = z.maxCoeff();
  Vector e = (z.array() - m).exp();
  return e / e.sum();
}

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kShapeMismatch, what);
}

}  // namespace

Vector Pool(const EncoderStates& enc, const PoolParams& p) {
  Require(enc.h.rows() >= 1, "encoder needs at least one row");
  Require(p.w_e.cols() == enc.h.cols(), "W_E columns != encoder width");
  Require(p.w_agg.cols() == p.w_e.rows(), "W_agg columns != W_E rows");
  const Vector mean = enc.h.colwise().mean().transpose();
  const Vector hidden = (p.w_e * mean).cwiseMax(0.0);
  return p.w_agg * hidden;
}

size_t JointSize(const EncoderStates& enc, size_t vocab_size) {
  size_t joint = vocab_size;
  for (size_t id : enc.token_ids) joint = std::max(joint, id + 1);
  return joint;
}

StepDistributions StepDistributionsFor(const EncoderStates& enc, const Vector& query,
                                       const Matrix& w_o, double copy_switch) {
  Require(enc.h.rows() >= 1, "encoder needs at least one row");
  Require(static_cast<size_t>(enc.h.rows()) == enc.token_ids.size(), "token_ids length != N");
  Require(query.size() == enc.h.cols(), "query width != encoder width");
  Require(w_o.cols() == enc.h.cols(), "W_o columns != encoder width");
  if (!(copy_switch >= 0.0 && copy_switch <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "copy switch must be in [0, 1]");
  }
  StepDistributions d;
  d.attention = Softmax(enc.h * query);
  d.context = enc.h.transpose() * d.attention;
  const size_t joint = JointSize(enc, static_cast<size_t>(w_o.rows()));
  d.copy = Vector::Zero(static_cast<Eigen::Index>(joint));
  for (size_t i = 0; i < enc.token_ids.size(); ++i) {
    d.copy(static_cast<Eigen::Index>(enc.token_ids[i])) += d.attention(static_cast<Eigen::Index>(i));
  }
  d.vocab = Vector::Zero(static_cast<Eigen::Index>(joint));
  d.vocab.head(w_o.rows()) = Softmax(w_o * d.context);
  d.mixed = copy_switch * d.copy + (1.0 - copy_switch) * d.vocab;
  return d;
}

LossValue LossAndGrads(const EncoderStates& enc, const Params& params, const std::vector<Step>& steps) {
  const Vector pooled = Pool(enc, params.pool);
  Require(pooled.size() == enc.h.cols(), "pooled embedding width != encoder width");
  const Eigen::Index n = enc.h.rows();
  const Eigen::Index vocab = params.w_o.rows();

  LossValue out;
  Gradients& g = out.grads;
  g.w_agg = Matrix::Zero(params.pool.w_agg.rows(), params.pool.w_agg.cols());
  g.w_e = Matrix::Zero(params.pool.w_e.rows(), params.pool.w_e.cols());
  g.w_o = Matrix::Zero(params.w_o.rows(), params.w_o.cols());
  g.h = Matrix::Zero(enc.h.rows(), enc.h.cols());
  Vector d_pooled = Vector::Zero(pooled.size());

  for (const Step& step : steps) {
    Require(step.decoder_state.size() == enc.h.cols(), "decoder state width != encoder width");
    const Vector query = step.decoder_state + pooled;
    const StepDistributions d = StepDistributionsFor(enc, query, params.w_o, step.copy_switch);
    Require(step.gold < static_cast<size_t>(d.mixed.size()), "gold id outside the joint id space");
    const auto gold = static_cast<Eigen::Index>(step.gold);
    const double p = d.mixed(gold);
    const double s = step.copy_switch;

    if (p < kProbabilityFloor) {
      out.loss -= std::log(kProbabilityFloor);
      g.decoder_state.push_back(Vector::Zero(query.size()));
      g.copy_switch.push_back(0.0);
      continue;
    }
    out.loss -= std::log(p);
    const double dp = -1.0 / p;

    g.copy_switch.push_back(dp * (d.copy(gold) - d.vocab(gold)));

    // Generation branch: P_v = softmax(W_o C).
    Vector d_context = Vector::Zero(enc.h.cols());
    if (gold < vocab) {
      const Vector pv = d.vocab.head(vocab);
      Vector dz = -pv * (dp * (1.0 - s) * pv(gold));
      dz(gold) += dp * (1.0 - s) * pv(gold);
      g.w_o += dz * d.context.transpose();
      d_context = params.w_o.transpose() * dz;
    }

    // Copy branch plus the context's dependence on the attention weights.
    Vector d_attention = enc.h * d_context;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (enc.token_ids[static_cast<size_t>(i)] == step.gold) d_attention(i) += dp * s;
    }
    const double inner = d.attention.dot(d_attention);
    const Vector d_scores = d.attention.array() * (d_attention.array() - inner);

    const Vector d_query = enc.h.transpose() * d_scores;
    g.h += d_scores * query.transpose() + d.attention * d_context.transpose();
    g.decoder_state.push_back(d_query);
    d_pooled += d_query;
  }

  // Back through H = W_agg ReLU(W_E mean(h)).
  const Vector mean = enc.h.colwise().mean().transpose();
  const Vector pre = params.pool.w_e * mean;
  const Vector hidden = pre.cwiseMax(0.0);
  g.w_agg += d_pooled * hidden.transpose();
  Vector d_hidden = params.pool.w_agg.transpose() * d_pooled;
  for (Eigen::Index i = 0; i < d_hidden.size(); ++i) {
    if (pre(i) <= 0.0) d_hidden(i) = 0.0;
  }
  g.w_e += d_hidden * mean.transpose();
  const Vector d_mean = params.pool.w_e.transpose() * d_hidden;
  g.h.rowwise() += (d_mean / static_cast<double>(n)).transpose();
  return out;
}

}  // namespace spl::ptrgen
