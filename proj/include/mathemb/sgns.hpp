// Copyright 2026 The mathemb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Core>
#include <cmath>

namespace mathemb {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
Scalar sigmoid(Scalar x) {
  using std::exp;
  if (x >= Scalar(0)) return Scalar(1) / (Scalar(1) + exp(-x));
  Scalar e = exp(x);
  return e / (Scalar(1) + e);
}

// log(1 + exp(-x)) = -log σ(x), without overflow for large |x|.
template <typename Scalar>
Scalar neg_log_sigmoid(Scalar x) {
  using std::exp;
  using std::log1p;
  if (x >= Scalar(0)) return log1p(exp(-x));
  return -x + log1p(exp(x));
}

/// Skip-gram negative-sampling loss for one (center, context) pair with k
/// noise rows:
///
///   loss = -log σ(u_c·v) - Σ_n log σ(-u_n·v)
///
/// Writes ∂loss/∂v, ∂loss/∂u_c and ∂loss/∂u_n (one row per noise vector) into
/// the output buffers, resizing them as needed, and returns the loss. This is
/// the exact update path used by both trainers.
template <typename Scalar>
Scalar sgns_gradients_into(const Eigen::Ref<const Vector<Scalar>>& center,
                           const Eigen::Ref<const Vector<Scalar>>& context,
                           const Eigen::Ref<const RowMatrix<Scalar>>& negatives,
                           Vector<Scalar>& grad_center, Vector<Scalar>& grad_context,
                           RowMatrix<Scalar>& grad_negatives) {
  const Scalar pos_score = context.dot(center);
  const Scalar pos_coef = sigmoid(pos_score) - Scalar(1);
  Scalar loss = neg_log_sigmoid(pos_score);

  grad_context = pos_coef * center;
  grad_center = pos_coef * context;
  grad_negatives.resize(negatives.rows(), negatives.cols());
  for (Eigen::Index n = 0; n < negatives.rows(); ++n) {
    const Scalar score = negatives.row(n).dot(center.transpose());
    const Scalar coef = sigmoid(score);
    loss += neg_log_sigmoid(-score);
    grad_center.noalias() += coef * negatives.row(n).transpose();
    grad_negatives.row(n) = coef * center.transpose();
  }
  return loss;
}

template <typename Scalar>
struct SgnsGradients {
  Scalar loss{};
  Vector<Scalar> center;
  Vector<Scalar> context;
  RowMatrix<Scalar> negatives;
};

template <typename Scalar>
SgnsGradients<Scalar> sgns_loss_and_gradients(const Eigen::Ref<const Vector<Scalar>>& center,
                                              const Eigen::Ref<const Vector<Scalar>>& context,
                                              const Eigen::Ref<const RowMatrix<Scalar>>& negatives) {
  SgnsGradients<Scalar> g;
  g.loss = sgns_gradients_into<Scalar>(center, context, negatives, g.center, g.context, g.negatives);
  return g;
}

}  // namespace mathemb
