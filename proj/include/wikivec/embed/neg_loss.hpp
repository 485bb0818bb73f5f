// Copyright 2026 The wikivec Authors.
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

// Skip-gram negative-sampling objective for one (center, context) pair:
//
//   L = -log s(u_ctx . v) - sum_n log s(-u_n . v)
//
// With x_k = u_k . v, the per-target coefficient g_k = dL/dx_k is
// s(x_0) - 1 for the context and s(x_n) for each negative, so
// dL/dv = sum_k g_k u_k and dL/du_k = g_k v.

#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace wikivec {

template <typename T>
T sigmoid(T x) {
  return x >= T(0) ? T(1) / (T(1) + std::exp(-x)) : std::exp(x) / (T(1) + std::exp(x));
}

/// -log s(x), without overflow for large |x|.
template <typename T>
T neg_log_sigmoid(T x) {
  return x >= T(0) ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
}

/// Loss and gradient for one pair.
///
/// `targets[0]` is the context output row, `targets[1..]` the negative output
/// rows; every row has length `dim`. Writes g_k into `coef` (size
/// targets.size()) and dL/dv into `grad_v`. All reads happen before any
/// write, so outputs may not alias inputs but inputs may repeat.
template <typename T, bool kWithLoss = true>
T neg_loss_grad(const T* v, std::span<const T* const> targets, std::size_t dim, T* coef, T* grad_v) {
  T loss = T(0);
  for (std::size_t i = 0; i < dim; ++i) grad_v[i] = T(0);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const T* u = targets[k];
    T x = T(0);
    for (std::size_t i = 0; i < dim; ++i) x += u[i] * v[i];
    const T s = sigmoid(x);
    coef[k] = k == 0 ? s - T(1) : s;
    if constexpr (kWithLoss) loss += neg_log_sigmoid(k == 0 ? x : -x);
    for (std::size_t i = 0; i < dim; ++i) grad_v[i] += coef[k] * u[i];
  }
  return loss;
}

/// Loss value only.
template <typename T>
T neg_loss(const T* v, std::span<const T* const> targets, std::size_t dim) {
  T loss = T(0);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    T x = T(0);
    for (std::size_t i = 0; i < dim; ++i) x += targets[k][i] * v[i];
    loss += neg_log_sigmoid(k == 0 ? x : -x);
  }
  return loss;
}

/// One SGD update in place: u_k -= lr g_k v (pre-update v), then
/// v -= lr dL/dv (pre-update u). `scratch` holds dim + targets.size()
/// values. Returns the pre-update loss when kWithLoss.
template <typename T, bool kWithLoss = true>
T neg_sgd_update(T* v, std::span<T* const> targets, std::size_t dim, T lr, T* scratch) {
  T* grad_v = scratch;
  T* coef = scratch + dim;
  const std::span<const T* const> in(targets.data(), targets.size());
  const T loss = neg_loss_grad<T, kWithLoss>(v, in, dim, coef, grad_v);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    T* u = targets[k];
    const T step = lr * coef[k];
    for (std::size_t i = 0; i < dim; ++i) u[i] -= step * v[i];
  }
  for (std::size_t i = 0; i < dim; ++i) v[i] -= lr * grad_v[i];
  return loss;
}

}  // namespace wikivec
