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

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "wikivec/error.hpp"

namespace wikivec {

struct TrainingConfig {
  std::size_t dim = 300;
  std::size_t window = 10;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double lr_initial = 0.025;
  double subsample_t = 1e-5;  // 0 disables subsampling
  std::uint64_t min_count = 5;
  std::uint64_t seed = 1;
  unsigned workers = 1;

  void validate() const {
    if (dim < 1) throw Error("dim must be at least 1");
    if (window < 1) throw Error("window must be at least 1");
    if (negatives < 1) throw Error("negatives must be at least 1");
    if (!(lr_initial > 0.0) || !std::isfinite(lr_initial)) throw Error("learning rate must be positive");
    if (subsample_t < 0.0 || !std::isfinite(subsample_t)) throw Error("subsample threshold must be non-negative");
    if (min_count < 1) throw Error("min_count must be at least 1");
    if (workers < 1) throw Error("workers must be at least 1");
  }
};

}  // namespace wikivec
