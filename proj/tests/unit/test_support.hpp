// Copyright 2026 The patchpeps Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

#include "patchpeps/linalg.hpp"
#include "patchpeps/rng.hpp"
#include "patchpeps/tensor.hpp"

namespace patchpeps::testing {

inline Tensor random_tensor(Shape shape, std::uint64_t seed) {
  Rng rng(seed);
  Tensor t(std::move(shape));
  for (auto& z : t.mutable_data()) z = rng.complex_normal();
  return t;
}

inline Tensor random_hermitian(std::size_t n, std::uint64_t seed) {
  const Tensor a = random_tensor({n, n}, seed);
  Tensor h = a;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h.at({i, j}) = 0.5 * (a.at({i, j}) + std::conj(a.at({j, i})));
  return h;
}

inline double max_abs(const Tensor& t) {
  double m = 0.0;
  for (const auto& z : t.data()) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace patchpeps::testing
