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

#include <span>
#include <vector>

#include "patchpeps/network.hpp"
#include "patchpeps/peps.hpp"

namespace patchpeps {

/// sum over the physical index of A (x) conj(A). Kept legs are fused into
/// one index of extent D^2 (ket more significant); other legs are closed by
/// identity between ket and bra. With `keep_phys` the physical index stays
/// open as two axes (ket, bra) ahead of the fused legs.
Tensor doubled_site(const Tensor& a, bool keep_phys, const std::vector<bool>& keep_leg);

/// Double-layer network restricted to `kept` sites: edges with both ends
/// kept are contracted, edges leaving the set are closed with identity.
/// Physical indices of `open` sites (a subset of `kept`) remain open.
std::vector<LabeledTensor> double_layer_nodes(const PepsState& peps, std::span<const SiteIndex> kept,
                                              std::span<const SiteIndex> open);

/// Reduced density on `open` (in the given order, first site most
/// significant, ket index as rows) from the double-layer network over
/// `kept`. Pair weights are omitted.
Tensor reduced_density(const PepsState& peps, std::span<const SiteIndex> kept, std::span<const SiteIndex> open,
                       PlanKind kind, double budget_entries);

/// Reduced density on the listed axes of a state vector, in the given order.
Tensor reduced_density(const Tensor& state, std::span<const std::size_t> open_axes);

/// tr(O rho) / tr(rho). Numerator and denominator accumulate the diagonal
/// contributions in the same order, so O = identity returns exactly 1.
Complex density_expectation(const Tensor& observable, const Tensor& rho);

Complex density_trace(const Tensor& rho);

}  // namespace patchpeps
