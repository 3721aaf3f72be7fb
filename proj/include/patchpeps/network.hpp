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
#include <map>
#include <span>
#include <vector>

#include "patchpeps/tensor.hpp"

namespace patchpeps {

using Label = std::int64_t;

/// Tensor whose axes carry names. Axes with the same label on two tensors
/// are summed over when those tensors meet.
struct LabeledTensor {
  Tensor tensor;
  std::vector<Label> labels;
};

LabeledTensor contract_shared(const LabeledTensor& a, const LabeledTensor& b);
/// Reorders axes so that labels appear as in `order` (a permutation).
LabeledTensor arrange(const LabeledTensor& t, std::span<const Label> order);

/// Sequence of pairwise contractions over a working list: each step removes
/// items `first < second` and appends their contraction.
struct ContractionPlan {
  std::vector<std::pair<std::size_t, std::size_t>> steps;
  double peak_entries = 0.0;  // largest tensor held, inputs included
};

using LabelSets = std::vector<std::vector<Label>>;
using LabelExtents = std::map<Label, std::size_t>;

/// Greedy planner: always contract the connected pair with the smallest
/// result; ties go to the pair whose smallest shared label is lowest, then
/// to the lowest positions.
ContractionPlan plan_greedy(const LabelSets& inputs, const LabelExtents& extents);
/// Absorbs inputs one at a time in list order.
ContractionPlan plan_sequential(const LabelSets& inputs, const LabelExtents& extents);

LabeledTensor execute_plan(std::vector<LabeledTensor> inputs, const ContractionPlan& plan);

/// kBest runs both planners and keeps the one with the smaller peak,
/// preferring greedy on ties.
enum class PlanKind { kGreedy, kSequential, kBest };

ContractionPlan make_plan(const LabelSets& inputs, const LabelExtents& extents, PlanKind kind);

/// Plans and executes; throws SizeError if the plan exceeds `budget_entries`.
LabeledTensor contract_network(std::vector<LabeledTensor> inputs, PlanKind kind, double budget_entries);

}  // namespace patchpeps
