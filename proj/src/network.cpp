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

#include "patchpeps/network.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "patchpeps/errors.hpp"

namespace patchpeps {

namespace {

double volume(const std::vector<Label>& labels, const LabelExtents& extents) {
  double v = 1.0;
  for (Label l : labels) v *= double(extents.at(l));
  return v;
}

// Labels surviving a pairwise contraction, in contract_shared's output order.
std::vector<Label> merged_labels(const std::vector<Label>& a, const std::vector<Label>& b, Label* min_shared) {
  std::vector<Label> out;
  Label shared = std::numeric_limits<Label>::max();
  for (Label l : a)
    if (std::find(b.begin(), b.end(), l) == b.end())
      out.push_back(l);
    else
      shared = std::min(shared, l);
  for (Label l : b)
    if (std::find(a.begin(), a.end(), l) == a.end()) out.push_back(l);
  if (min_shared) *min_shared = shared;
  return out;
}

double input_peak(const LabelSets& inputs, const LabelExtents& extents) {
  double peak = 0.0;
  for (const auto& in : inputs) peak = std::max(peak, volume(in, extents));
  return peak;
}

}  // namespace

LabeledTensor contract_shared(const LabeledTensor& a, const LabeledTensor& b) {
  std::vector<AxisPair> pairs;
  for (std::size_t i = 0; i < a.labels.size(); ++i)
    for (std::size_t j = 0; j < b.labels.size(); ++j)
      if (a.labels[i] == b.labels[j]) pairs.emplace_back(i, j);
  LabeledTensor out;
  out.tensor = contract(a.tensor, b.tensor, pairs);
  out.labels = merged_labels(a.labels, b.labels, nullptr);
  return out;
}

LabeledTensor arrange(const LabeledTensor& t, std::span<const Label> order) {
  if (order.size() != t.labels.size()) throw ArgumentError("arrange: label count mismatch");
  std::vector<std::size_t> perm;
  for (Label l : order) {
    auto it = std::find(t.labels.begin(), t.labels.end(), l);
    if (it == t.labels.end()) throw ArgumentError("arrange: unknown label " + std::to_string(l));
    perm.push_back(std::size_t(it - t.labels.begin()));
  }
  return {t.tensor.permute(perm), std::vector<Label>(order.begin(), order.end())};
}

ContractionPlan plan_greedy(const LabelSets& inputs, const LabelExtents& extents) {
  ContractionPlan plan;
  plan.peak_entries = input_peak(inputs, extents);
  LabelSets work = inputs;
  while (work.size() > 1) {
    bool found = false;
    bool best_connected = false;
    double best_size = 0.0;
    Label best_label = 0;
    std::size_t bi = 0, bj = 0;
    std::vector<Label> best_labels;
    for (std::size_t i = 0; i < work.size(); ++i)
      for (std::size_t j = i + 1; j < work.size(); ++j) {
        Label shared = 0;
        auto labels = merged_labels(work[i], work[j], &shared);
        const bool connected = shared != std::numeric_limits<Label>::max();
        const double size = volume(labels, extents);
        bool better = false;
        if (!found)
          better = true;
        else if (connected != best_connected)
          better = connected;
        else if (size != best_size)
          better = size < best_size;
        else if (connected && shared != best_label)
          better = shared < best_label;
        if (better) {
          found = true;
          best_connected = connected;
          best_size = size;
          best_label = shared;
          bi = i;
          bj = j;
          best_labels = std::move(labels);
        }
      }
    plan.steps.emplace_back(bi, bj);
    plan.peak_entries = std::max(plan.peak_entries, best_size);
    work.erase(work.begin() + std::ptrdiff_t(bj));
    work.erase(work.begin() + std::ptrdiff_t(bi));
    work.push_back(std::move(best_labels));
  }
  return plan;
}

ContractionPlan plan_sequential(const LabelSets& inputs, const LabelExtents& extents) {
  ContractionPlan plan;
  plan.peak_entries = input_peak(inputs, extents);
  if (inputs.empty()) return plan;
  std::vector<Label> acc = inputs[0];
  // Working list after k steps: [inputs k+1 .. n-1, acc]; the next input sits at 0.
  for (std::size_t k = 1; k < inputs.size(); ++k) {
    const std::size_t remaining = inputs.size() - k;  // items before acc
    plan.steps.emplace_back(0, remaining);
    acc = merged_labels(inputs[k], acc, nullptr);
    plan.peak_entries = std::max(plan.peak_entries, volume(acc, extents));
  }
  return plan;
}

ContractionPlan make_plan(const LabelSets& inputs, const LabelExtents& extents, PlanKind kind) {
  switch (kind) {
    case PlanKind::kGreedy:
      return plan_greedy(inputs, extents);
    case PlanKind::kSequential:
      return plan_sequential(inputs, extents);
    case PlanKind::kBest: {
      ContractionPlan greedy = plan_greedy(inputs, extents);
      ContractionPlan sequential = plan_sequential(inputs, extents);
      return sequential.peak_entries < greedy.peak_entries ? sequential : greedy;
    }
  }
  throw ArgumentError("unknown plan kind");
}

LabeledTensor execute_plan(std::vector<LabeledTensor> inputs, const ContractionPlan& plan) {
  if (inputs.empty()) throw ArgumentError("execute_plan: empty network");
  for (const auto& [i, j] : plan.steps) {
    if (!(i < j && j < inputs.size())) throw ArgumentError("execute_plan: malformed plan");
    LabeledTensor merged = contract_shared(inputs[i], inputs[j]);
    inputs.erase(inputs.begin() + std::ptrdiff_t(j));
    inputs.erase(inputs.begin() + std::ptrdiff_t(i));
    inputs.push_back(std::move(merged));
  }
  if (inputs.size() != 1) throw ArgumentError("execute_plan: plan leaves more than one tensor");
  return std::move(inputs.front());
}

LabeledTensor contract_network(std::vector<LabeledTensor> inputs, PlanKind kind, double budget_entries) {
  LabelSets sets;
  LabelExtents extents;
  for (const auto& t : inputs) {
    sets.push_back(t.labels);
    for (std::size_t k = 0; k < t.labels.size(); ++k) {
      auto [it, inserted] = extents.emplace(t.labels[k], t.tensor.shape()[k]);
      if (!inserted && it->second != t.tensor.shape()[k])
        throw DimensionError("network: label " + std::to_string(t.labels[k]) + " has inconsistent extents");
    }
  }
  const ContractionPlan plan = make_plan(sets, extents, kind);
  if (plan.peak_entries > budget_entries)
    throw SizeError("contraction would hold " + std::to_string(plan.peak_entries) +
                        " entries in its largest intermediate, budget is " + std::to_string(budget_entries),
                    plan.peak_entries);
  return execute_plan(std::move(inputs), plan);
}

}  // namespace patchpeps
