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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "patchpeps/errors.hpp"
#include "patchpeps/observable.hpp"
#include "patchpeps/peps.hpp"

namespace patchpeps {

/// Closed graph-distance ball of radius `radius` around the support.
struct Patch {
  std::size_t radius = 0;
  std::vector<SiteIndex> sites;  // sorted
  std::vector<EdgeId> interior_edges;
  std::vector<EdgeId> crossing_edges;
  bool clipped = false;  // the open boundary cut off part of the ball
};

Patch select_patch(const Lattice& lattice, std::span<const SiteIndex> support, std::size_t ell);

/// ell^{d-1} e^{-c ell gap} kappa^2 ||O||, with 0^0 = 1.
double error_bound(std::size_t ell, std::size_t lattice_dim, double gap, double kappa_star, double op_norm, double c);

/// Smallest ell >= 1 whose error bound is at most epsilon, capped at `cap`.
std::size_t choose_radius(double epsilon, double kappa_star, double gap, double op_norm, double c,
                          std::size_t lattice_dim, std::optional<std::size_t> cap = std::nullopt);

struct BoundParams {
  double gap = 1.0;
  double c = 1.0;
  /// When absent, kappa is the largest single-site condition number within
  /// distance ell + 1 of the support; a non-injective site makes the bound
  /// infinite.
  std::optional<double> kappa_star;
};

struct PatchOptions {
  double budget_entries = kDefaultNetworkBudget;
  BoundParams bound;
};

struct LadderStep {
  std::size_t ell = 0;
  Complex value;
  std::optional<double> difference;  // |value(ell) - value(ell - 1)|
  std::size_t patch_size = 0;
};

struct Estimate {
  Complex value;
  std::size_t radius_used = 0;
  double bound = 0.0;
  std::size_t patch_size = 0;
  double wall_time_ms = 0.0;
  enum class Mode { kFixedRadius, kAdaptive } mode = Mode::kFixedRadius;
  std::vector<LadderStep> ladder;  // adaptive mode only
  bool clipped = false;
};

Estimate patch_expectation(const PepsState& peps, const Observable& obs, std::size_t ell,
                           const PatchOptions& options = {});

/// Budget exhaustion during the adaptive ladder; carries what was computed.
class LadderBudgetError : public SizeError {
 public:
  LadderBudgetError(const SizeError& cause, std::vector<LadderStep> ladder)
      : SizeError(cause.what(), cause.predicted_entries()), ladder_(std::move(ladder)) {}
  const std::vector<LadderStep>& ladder() const noexcept { return ladder_; }

 private:
  std::vector<LadderStep> ladder_;
};

/// Evaluates ell = 0, 1, 2, ... and stops at the first ell >= 1 whose
/// latest differences (the last two once ell >= 2) are all <= epsilon / 2,
/// or when the patch covers the lattice.
Estimate adaptive_estimate(const PepsState& peps, const Observable& obs, double epsilon,
                           const PatchOptions& options = {});

/// Hoeffding sample count ceil(ln(2/delta) (range)^2 / (2 epsilon^2)), at least 1.
std::size_t hoeffding_samples(double epsilon, double delta, double range);

struct SamplingResult {
  double mean = 0.0;
  std::size_t n_samples = 0;
  double patch_value = 0.0;  // exact expectation in the patch state
};

/// Simulated measurement: the patch state is purified by keeping each
/// dangling crossing ket leg as an extra index; outcomes are drawn from the
/// eigenbasis distribution of the observable in that state.
SamplingResult sampling_estimate(const PepsState& peps, const Observable& obs, std::size_t ell, double epsilon,
                                 double delta, std::uint64_t seed, double budget_entries = kDefaultNetworkBudget);

/// Reduced density of the purified patch state (crossing ket legs kept as
/// open indices instead of closing them in the double layer).
Tensor purified_patch_density(const PepsState& peps, const Observable& obs, std::size_t ell, double budget_entries);

}  // namespace patchpeps
