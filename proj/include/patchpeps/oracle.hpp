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
#include <string>
#include <vector>

#include "patchpeps/observable.hpp"
#include "patchpeps/peps.hpp"

namespace patchpeps {

struct OracleOptions {
  double state_cutoff = kDefaultStateCutoff;
  double network_budget = kDefaultNetworkBudget;
  /// Relative agreement demanded between the two paths when both run.
  double cross_check_tolerance = 1e-10;
};

struct OracleResult {
  Complex value;
  double norm_sq = 0.0;  // <omega|omega> including the pair normalisation
  std::size_t sites_used = 0;
  double wall_time_ms = 0.0;
  std::string path;  // "state_vector", "network" or "both"
};

/// <omega|O|omega> / <omega|omega> by full contraction. The state-vector
/// path runs when d^N fits the cutoff, the double-layer network path when
/// its greedy plan fits the budget; both run and are compared when feasible.
OracleResult exact_expectation(const PepsState& peps, const Observable& obs, const OracleOptions& options = {});

struct Correlation {
  Complex joint;
  Complex connected;
};

Correlation exact_correlation(const PepsState& peps, const Observable& a, const Observable& b,
                              const OracleOptions& options = {});

struct DisentanglingStep {
  SiteIndex site = 0;
  Complex value;           // expectation after removing this site
  double deviation = 0.0;  // |value - previous value|
  double kappa = 0.0;      // condition number of the removed site map
};

/// Removes the listed sites one at a time, replacing each site map A by
/// A^+ A, and records the change of the normalised expectation per step.
std::vector<DisentanglingStep> disentangling_error_trace(const PepsState& peps, const Observable& obs,
                                                         std::span<const SiteIndex> order,
                                                         const OracleOptions& options = {});

/// Same quantity computed from state vectors with disentangle_site; only
/// feasible at small sizes. Used to cross-check the network version.
std::vector<double> disentangling_error_trace_state(const PepsState& peps, const Observable& obs,
                                                    std::span<const SiteIndex> order,
                                                    const OracleOptions& options = {});

}  // namespace patchpeps
