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

#include "patchpeps/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>

#include "patchpeps/double_layer.hpp"
#include "patchpeps/errors.hpp"

namespace patchpeps {

namespace {

std::vector<SiteIndex> support(const PepsState& peps, const Observable& obs) {
  if (obs.site_dim() != peps.phys_dim())
    throw DimensionError("observable acts on dimension " + std::to_string(obs.site_dim()) + " but phys_dim is " +
                         std::to_string(peps.phys_dim()));
  return obs.site_indices(peps.lattice());
}

std::vector<SiteIndex> all_sites(const PepsState& peps) {
  std::vector<SiteIndex> out(peps.num_sites());
  for (SiteIndex s = 0; s < out.size(); ++s) out[s] = s;
  return out;
}

bool close(Complex a, Complex b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)) + 1e-14;
}

double network_peak(const std::vector<LabeledTensor>& nodes) {
  LabelSets sets;
  LabelExtents extents;
  for (const auto& n : nodes) {
    sets.push_back(n.labels);
    for (std::size_t k = 0; k < n.labels.size(); ++k) extents.emplace(n.labels[k], n.tensor.shape()[k]);
  }
  return plan_greedy(sets, extents).peak_entries;
}

}  // namespace

OracleResult exact_expectation(const PepsState& peps, const Observable& obs, const OracleOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const Lattice& lattice = peps.lattice();
  lattice.require_engine_dimension();
  const std::vector<SiteIndex> x = support(peps, obs);
  const std::vector<SiteIndex> sites = all_sites(peps);

  const double amplitudes = std::pow(double(peps.phys_dim()), double(peps.num_sites()));
  const bool state_ok = amplitudes <= options.state_cutoff;
  const double peak = network_peak(double_layer_nodes(peps, sites, x));
  const bool network_ok = peak <= options.network_budget;
  if (!state_ok && !network_ok)
    throw SizeError("exact contraction infeasible: d^N = " + std::to_string(amplitudes) +
                        " exceeds the state cutoff and the double-layer plan needs " + std::to_string(peak) +
                        " entries",
                    std::min(amplitudes, peak));

  OracleResult out;
  out.sites_used = peps.num_sites();
  std::optional<Complex> sv_value, nw_value;
  double sv_norm = 0.0, nw_norm = 0.0;
  if (state_ok) {
    const Tensor psi = build_state_vector(peps, options.state_cutoff);
    const std::vector<std::size_t> axes(x.begin(), x.end());
    const Tensor rho = reduced_density(psi, axes);
    sv_value = density_expectation(obs.matrix(), rho);
    sv_norm = density_trace(rho).real();
  }
  if (network_ok) {
    const Tensor rho = reduced_density(peps, sites, x, PlanKind::kGreedy, options.network_budget);
    nw_value = density_expectation(obs.matrix(), rho);
    nw_norm = density_trace(rho).real() * std::pow(double(peps.bond_dim()), -double(lattice.edges().size()));
  }
  if (sv_value && nw_value) {
    if (!close(*sv_value, *nw_value, options.cross_check_tolerance) ||
        !close(sv_norm, nw_norm, options.cross_check_tolerance))
      throw NumericalError("oracle paths disagree: state vector gives " + std::to_string(sv_value->real()) +
                           ", network gives " + std::to_string(nw_value->real()));
    out.path = "both";
  } else {
    out.path = sv_value ? "state_vector" : "network";
  }
  out.value = sv_value ? *sv_value : *nw_value;
  out.norm_sq = sv_value ? sv_norm : nw_norm;
  if (!(out.norm_sq > 0.0)) throw NumericalError("state has zero norm");
  out.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

Correlation exact_correlation(const PepsState& peps, const Observable& a, const Observable& b,
                              const OracleOptions& options) {
  if (a.sites().size() != 1 || b.sites().size() != 1)
    throw ArgumentError("exact_correlation expects single-site observables");
  const Observable joint = kron(a, b);  // rejects overlapping supports
  Correlation out;
  out.joint = exact_expectation(peps, joint, options).value;
  out.connected = out.joint - exact_expectation(peps, a, options).value * exact_expectation(peps, b, options).value;
  return out;
}

namespace {

void check_order(const PepsState& peps, const std::vector<SiteIndex>& x, std::span<const SiteIndex> order) {
  std::vector<bool> seen(peps.num_sites(), false);
  for (SiteIndex s : order) {
    if (s >= peps.num_sites()) throw BoundsError("disentangling order lists an unknown site");
    if (std::find(x.begin(), x.end(), s) != x.end())
      throw ArgumentError("disentangling order touches the observable support at " +
                          to_string(peps.lattice().coord(s)));
    if (seen[s]) throw ArgumentError("disentangling order lists " + to_string(peps.lattice().coord(s)) + " twice");
    seen[s] = true;
  }
}

}  // namespace

std::vector<DisentanglingStep> disentangling_error_trace(const PepsState& peps, const Observable& obs,
                                                         std::span<const SiteIndex> order,
                                                         const OracleOptions& options) {
  const std::vector<SiteIndex> x = support(peps, obs);
  check_order(peps, x, order);

  std::vector<DisentanglingStep> steps;
  for (SiteIndex s : order) {
    const InjectivityReport report = injectivity_check(peps.site_tensor(s));
    if (!report.injective)
      throw NotInjectiveError("site " + to_string(report.site) + " is not injective", report.sigma_min);
    steps.push_back({s, 0.0, 0.0, *report.kappa});
  }

  // With A^+ A = 1 on the virtual space, a removed site closes each of its
  // legs with the identity, so the state after k steps is the double layer
  // over the remaining sites.
  std::vector<bool> removed(peps.num_sites(), false);
  auto value = [&] {
    std::vector<SiteIndex> kept;
    for (SiteIndex s = 0; s < peps.num_sites(); ++s)
      if (!removed[s]) kept.push_back(s);
    return density_expectation(obs.matrix(),
                               reduced_density(peps, kept, x, PlanKind::kGreedy, options.network_budget));
  };
  Complex previous = value();
  for (DisentanglingStep& step : steps) {
    removed[step.site] = true;
    step.value = value();
    step.deviation = std::abs(step.value - previous);
    previous = step.value;
  }
  return steps;
}

std::vector<double> disentangling_error_trace_state(const PepsState& peps, const Observable& obs,
                                                    std::span<const SiteIndex> order,
                                                    const OracleOptions& options) {
  const std::vector<SiteIndex> x = support(peps, obs);
  check_order(peps, x, order);

  LabeledState state = labeled_state(peps, options.state_cutoff);
  auto value = [&] {
    std::vector<std::size_t> axes;
    for (SiteIndex s : x) {
      const auto it =
          std::find(state.axes.begin(), state.axes.end(), StateAxis{StateAxis::Kind::kPhysical, s, 0});
      axes.push_back(std::size_t(it - state.axes.begin()));
    }
    return density_expectation(obs.matrix(), reduced_density(state.amplitudes, axes));
  };
  std::vector<double> out;
  Complex previous = value();
  for (SiteIndex s : order) {
    state = disentangle_site(state, peps, s);
    const Complex v = value();
    out.push_back(std::abs(v - previous));
    previous = v;
  }
  return out;
}

}  // namespace patchpeps
