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

#include "patchpeps/patch.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "patchpeps/double_layer.hpp"
#include "patchpeps/linalg.hpp"
#include "patchpeps/rng.hpp"

namespace patchpeps {

namespace {

std::vector<SiteIndex> support(const PepsState& peps, const Observable& obs) {
  if (obs.site_dim() != peps.phys_dim())
    throw DimensionError("observable acts on dimension " + std::to_string(obs.site_dim()) + " but phys_dim is " +
                         std::to_string(peps.phys_dim()));
  return obs.site_indices(peps.lattice());
}

// Calls visit(offset) for every integer offset with |offset|_1 <= radius.
template <typename Visit>
void for_each_offset(std::size_t dim, std::vector<int>& offset, std::size_t axis, int budget,
                     Visit&& visit) {
  if (axis == dim) {
    visit(offset);
    return;
  }
  for (int k = -budget; k <= budget; ++k) {
    offset[axis] = k;
    for_each_offset(dim, offset, axis + 1, budget - std::abs(k), visit);
  }
}

double local_kappa(const PepsState& peps, std::span<const SiteIndex> x, std::size_t ell) {
  const Patch halo = select_patch(peps.lattice(), x, ell + 1);
  double worst = 1.0;
  for (SiteIndex s : halo.sites) {
    const InjectivityReport r = injectivity_check(peps.site_tensor(s));
    if (!r.injective) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, *r.kappa);
  }
  return worst;
}

}  // namespace

Patch select_patch(const Lattice& lattice, std::span<const SiteIndex> support, std::size_t ell) {
  if (support.empty()) throw ArgumentError("select_patch: support is empty");
  for (SiteIndex s : support)
    if (s >= lattice.num_sites()) throw ArgumentError("select_patch: support site outside the lattice");

  Patch patch;
  patch.radius = ell;
  const std::size_t dim = lattice.dimension();
  std::vector<int> offset(dim, 0);
  for (SiteIndex x : support) {
    const Coord center = lattice.coord(x);
    for_each_offset(dim, offset, 0, int(ell), [&](const std::vector<int>& off) {
      Coord c = center;
      for (std::size_t k = 0; k < dim; ++k) c.c[k] += off[k];
      if (lattice.contains(c))
        patch.sites.push_back(lattice.index(c));
      else
        patch.clipped = true;
    });
  }
  std::sort(patch.sites.begin(), patch.sites.end());
  patch.sites.erase(std::unique(patch.sites.begin(), patch.sites.end()), patch.sites.end());

  auto inside = [&](SiteIndex s) { return std::binary_search(patch.sites.begin(), patch.sites.end(), s); };
  for (SiteIndex s : patch.sites)
    for (const Leg& leg : lattice.legs(s)) {
      if (!inside(leg.neighbor))
        patch.crossing_edges.push_back(leg.edge);
      else if (leg.plus)
        patch.interior_edges.push_back(leg.edge);
    }
  std::sort(patch.interior_edges.begin(), patch.interior_edges.end());
  std::sort(patch.crossing_edges.begin(), patch.crossing_edges.end());
  return patch;
}

double error_bound(std::size_t ell, std::size_t lattice_dim, double gap, double kappa_star, double op_norm,
                   double c) {
  const double prefactor = lattice_dim <= 1 ? 1.0 : std::pow(double(ell), double(lattice_dim - 1));
  return prefactor * std::exp(-c * double(ell) * gap) * kappa_star * kappa_star * op_norm;
}

std::size_t choose_radius(double epsilon, double kappa_star, double gap, double op_norm, double c,
                          std::size_t lattice_dim, std::optional<std::size_t> cap) {
  if (!(epsilon > 0.0)) throw ArgumentError("choose_radius: epsilon must be positive");
  if (!(gap > 0.0)) throw ArgumentError("choose_radius: gap must be positive");
  if (!(c > 0.0)) throw ArgumentError("choose_radius: c must be positive");
  if (!(kappa_star >= 1.0)) throw ArgumentError("choose_radius: kappa_star must be at least 1");
  if (!(op_norm > 0.0)) throw ArgumentError("choose_radius: op_norm must be positive");
  if (!std::isfinite(kappa_star) || !std::isfinite(op_norm))
    throw ArgumentError("choose_radius: kappa_star and op_norm must be finite");
  const std::size_t limit = cap ? std::max<std::size_t>(*cap, 1) : std::numeric_limits<std::size_t>::max();
  std::size_t ell = 1;
  while (ell < limit && error_bound(ell, lattice_dim, gap, kappa_star, op_norm, c) > epsilon) ++ell;
  return ell;
}

Estimate patch_expectation(const PepsState& peps, const Observable& obs, std::size_t ell,
                           const PatchOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  peps.lattice().require_engine_dimension();
  const std::vector<SiteIndex> x = support(peps, obs);
  const Patch patch = select_patch(peps.lattice(), x, ell);
  const Tensor rho = reduced_density(peps, patch.sites, x, PlanKind::kBest, options.budget_entries);

  Estimate out;
  out.value = density_expectation(obs.matrix(), rho);
  out.radius_used = ell;
  out.patch_size = patch.sites.size();
  out.clipped = patch.clipped;
  const double kappa = options.bound.kappa_star ? *options.bound.kappa_star : local_kappa(peps, x, ell);
  out.bound = obs.op_norm() == 0.0 ? 0.0
                                   : error_bound(ell, peps.lattice().dimension(), options.bound.gap, kappa,
                                                 obs.op_norm(), options.bound.c);
  out.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

Estimate adaptive_estimate(const PepsState& peps, const Observable& obs, double epsilon, const PatchOptions& options) {
  if (!(epsilon > 0.0)) throw ArgumentError("adaptive_estimate: epsilon must be positive");
  const auto start = std::chrono::steady_clock::now();
  std::vector<LadderStep> ladder;
  Estimate last;
  for (std::size_t ell = 0;; ++ell) {
    try {
      last = patch_expectation(peps, obs, ell, options);
    } catch (const SizeError& e) {
      throw LadderBudgetError(e, ladder);
    }
    LadderStep step{ell, last.value, std::nullopt, last.patch_size};
    if (!ladder.empty()) step.difference = std::abs(last.value - ladder.back().value);
    ladder.push_back(step);

    const bool covers = last.patch_size == peps.num_sites();
    bool converged = false;
    if (ell >= 1) {
      converged = *ladder[ell].difference <= epsilon / 2.0;
      if (ell >= 2) converged = converged && *ladder[ell - 1].difference <= epsilon / 2.0;
    }
    if (converged || covers) break;
  }
  last.mode = Estimate::Mode::kAdaptive;
  last.ladder = std::move(ladder);
  last.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return last;
}

std::size_t hoeffding_samples(double epsilon, double delta, double range) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ArgumentError("epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw ArgumentError("delta must lie in (0, 1)");
  if (!(range >= 0.0) || !std::isfinite(range)) throw ArgumentError("observable range must be finite");
  const double n = std::ceil(std::log(2.0 / delta) * range * range / (2.0 * epsilon * epsilon));
  return std::max<std::size_t>(1, std::size_t(n));
}

Tensor purified_patch_density(const PepsState& peps, const Observable& obs, std::size_t ell, double budget_entries) {
  peps.lattice().require_engine_dimension();
  const Lattice& lattice = peps.lattice();
  const std::vector<SiteIndex> x = support(peps, obs);
  const Patch patch = select_patch(lattice, x, ell);

  // Single-layer patch network: interior edges pair up, crossing legs stay
  // open as extra indices of the purified state.
  std::vector<LabeledTensor> nodes;
  for (SiteIndex s : patch.sites) {
    LabeledTensor node{peps.tensor(s), {ket_phys_label(lattice, s)}};
    for (const Leg& leg : lattice.legs(s)) node.labels.push_back(edge_label(leg.edge));
    nodes.push_back(std::move(node));
  }
  const LabeledTensor psi = contract_network(std::move(nodes), PlanKind::kBest, budget_entries);
  std::vector<std::size_t> axes;
  for (SiteIndex s : x)
    axes.push_back(std::size_t(std::find(psi.labels.begin(), psi.labels.end(), ket_phys_label(lattice, s)) -
                               psi.labels.begin()));
  return reduced_density(psi.tensor, axes);
}

SamplingResult sampling_estimate(const PepsState& peps, const Observable& obs, std::size_t ell, double epsilon,
                                 double delta, std::uint64_t seed, double budget_entries) {
  if (!obs.hermitian()) throw ArgumentError("sampling_estimate: observable must be Hermitian");
  const HermitianEigen eig = hermitian_eigen(to_matrix(obs.matrix()));
  const double lo = eig.values.front(), hi = eig.values.back();
  SamplingResult out;
  out.n_samples = hoeffding_samples(epsilon, delta, hi - lo);

  const Tensor rho_t = purified_patch_density(peps, obs, ell, budget_entries);
  out.patch_value = density_expectation(obs.matrix(), rho_t).real();
  Matrix rho = to_matrix(rho_t);
  rho /= rho.trace();

  const std::size_t n = eig.values.size();
  std::vector<double> cumulative(n);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto v = eig.vectors.col(Eigen::Index(k));
    acc += std::max(0.0, (v.adjoint() * rho * v)(0, 0).real());
    cumulative[k] = acc;
  }
  if (!(acc > 0.0)) throw NumericalError("sampling_estimate: outcome distribution is empty");

  Rng rng(seed);
  std::vector<std::size_t> counts(n, 0);
  for (std::size_t i = 0; i < out.n_samples; ++i) {
    const double u = rng.uniform() * acc;
    const std::size_t k = std::size_t(std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
    ++counts[std::min(k, n - 1)];
  }
  // Offsets from the smallest eigenvalue keep a degenerate spectrum exact.
  double shifted = 0.0;
  for (std::size_t k = 0; k < n; ++k) shifted += double(counts[k]) * (eig.values[k] - lo);
  out.mean = lo + shifted / double(out.n_samples);
  return out;
}

}  // namespace patchpeps
