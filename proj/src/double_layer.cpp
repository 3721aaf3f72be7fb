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

#include "patchpeps/double_layer.hpp"

#include <algorithm>
#include <string>

#include "patchpeps/errors.hpp"

namespace patchpeps {

Tensor doubled_site(const Tensor& a, bool keep_phys, const std::vector<bool>& keep_leg) {
  if (a.rank() != keep_leg.size() + 1) throw DimensionError("doubled_site: leg mask does not match tensor rank");
  std::vector<AxisPair> pairs;
  if (!keep_phys) pairs.emplace_back(0, 0);
  for (std::size_t k = 0; k < keep_leg.size(); ++k)
    if (!keep_leg[k]) pairs.emplace_back(k + 1, k + 1);
  const Tensor doubled = contract(a, a.conj(), pairs);

  // Free axes come out as [ket free..., bra free...]; interleave them.
  const std::size_t half = doubled.rank() / 2;
  std::vector<std::size_t> perm;
  Shape shape;
  std::size_t first_leg = 0;
  if (keep_phys) {
    perm = {0, half};
    shape = {a.shape()[0], a.shape()[0]};
    first_leg = 1;
  }
  for (std::size_t k = first_leg; k < half; ++k) {
    perm.push_back(k);
    perm.push_back(half + k);
    shape.push_back(doubled.shape()[k] * doubled.shape()[k]);
  }
  return doubled.permute(perm).reshape(shape);
}

std::vector<LabeledTensor> double_layer_nodes(const PepsState& peps, std::span<const SiteIndex> kept,
                                              std::span<const SiteIndex> open) {
  const Lattice& lattice = peps.lattice();
  lattice.require_engine_dimension();
  std::vector<bool> in_kept(peps.num_sites(), false), in_open(peps.num_sites(), false);
  for (SiteIndex s : kept) {
    if (s >= peps.num_sites()) throw BoundsError("double_layer_nodes: site out of range");
    in_kept[s] = true;
  }
  for (SiteIndex s : open) {
    if (s >= peps.num_sites() || !in_kept[s]) throw ArgumentError("double_layer_nodes: open site outside the kept set");
    in_open[s] = true;
  }

  std::vector<LabeledTensor> nodes;
  for (SiteIndex s = 0; s < peps.num_sites(); ++s) {
    if (!in_kept[s]) continue;
    std::vector<bool> keep_leg;
    LabeledTensor node;
    if (in_open[s]) node.labels = {ket_phys_label(lattice, s), bra_phys_label(lattice, s)};
    for (const Leg& leg : lattice.legs(s)) {
      keep_leg.push_back(in_kept[leg.neighbor]);
      if (in_kept[leg.neighbor]) node.labels.push_back(edge_label(leg.edge));
    }
    node.tensor = doubled_site(peps.tensor(s), in_open[s], keep_leg);
    nodes.push_back(std::move(node));
  }
  return nodes;
}

Tensor reduced_density(const PepsState& peps, std::span<const SiteIndex> kept, std::span<const SiteIndex> open,
                       PlanKind kind, double budget_entries) {
  std::vector<Label> order;
  for (SiteIndex s : open) order.push_back(ket_phys_label(peps.lattice(), s));
  for (SiteIndex s : open) order.push_back(bra_phys_label(peps.lattice(), s));
  LabeledTensor rho = arrange(contract_network(double_layer_nodes(peps, kept, open), kind, budget_entries), order);
  std::size_t dim = 1;
  for (std::size_t k = 0; k < open.size(); ++k) dim *= peps.phys_dim();
  return rho.tensor.reshape({dim, dim});
}

Tensor reduced_density(const Tensor& state, std::span<const std::size_t> open_axes) {
  std::vector<bool> is_open(state.rank(), false);
  for (std::size_t a : open_axes) {
    if (a >= state.rank() || is_open[a]) throw ArgumentError("reduced_density: invalid open axis");
    is_open[a] = true;
  }
  std::vector<AxisPair> pairs;
  std::vector<std::size_t> free_axes;  // open axes in increasing order, as contract leaves them
  for (std::size_t a = 0; a < state.rank(); ++a)
    if (is_open[a])
      free_axes.push_back(a);
    else
      pairs.emplace_back(a, a);
  const Tensor rho = contract(state, state.conj(), pairs);
  const std::size_t k = open_axes.size();
  std::vector<std::size_t> perm(2 * k);
  std::size_t dim = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t pos = std::size_t(std::find(free_axes.begin(), free_axes.end(), open_axes[i]) - free_axes.begin());
    perm[i] = pos;
    perm[k + i] = k + pos;
    dim *= state.shape()[open_axes[i]];
  }
  return rho.permute(perm).reshape({dim, dim});
}

Complex density_trace(const Tensor& rho) {
  const std::size_t n = rho.shape().at(0);
  Complex acc = 0.0;
  for (std::size_t a = 0; a < n; ++a) acc += rho[a * n + a];
  return acc;
}

Complex density_expectation(const Tensor& observable, const Tensor& rho) {
  if (observable.shape() != rho.shape() || observable.rank() != 2)
    throw DimensionError("density_expectation: observable and density shapes differ");
  const std::size_t n = rho.shape()[0];
  Complex num = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    // Diagonal term first so the identity reproduces density_trace exactly.
    num += observable[a * n + a] * rho[a * n + a];
    for (std::size_t b = 0; b < n; ++b)
      if (b != a && observable[a * n + b] != Complex(0.0)) num += observable[a * n + b] * rho[b * n + a];
  }
  const Complex den = density_trace(rho);
  if (!(std::abs(den) > 0.0)) throw NumericalError("density_expectation: state has zero norm");
  return num / den;
}

}  // namespace patchpeps
