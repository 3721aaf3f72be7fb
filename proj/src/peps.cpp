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

#include "patchpeps/peps.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "patchpeps/errors.hpp"
#include "patchpeps/linalg.hpp"

namespace patchpeps {

namespace {

std::string region_string(const Lattice& lattice, std::span<const SiteIndex> sites) {
  std::string out = "{";
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (k) out += ",";
    out += to_string(lattice.coord(sites[k]));
  }
  return out + "}";
}

Matrix site_matrix(const Tensor& t) {
  std::vector<std::size_t> cols(t.rank() - 1);
  for (std::size_t k = 0; k < cols.size(); ++k) cols[k] = k + 1;
  const std::size_t rows[] = {0};
  return to_matrix(t, rows, cols);
}

Tensor pair_tensor(std::size_t bond_dim) {
  Tensor pair(Shape{bond_dim, bond_dim});
  const double w = 1.0 / std::sqrt(double(bond_dim));
  for (std::size_t i = 0; i < bond_dim; ++i) pair[i * bond_dim + i] = w;
  return pair;
}

void require_site(const Lattice& lattice, SiteIndex site) {
  if (site >= lattice.num_sites()) throw BoundsError("site index " + std::to_string(site) + " out of range");
}

}  // namespace

PepsState::PepsState(Lattice lattice, std::size_t phys_dim, std::size_t bond_dim, std::vector<Tensor> tensors)
    : lattice_(std::move(lattice)), phys_dim_(phys_dim), bond_dim_(bond_dim), tensors_(std::move(tensors)) {
  if (phys_dim_ < 1 || bond_dim_ < 1) throw ModelError("physical and bond dimensions must be positive");
  if (tensors_.size() != lattice_.num_sites())
    throw ModelError("expected " + std::to_string(lattice_.num_sites()) + " site tensors, got " +
                     std::to_string(tensors_.size()));
  for (SiteIndex s = 0; s < tensors_.size(); ++s) {
    const Shape& shape = tensors_[s].shape();
    const std::string where = "site " + to_string(lattice_.coord(s));
    if (shape.size() != 1 + lattice_.legs(s).size())
      throw ModelError(where + ": expected " + std::to_string(1 + lattice_.legs(s).size()) + " legs, got " +
                       std::to_string(shape.size()));
    if (shape[0] != phys_dim_) throw ModelError(where + ": physical extent does not match phys_dim");
    for (std::size_t k = 1; k < shape.size(); ++k)
      if (shape[k] != bond_dim_) throw ModelError(where + ": bond extent does not match bond_dim");
    if (!tensors_[s].all_finite()) throw ModelError(where + ": tensor has non-finite entries");
  }
}

PepsState PepsState::with_tensor(SiteIndex site, Tensor tensor) const {
  require_site(lattice_, site);
  if (tensor.shape() != tensors_[site].shape()) throw DimensionError("with_tensor: shape mismatch");
  std::vector<Tensor> copy = tensors_;
  copy[site] = std::move(tensor);
  return PepsState(lattice_, phys_dim_, bond_dim_, std::move(copy));
}

InjectivityReport injectivity_check(const SiteTensor& t, double threshold) {
  InjectivityReport report;
  report.site = t.site;
  if (t.tensor.rank() < 1) throw DimensionError("injectivity_check: tensor needs a physical leg");
  const Matrix m = site_matrix(t.tensor);
  const std::size_t rows[] = {0};
  const std::size_t cols[] = {1};
  const SvdResult f = svd(from_matrix(m), rows, cols);
  report.sigma_max = f.s.empty() ? 0.0 : f.s.front();
  report.sigma_min = m.cols() > m.rows() ? 0.0 : f.s.back();
  report.injective = report.sigma_max > 0.0 && report.sigma_min > threshold * report.sigma_max;
  if (report.injective) report.kappa = report.sigma_max / report.sigma_min;
  return report;
}

Label edge_label(EdgeId edge) { return Label(edge); }
Label ket_phys_label(const Lattice& lattice, SiteIndex site) {
  return Label(lattice.edges().size() + 2 * site);
}
Label bra_phys_label(const Lattice& lattice, SiteIndex site) {
  return Label(lattice.edges().size() + 2 * site + 1);
}

Tensor build_state_vector(const PepsState& peps, double cutoff) {
  const Lattice& lattice = peps.lattice();
  lattice.require_engine_dimension();
  const double amplitudes = std::pow(double(peps.phys_dim()), double(peps.num_sites()));
  if (amplitudes > cutoff)
    throw SizeError("state vector needs d^N = " + std::to_string(amplitudes) + " amplitudes, cutoff is " +
                        std::to_string(cutoff),
                    amplitudes);

  std::vector<LabeledTensor> nodes;
  std::vector<Label> phys;
  for (SiteIndex s = 0; s < peps.num_sites(); ++s) {
    LabeledTensor node{peps.tensor(s), {ket_phys_label(lattice, s)}};
    for (const Leg& leg : lattice.legs(s)) node.labels.push_back(edge_label(leg.edge));
    nodes.push_back(std::move(node));
    phys.push_back(ket_phys_label(lattice, s));
  }
  LabeledTensor out = contract_network(std::move(nodes), PlanKind::kGreedy, std::max(cutoff, kDefaultNetworkBudget));
  out = arrange(out, phys);
  const double weight = std::pow(double(peps.bond_dim()), -0.5 * double(lattice.edges().size()));
  return weight == 1.0 ? out.tensor : out.tensor.scaled(weight);
}

BlockedTensor block(const PepsState& peps, std::span<const SiteIndex> region, std::size_t max_block) {
  const Lattice& lattice = peps.lattice();
  if (region.empty()) throw ArgumentError("block: region is empty");
  if (region.size() > max_block)
    throw ArgumentError("block: region of " + std::to_string(region.size()) + " sites exceeds the limit of " +
                        std::to_string(max_block));
  std::vector<SiteIndex> sites(region.begin(), region.end());
  for (SiteIndex s : sites) require_site(lattice, s);
  std::sort(sites.begin(), sites.end());
  if (std::adjacent_find(sites.begin(), sites.end()) != sites.end())
    throw ArgumentError("block: region lists a site twice");
  auto in_region = [&](SiteIndex s) { return std::binary_search(sites.begin(), sites.end(), s); };

  // Connectivity by breadth-first search inside the region.
  std::vector<SiteIndex> seen{sites.front()};
  std::deque<SiteIndex> queue{sites.front()};
  while (!queue.empty()) {
    const SiteIndex s = queue.front();
    queue.pop_front();
    for (const Leg& leg : lattice.legs(s))
      if (in_region(leg.neighbor) && std::find(seen.begin(), seen.end(), leg.neighbor) == seen.end()) {
        seen.push_back(leg.neighbor);
        queue.push_back(leg.neighbor);
      }
  }
  if (seen.size() != sites.size()) throw ArgumentError("block: region " + region_string(lattice, sites) + " is disconnected");

  BlockedTensor out;
  out.sites = sites;
  std::vector<LabeledTensor> nodes;
  std::vector<Label> order;
  std::size_t internal = 0;
  for (SiteIndex s : sites) {
    LabeledTensor node{peps.tensor(s), {ket_phys_label(lattice, s)}};
    order.push_back(ket_phys_label(lattice, s));
    for (const Leg& leg : lattice.legs(s)) {
      node.labels.push_back(edge_label(leg.edge));
      if (in_region(leg.neighbor)) {
        if (leg.plus) ++internal;
      } else {
        out.outward_edges.push_back(leg.edge);
        out.outward_owner.push_back(s);
      }
    }
    nodes.push_back(std::move(node));
  }
  for (EdgeId e : out.outward_edges) order.push_back(edge_label(e));

  LabeledTensor merged = arrange(contract_network(std::move(nodes), PlanKind::kGreedy, kDefaultNetworkBudget), order);
  Shape shape{std::size_t(std::llround(std::pow(double(peps.phys_dim()), double(sites.size()))))};
  shape.insert(shape.end(), out.outward_edges.size(), peps.bond_dim());
  out.tensor = merged.tensor.reshape(shape);
  if (internal > 0) out.tensor = out.tensor.scaled(std::pow(double(peps.bond_dim()), -0.5 * double(internal)));
  return out;
}

Tensor build_state_vector_from_blocks(const PepsState& peps, std::span<const BlockedTensor> blocks, double cutoff) {
  const Lattice& lattice = peps.lattice();
  const double amplitudes = std::pow(double(peps.phys_dim()), double(peps.num_sites()));
  if (amplitudes > cutoff) throw SizeError("state vector exceeds cutoff", amplitudes);

  std::vector<int> owner(peps.num_sites(), -1);
  std::vector<LabeledTensor> nodes;
  std::size_t between = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const BlockedTensor& blk = blocks[b];
    Shape shape(blk.sites.size(), peps.phys_dim());
    LabeledTensor node;
    for (SiteIndex s : blk.sites) {
      require_site(lattice, s);
      if (owner[s] >= 0) throw ArgumentError("blocks overlap at site " + to_string(lattice.coord(s)));
      owner[s] = int(b);
      node.labels.push_back(ket_phys_label(lattice, s));
    }
    for (EdgeId e : blk.outward_edges) {
      shape.push_back(peps.bond_dim());
      node.labels.push_back(edge_label(e));
    }
    node.tensor = blk.tensor.reshape(shape);
    nodes.push_back(std::move(node));
  }
  for (SiteIndex s = 0; s < peps.num_sites(); ++s)
    if (owner[s] < 0) throw ArgumentError("blocks do not cover site " + to_string(lattice.coord(s)));
  for (const Edge& e : lattice.edges())
    if (owner[e.lo] != owner[e.hi]) ++between;

  std::vector<Label> phys;
  for (SiteIndex s = 0; s < peps.num_sites(); ++s) phys.push_back(ket_phys_label(lattice, s));
  LabeledTensor out = arrange(contract_network(std::move(nodes), PlanKind::kGreedy, std::max(cutoff, kDefaultNetworkBudget)), phys);
  return out.tensor.scaled(std::pow(double(peps.bond_dim()), -0.5 * double(between)));
}

Partition default_partition(const PepsState& peps) {
  const Lattice& lattice = peps.lattice();
  bool all_injective = true;
  for (SiteIndex s = 0; s < peps.num_sites() && all_injective; ++s)
    all_injective = injectivity_check(peps.site_tensor(s)).injective;

  Partition out;
  if (all_injective) {
    for (SiteIndex s = 0; s < peps.num_sites(); ++s) out.push_back({s});
    return out;
  }
  lattice.require_engine_dimension();
  const auto& ext = lattice.extents();
  if (lattice.dimension() == 1) {
    for (int i = 0; i < ext[0]; i += 2) {
      std::vector<SiteIndex> blk{SiteIndex(i)};
      if (i + 1 < ext[0]) blk.push_back(SiteIndex(i + 1));
      out.push_back(std::move(blk));
    }
    return out;
  }
  for (int r = 0; r < ext[0]; r += 2)
    for (int c = 0; c < ext[1]; c += 2) {
      std::vector<SiteIndex> blk;
      for (int dr = 0; dr < 2; ++dr)
        for (int dc = 0; dc < 2; ++dc)
          if (r + dr < ext[0] && c + dc < ext[1]) blk.push_back(lattice.index(Coord{{r + dr, c + dc}}));
      out.push_back(std::move(blk));
    }
  return out;
}

double kappa_star(const PepsState& peps, const Partition& partition, std::size_t max_block) {
  if (partition.empty()) throw ArgumentError("kappa_star: empty partition");
  double worst = 0.0;
  for (const auto& region : partition) {
    const BlockedTensor blk = block(peps, region, max_block);
    const InjectivityReport report = injectivity_check({peps.lattice().coord(blk.sites.front()), blk.tensor});
    if (!report.injective)
      throw NotInjectiveError("block " + region_string(peps.lattice(), blk.sites) + " is not injective (sigma_min = " +
                                  std::to_string(report.sigma_min) + ")",
                              report.sigma_min);
    worst = std::max(worst, *report.kappa);
  }
  return worst;
}

LabeledState labeled_state(const PepsState& peps, double cutoff) {
  LabeledState out{build_state_vector(peps, cutoff), {}};
  for (SiteIndex s = 0; s < peps.num_sites(); ++s) out.axes.push_back({StateAxis::Kind::kPhysical, s, 0});
  return out;
}

LabeledState disentangle_site(const LabeledState& state, const PepsState& peps, SiteIndex site) {
  require_site(peps.lattice(), site);
  const auto it = std::find(state.axes.begin(), state.axes.end(), StateAxis{StateAxis::Kind::kPhysical, site, 0});
  if (it == state.axes.end())
    throw ArgumentError("disentangle_site: state has no physical axis for site " +
                        to_string(peps.lattice().coord(site)));
  const std::size_t axis = std::size_t(it - state.axes.begin());

  const SiteTensor t = peps.site_tensor(site);
  const InjectivityReport report = injectivity_check(t);
  if (!report.injective)
    throw NotInjectiveError("disentangle_site: tensor at " + to_string(t.site) + " is not injective", report.sigma_min);

  const Tensor inverse = pseudo_inverse(from_matrix(site_matrix(t.tensor)));  // V x d
  Tensor moved = contract(inverse, state.amplitudes, {{1, axis}});          // V, remaining axes

  const std::size_t rest = moved.rank() - 1;
  std::vector<std::size_t> perm;
  for (std::size_t k = 0; k < rest; ++k) perm.push_back(k + 1);
  perm.push_back(0);
  moved = moved.permute(perm);

  LabeledState out;
  Shape shape(moved.shape().begin(), moved.shape().end() - 1);
  for (std::size_t k = 0; k < state.axes.size(); ++k)
    if (k != axis) out.axes.push_back(state.axes[k]);
  for (const Leg& leg : peps.lattice().legs(site)) {
    shape.push_back(peps.bond_dim());
    out.axes.push_back({StateAxis::Kind::kVirtual, site, leg.edge});
  }
  out.amplitudes = moved.reshape(shape);
  const double norm = out.amplitudes.frobenius_norm();
  if (!(norm > 0.0)) throw NumericalError("disentangle_site: state vanished");
  out.amplitudes = out.amplitudes.scaled(1.0 / norm);
  return out;
}

Tensor pair_product_state(const LabeledState& state, const Lattice& lattice, std::size_t bond_dim) {
  std::vector<EdgeId> edges;
  for (const StateAxis& a : state.axes) {
    if (a.kind != StateAxis::Kind::kVirtual) throw ArgumentError("pair_product_state: physical axis present");
    if (a.edge >= lattice.edges().size()) throw BoundsError("pair_product_state: unknown edge");
    if (std::find(edges.begin(), edges.end(), a.edge) == edges.end()) edges.push_back(a.edge);
  }
  if (2 * edges.size() != state.axes.size()) throw ArgumentError("pair_product_state: unpaired virtual axes");

  Tensor product = Tensor::scalar(1.0);
  std::vector<std::size_t> perm(state.axes.size());
  std::vector<std::size_t> filled(edges.size(), 0);
  for (std::size_t e = 0; e < edges.size(); ++e) product = tensor_product(product, pair_tensor(bond_dim));
  for (std::size_t k = 0; k < state.axes.size(); ++k) {
    const std::size_t e = std::size_t(std::find(edges.begin(), edges.end(), state.axes[k].edge) - edges.begin());
    perm[k] = 2 * e + filled[e]++;
  }
  return product.permute(perm);
}

double fidelity(const Tensor& a, const Tensor& b) {
  const double na = std::norm(inner_product(a, a));
  const double nb = std::norm(inner_product(b, b));
  if (!(na > 0.0 && nb > 0.0)) throw NumericalError("fidelity: zero vector");
  return std::norm(inner_product(a, b)) / std::sqrt(na * nb);
}

}  // namespace patchpeps
