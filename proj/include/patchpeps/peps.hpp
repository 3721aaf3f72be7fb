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
#include <vector>

#include "patchpeps/lattice.hpp"
#include "patchpeps/network.hpp"
#include "patchpeps/tensor.hpp"

namespace patchpeps {

/// Site tensor with leg order [physical, virtual legs in lattice leg order].
struct SiteTensor {
  Coord site;
  Tensor tensor;

  std::size_t phys_dim() const { return tensor.shape().at(0); }
  std::size_t virtual_dim() const { return shape_volume(tensor.shape()) / phys_dim(); }
};

/// Open-boundary PEPS with uniform physical dimension d and bond dimension D.
/// Tensors are stored by site index (row-major coordinate order).
class PepsState {
 public:
  PepsState(Lattice lattice, std::size_t phys_dim, std::size_t bond_dim, std::vector<Tensor> tensors);

  const Lattice& lattice() const noexcept { return lattice_; }
  std::size_t phys_dim() const noexcept { return phys_dim_; }
  std::size_t bond_dim() const noexcept { return bond_dim_; }
  std::size_t num_sites() const noexcept { return tensors_.size(); }

  const Tensor& tensor(SiteIndex site) const { return tensors_.at(site); }
  const std::vector<Tensor>& tensors() const noexcept { return tensors_; }
  SiteTensor site_tensor(SiteIndex site) const { return {lattice_.coord(site), tensors_.at(site)}; }

  /// Copy with one tensor replaced; the new tensor must have the same shape.
  PepsState with_tensor(SiteIndex site, Tensor tensor) const;

 private:
  Lattice lattice_;
  std::size_t phys_dim_;
  std::size_t bond_dim_;
  std::vector<Tensor> tensors_;
};

/// Virtual legs count as injective when sigma_min > threshold * sigma_max.
inline constexpr double kInjectivityThreshold = 1e-8;

struct InjectivityReport {
  Coord site;
  bool injective = false;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  std::optional<double> kappa;
};

/// Physical index as rows, virtual legs as columns. sigma_min is taken over
/// all prod(bond dims) column directions, so more columns than rows means
/// sigma_min = 0.
InjectivityReport injectivity_check(const SiteTensor& t, double threshold = kInjectivityThreshold);

// Labels used by every network built from a PEPS. Edge e carries label e;
// physical legs get labels after the edges.
Label edge_label(EdgeId edge);
Label ket_phys_label(const Lattice& lattice, SiteIndex site);
Label bra_phys_label(const Lattice& lattice, SiteIndex site);

inline constexpr double kDefaultStateCutoff = 1048576.0;    // 2^20 amplitudes
inline constexpr double kDefaultNetworkBudget = 67108864.0;  // 2^26 entries

/// Unnormalised state vector: one axis of extent d per site, row-major site
/// order. Every edge carries the pair D^{-1/2} sum_i |ii>.
Tensor build_state_vector(const PepsState& peps, double cutoff = kDefaultStateCutoff);

/// Merged tensor of a connected region. Physical axis first (sites in
/// row-major order), then outward legs ordered by site then leg order.
struct BlockedTensor {
  std::vector<SiteIndex> sites;
  Tensor tensor;
  std::vector<EdgeId> outward_edges;
  std::vector<SiteIndex> outward_owner;  // region site carrying each outward leg
};

inline constexpr std::size_t kDefaultMaxBlock = 4;

BlockedTensor block(const PepsState& peps, std::span<const SiteIndex> region,
                    std::size_t max_block = kDefaultMaxBlock);

/// Rebuilds the state from a partition into blocks (oracle scale). Used to
/// verify that blocking leaves the physical state unchanged.
Tensor build_state_vector_from_blocks(const PepsState& peps, std::span<const BlockedTensor> blocks,
                                      double cutoff = kDefaultStateCutoff);

using Partition = std::vector<std::vector<SiteIndex>>;

/// Default blocking: single sites, or dominoes in 1D / 2x2 squares in 2D
/// when any single site fails injectivity. Edge blocks are clipped.
Partition default_partition(const PepsState& peps);

/// max kappa over the blocks of the partition; throws NotInjectiveError
/// naming the first non-injective block.
double kappa_star(const PepsState& peps, const Partition& partition, std::size_t max_block = kDefaultMaxBlock);

/// Axis descriptor for a state vector under disentangling.
struct StateAxis {
  enum class Kind { kPhysical, kVirtual } kind = Kind::kPhysical;
  SiteIndex site = 0;
  EdgeId edge = 0;  // for virtual axes

  friend bool operator==(const StateAxis&, const StateAxis&) = default;
};

struct LabeledState {
  Tensor amplitudes;
  std::vector<StateAxis> axes;
};

/// State vector with one physical axis per site, as produced by
/// build_state_vector.
LabeledState labeled_state(const PepsState& peps, double cutoff = kDefaultStateCutoff);

/// Applies the Moore-Penrose inverse of the site map to the site's physical
/// axis, replacing it by the site's virtual legs (appended at the end in leg
/// order), and normalises.
LabeledState disentangle_site(const LabeledState& state, const PepsState& peps, SiteIndex site);

/// prod_e |phi_e> laid out on the axes of `state`, which must all be virtual
/// and come in complete edge pairs.
Tensor pair_product_state(const LabeledState& state, const Lattice& lattice, std::size_t bond_dim);

/// |<a|b>|^2 / (<a|a><b|b>).
double fidelity(const Tensor& a, const Tensor& b);

}  // namespace patchpeps
