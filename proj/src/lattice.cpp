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

#include "patchpeps/lattice.hpp"

#include <cstdlib>

#include "patchpeps/errors.hpp"

namespace patchpeps {

std::string to_string(const Coord& coord) {
  std::string out = "(";
  for (std::size_t k = 0; k < coord.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(coord[k]);
  }
  return out + ")";
}

Lattice::Lattice(std::vector<int> extents) : extents_(std::move(extents)) {
  if (extents_.empty()) throw ArgumentError("lattice needs at least one axis");
  for (int e : extents_)
    if (e < 1) throw ArgumentError("lattice extents must be positive");

  const std::size_t dim = extents_.size();
  strides_.assign(dim, 1);
  for (std::size_t k = dim; k-- > 1;) strides_[k - 1] = strides_[k] * std::size_t(extents_[k]);
  num_sites_ = strides_[0] * std::size_t(extents_[0]);

  legs_.resize(num_sites_);
  for (SiteIndex s = 0; s < num_sites_; ++s) {
    const Coord c = coord(s);
    for (std::size_t axis = 0; axis < dim; ++axis)
      if (c[axis] + 1 < extents_[axis]) edges_.push_back({s, s + strides_[axis], axis});
  }
  // Leg lists in global leg order: per axis, the minus neighbour then the plus neighbour.
  std::vector<std::vector<std::vector<Leg>>> per_axis(num_sites_, std::vector<std::vector<Leg>>(dim));
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    per_axis[edge.lo][edge.axis].push_back({e, edge.hi, edge.axis, true});
    per_axis[edge.hi][edge.axis].insert(per_axis[edge.hi][edge.axis].begin(), {e, edge.lo, edge.axis, false});
  }
  for (SiteIndex s = 0; s < num_sites_; ++s)
    for (std::size_t axis = 0; axis < dim; ++axis)
      legs_[s].insert(legs_[s].end(), per_axis[s][axis].begin(), per_axis[s][axis].end());
}

bool Lattice::contains(const Coord& coord) const {
  if (coord.size() != extents_.size()) return false;
  for (std::size_t k = 0; k < coord.size(); ++k)
    if (coord[k] < 0 || coord[k] >= extents_[k]) return false;
  return true;
}

SiteIndex Lattice::index(const Coord& coord) const {
  if (!contains(coord)) throw BoundsError("site " + to_string(coord) + " is outside the lattice");
  SiteIndex s = 0;
  for (std::size_t k = 0; k < coord.size(); ++k) s += std::size_t(coord[k]) * strides_[k];
  return s;
}

Coord Lattice::coord(SiteIndex site) const {
  if (site >= num_sites_) throw BoundsError("site index " + std::to_string(site) + " out of range");
  Coord c;
  c.c.resize(extents_.size());
  for (std::size_t k = 0; k < extents_.size(); ++k) {
    c.c[k] = int(site / strides_[k]);
    site %= strides_[k];
  }
  return c;
}

std::optional<std::size_t> Lattice::leg_position(SiteIndex site, EdgeId edge) const {
  const auto& l = legs(site);
  for (std::size_t k = 0; k < l.size(); ++k)
    if (l[k].edge == edge) return k;
  return std::nullopt;
}

std::size_t Lattice::graph_distance(SiteIndex a, SiteIndex b) const {
  const Coord ca = coord(a), cb = coord(b);
  std::size_t d = 0;
  for (std::size_t k = 0; k < ca.size(); ++k) d += std::size_t(std::abs(ca[k] - cb[k]));
  return d;
}

std::size_t Lattice::diameter() const {
  std::size_t d = 0;
  for (int e : extents_) d += std::size_t(e - 1);
  return d;
}

void Lattice::require_engine_dimension() const {
  if (dimension() < 1 || dimension() > 2)
    throw ArgumentError("contraction engine supports 1D and 2D lattices only, got dimension " +
                        std::to_string(dimension()));
}

}  // namespace patchpeps
