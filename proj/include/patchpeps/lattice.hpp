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

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace patchpeps {

using SiteIndex = std::size_t;
using EdgeId = std::size_t;

/// Lattice coordinate, one entry per axis.
struct Coord {
  std::vector<int> c;

  std::size_t size() const noexcept { return c.size(); }
  int operator[](std::size_t axis) const { return c[axis]; }
  auto operator<=>(const Coord&) const = default;
};

std::string to_string(const Coord& coord);

/// Nearest-neighbour pair; `lo` precedes `hi` in row-major order.
struct Edge {
  SiteIndex lo;
  SiteIndex hi;
  std::size_t axis;
};

/// One virtual leg of a site, in the global leg order.
struct Leg {
  EdgeId edge;
  SiteIndex neighbor;
  std::size_t axis;
  bool plus;  // neighbour sits at +1 along `axis`
};

/// Open-boundary hypercubic lattice. Sites are numbered in row-major
/// coordinate order; edges are listed site by site, axis by axis, towards
/// the +1 neighbour. Virtual legs of a site are ordered by axis, the -1
/// neighbour before the +1 neighbour, absent neighbours skipped.
class Lattice {
 public:
  explicit Lattice(std::vector<int> extents);

  std::size_t dimension() const noexcept { return extents_.size(); }
  const std::vector<int>& extents() const noexcept { return extents_; }
  std::size_t num_sites() const noexcept { return num_sites_; }

  bool contains(const Coord& coord) const;
  SiteIndex index(const Coord& coord) const;
  Coord coord(SiteIndex site) const;

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Leg>& legs(SiteIndex site) const { return legs_.at(site); }
  /// Position of `edge` among the virtual legs of `site`, if incident.
  std::optional<std::size_t> leg_position(SiteIndex site, EdgeId edge) const;

  /// Shortest-path distance on the lattice graph.
  std::size_t graph_distance(SiteIndex a, SiteIndex b) const;
  std::size_t diameter() const;

  /// Contraction routines handle 1D and 2D lattices only.
  void require_engine_dimension() const;

  bool operator==(const Lattice& other) const { return extents_ == other.extents_; }

 private:
  std::vector<int> extents_;
  std::size_t num_sites_ = 0;
  std::vector<std::size_t> strides_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Leg>> legs_;
};

}  // namespace patchpeps
