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
#include <span>

#include "patchpeps/peps.hpp"

namespace patchpeps {

/// D = 1 product state with the same unit vector on every site.
PepsState product_peps(const Lattice& lattice, std::span<const Complex> chi);

/// cos(theta/2)|0> + sin(theta/2)|1> on every site; theta = 0 gives |0>.
PepsState product_peps(const Lattice& lattice, std::size_t phys_dim, double theta = 0.0);

/// Per site: |0> (x) (D^{1/4} e_0) on every virtual leg, plus eta times a
/// complex Gaussian tensor. Entries are drawn site by site in row-major
/// order from one seeded stream. eta = 0 yields a normalised product state.
PepsState random_injective_peps(const Lattice& lattice, std::size_t bond_dim, std::size_t phys_dim, double eta,
                                std::uint64_t seed);

/// Spin-1 AKLT chain, d = 3 with basis (+1, 0, -1), D = 2. The end sites
/// carry the edge spin polarised so that the end maps are isometries.
PepsState aklt_chain(std::size_t length);

/// Chain whose bulk sites copy both virtual indices into the physical
/// index (d = D^2); end sites copy their single leg into the first factor.
PepsState identity_passthrough_chain(std::size_t length, std::size_t bond_dim);

}  // namespace patchpeps
