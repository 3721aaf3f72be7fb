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

#include "patchpeps/generators.hpp"

#include <cmath>
#include <string>

#include "patchpeps/errors.hpp"
#include "patchpeps/rng.hpp"

namespace patchpeps {

PepsState product_peps(const Lattice& lattice, std::span<const Complex> chi) {
  if (chi.empty()) throw ArgumentError("product_peps: empty site vector");
  double norm = 0.0;
  for (Complex c : chi) norm += std::norm(c);
  if (std::abs(norm - 1.0) > 1e-12) throw ArgumentError("product_peps: site vector must be normalised");
  std::vector<Tensor> tensors;
  for (SiteIndex s = 0; s < lattice.num_sites(); ++s) {
    Shape shape{chi.size()};
    shape.insert(shape.end(), lattice.legs(s).size(), 1);
    tensors.emplace_back(shape, std::vector<Complex>(chi.begin(), chi.end()));
  }
  return PepsState(lattice, chi.size(), 1, std::move(tensors));
}

PepsState product_peps(const Lattice& lattice, std::size_t phys_dim, double theta) {
  if (phys_dim < 1) throw ArgumentError("product_peps: phys_dim must be positive");
  if (phys_dim == 1 && theta != 0.0) throw ArgumentError("product_peps: rotation needs phys_dim >= 2");
  std::vector<Complex> chi(phys_dim, 0.0);
  chi[0] = std::cos(theta / 2.0);
  if (phys_dim > 1) chi[1] = std::sin(theta / 2.0);
  return product_peps(lattice, chi);
}

PepsState random_injective_peps(const Lattice& lattice, std::size_t bond_dim, std::size_t phys_dim, double eta,
                                std::uint64_t seed) {
  if (bond_dim < 1 || phys_dim < 1) throw ArgumentError("random_injective_peps: dimensions must be positive");
  if (!(eta >= 0.0) || !std::isfinite(eta)) throw ArgumentError("random_injective_peps: eta must be >= 0");
  Rng rng(seed);
  const double leg_weight = std::pow(double(bond_dim), 0.25);
  std::vector<Tensor> tensors;
  for (SiteIndex s = 0; s < lattice.num_sites(); ++s) {
    const std::size_t legs = lattice.legs(s).size();
    Shape shape{phys_dim};
    shape.insert(shape.end(), legs, bond_dim);
    Tensor t(shape);
    // Flat index 0 is |0> with every virtual leg on e_0.
    t[0] = std::pow(leg_weight, double(legs));
    for (std::size_t k = 0; k < t.size(); ++k) t[k] += eta * rng.complex_normal();
    tensors.push_back(std::move(t));
  }
  return PepsState(lattice, phys_dim, bond_dim, std::move(tensors));
}

PepsState aklt_chain(std::size_t length) {
  if (length < 2) throw ArgumentError("aklt_chain: length must be at least 2, got " + std::to_string(length));
  const double a = std::sqrt(2.0 / 3.0);
  const double b = std::sqrt(1.0 / 3.0);
  // Bulk T[s, l, r] = A^s_{lr}.
  const Tensor bulk(Shape{3, 2, 2}, {0, a, 0, 0,  //
                                     -b, 0, 0, b,  //
                                     0, 0, -a, 0});
  const Tensor left(Shape{3, 2}, {0, 1, -1, 0, 0, 0});
  const Tensor right(Shape{3, 2}, {1, 0, 0, 1, 0, 0});
  std::vector<Tensor> tensors;
  for (std::size_t s = 0; s < length; ++s)
    tensors.push_back(s == 0 ? left : (s + 1 == length ? right : bulk));
  return PepsState(Lattice({int(length)}), 3, 2, std::move(tensors));
}

PepsState identity_passthrough_chain(std::size_t length, std::size_t bond_dim) {
  if (length < 2) throw ArgumentError("identity_passthrough_chain: length must be at least 2");
  if (bond_dim < 1) throw ArgumentError("identity_passthrough_chain: bond_dim must be positive");
  const std::size_t D = bond_dim, d = D * D;
  Tensor end(Shape{d, D});
  for (std::size_t l = 0; l < D; ++l) end.at({l * D, l}) = 1.0;
  Tensor bulk(Shape{d, D, D});
  for (std::size_t l = 0; l < D; ++l)
    for (std::size_t r = 0; r < D; ++r) bulk.at({l * D + r, l, r}) = 1.0;
  std::vector<Tensor> tensors;
  for (std::size_t s = 0; s < length; ++s) tensors.push_back(s == 0 || s + 1 == length ? end : bulk);
  return PepsState(Lattice({int(length)}), d, D, std::move(tensors));
}

}  // namespace patchpeps
