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

#include "patchpeps/observable.hpp"

#include <algorithm>
#include <cmath>

#include "patchpeps/errors.hpp"
#include "patchpeps/linalg.hpp"

namespace patchpeps {

Observable::Observable(std::vector<Coord> sites, Tensor matrix, std::size_t max_support)
    : sites_(std::move(sites)), matrix_(std::move(matrix)) {
  if (sites_.empty()) throw ArgumentError("observable support is empty");
  if (sites_.size() > max_support)
    throw ArgumentError("observable support has " + std::to_string(sites_.size()) + " sites, limit is " +
                        std::to_string(max_support));
  for (std::size_t i = 0; i < sites_.size(); ++i)
    for (std::size_t j = i + 1; j < sites_.size(); ++j)
      if (sites_[i] == sites_[j]) throw ArgumentError("observable support lists " + to_string(sites_[i]) + " twice");
  if (matrix_.rank() != 2 || matrix_.shape()[0] != matrix_.shape()[1])
    throw DimensionError("observable matrix must be square");
  if (!matrix_.all_finite()) throw ArgumentError("observable matrix has non-finite entries");
  const double root = std::pow(double(matrix_.shape()[0]), 1.0 / double(sites_.size()));
  site_dim_ = std::size_t(std::llround(root));
  std::size_t check = 1;
  for (std::size_t k = 0; k < sites_.size(); ++k) check *= site_dim_;
  if (check != matrix_.shape()[0])
    throw DimensionError("observable dimension " + std::to_string(matrix_.shape()[0]) + " is not d^" +
                         std::to_string(sites_.size()));
  hermitian_ = is_hermitian(matrix_, 1e-12);
  op_norm_ = operator_norm(matrix_);
}

std::vector<SiteIndex> Observable::site_indices(const Lattice& lattice) const {
  std::vector<SiteIndex> out;
  for (const Coord& c : sites_) {
    if (!lattice.contains(c)) throw ArgumentError("observable site " + to_string(c) + " is outside the lattice");
    out.push_back(lattice.index(c));
  }
  return out;
}

bool Observable::is_identity() const { return matrix_ == Tensor::identity(dim()); }

Tensor pauli_x() { return Tensor::matrix(2, 2, {0, 1, 1, 0}); }
Tensor pauli_y() { return Tensor::matrix(2, 2, {0, Complex(0, -1), Complex(0, 1), 0}); }
Tensor pauli_z() { return Tensor::matrix(2, 2, {1, 0, 0, -1}); }

Tensor spin1_x() {
  const double r = 1.0 / std::sqrt(2.0);
  return Tensor::matrix(3, 3, {0, r, 0, r, 0, r, 0, r, 0});
}
Tensor spin1_y() {
  const Complex r(0, 1.0 / std::sqrt(2.0));
  return Tensor::matrix(3, 3, {0, -r, 0, r, 0, -r, 0, r, 0});
}
Tensor spin1_z() { return Tensor::matrix(3, 3, {1, 0, 0, 0, 0, 0, 0, 0, -1}); }

Tensor preset_matrix(const std::string& name, std::size_t dim) {
  Tensor m;
  if (name == "identity") return Tensor::identity(dim);
  if (name == "pauli-x")
    m = pauli_x();
  else if (name == "pauli-y")
    m = pauli_y();
  else if (name == "pauli-z")
    m = pauli_z();
  else if (name == "s_x")
    m = spin1_x();
  else if (name == "s_y")
    m = spin1_y();
  else if (name == "s_z")
    m = spin1_z();
  else
    throw ArgumentError("unknown observable preset '" + name + "'");
  if (m.shape()[0] != dim)
    throw ArgumentError("preset '" + name + "' has dimension " + std::to_string(m.shape()[0]) +
                        " but the state has phys_dim " + std::to_string(dim));
  return m;
}

Tensor kron(const Tensor& a, const Tensor& b) {
  if (a.rank() != 2 || b.rank() != 2) throw DimensionError("kron: expected matrices");
  const std::size_t ar = a.shape()[0], ac = a.shape()[1], br = b.shape()[0], bc = b.shape()[1];
  return tensor_product(a, b).permute({0, 2, 1, 3}).reshape({ar * br, ac * bc});
}

Observable kron(const Observable& a, const Observable& b) {
  std::vector<Coord> sites = a.sites();
  for (const Coord& c : b.sites()) {
    if (std::find(sites.begin(), sites.end(), c) != sites.end())
      throw ArgumentError("observable supports overlap at " + to_string(c));
    sites.push_back(c);
  }
  const std::size_t limit = std::max(kDefaultMaxSupport, sites.size());
  return Observable(std::move(sites), kron(a.matrix(), b.matrix()), limit);
}

}  // namespace patchpeps
