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

#include <string>
#include <vector>

#include "patchpeps/lattice.hpp"
#include "patchpeps/tensor.hpp"

namespace patchpeps {

inline constexpr std::size_t kDefaultMaxSupport = 4;

/// Operator on an ordered list of sites. The matrix acts on the tensor
/// product of the listed sites, first site most significant.
class Observable {
 public:
  Observable(std::vector<Coord> sites, Tensor matrix, std::size_t max_support = kDefaultMaxSupport);

  const std::vector<Coord>& sites() const noexcept { return sites_; }
  const Tensor& matrix() const noexcept { return matrix_; }
  std::size_t dim() const { return matrix_.shape()[0]; }
  /// Per-site dimension, the |X|-th root of dim().
  std::size_t site_dim() const noexcept { return site_dim_; }
  bool hermitian() const noexcept { return hermitian_; }
  double op_norm() const noexcept { return op_norm_; }

  /// Site indices on `lattice`; throws ArgumentError for sites outside it.
  std::vector<SiteIndex> site_indices(const Lattice& lattice) const;
  bool is_identity() const;

 private:
  std::vector<Coord> sites_;
  Tensor matrix_;
  std::size_t site_dim_ = 0;
  bool hermitian_ = false;
  double op_norm_ = 0.0;
};

/// Single-site matrices. Spin-1 matrices use the basis (+1, 0, -1).
Tensor pauli_x();
Tensor pauli_y();
Tensor pauli_z();
Tensor spin1_x();
Tensor spin1_y();
Tensor spin1_z();

/// Resolves a preset name (pauli-x/y/z, s_x/s_y/s_z, identity) to a matrix
/// of dimension `dim`.
Tensor preset_matrix(const std::string& name, std::size_t dim);

/// a on its sites followed by b on its sites; supports must be disjoint.
Observable kron(const Observable& a, const Observable& b);

/// Kronecker product of matrices, a more significant.
Tensor kron(const Tensor& a, const Tensor& b);

}  // namespace patchpeps
