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

#include <optional>
#include <string>
#include <vector>

#include "patchpeps/linalg.hpp"
#include "patchpeps/peps.hpp"

namespace patchpeps {

/// Open chain; every site tensor has legs (physical, left, right), with
/// extent-1 virtual legs at the ends. Physical extents may vary by site.
struct Chain {
  std::vector<Tensor> sites;

  std::size_t length() const noexcept { return sites.size(); }
  std::size_t phys_dim(std::size_t site) const { return sites.at(site).shape()[0]; }
};

Chain chain_from_peps(const PepsState& mps);

/// First t sites; the right leg of site t-1 is merged into its physical
/// index (physical more significant), so the prefix has no dangling leg.
Chain prefix_chain(const Chain& chain, std::size_t t);

/// Sites [first, first + size) contracted into (physical, left, right).
Tensor window_tensor(const Chain& chain, std::size_t first, std::size_t size);
/// Window as a matrix: merged physical rows, (left, right) columns.
Matrix window_map(const Chain& chain, std::size_t first, std::size_t size);

/// Normalised-direction state vector of the whole chain (unnormalised).
Tensor chain_state_vector(const Chain& chain, double cutoff = kDefaultStateCutoff);

struct LocalTerm {
  std::size_t left_site = 0;
  std::size_t size = 2;
  Tensor projector;  // onto the complement of the window image
  std::size_t rank = 0;
};

struct ParentTerms {
  std::size_t block = 2;
  std::vector<LocalTerm> terms;
  std::vector<std::string> warnings;
};

/// One projector per window of `block` consecutive sites. When
/// `auto_increase` is set and block is 2, switches to 3 if any 2-window is
/// not injective or has a vanishing projector.
ParentTerms parent_terms(const Chain& chain, std::size_t block = 2, bool auto_increase = true);
ParentTerms parent_terms(const PepsState& mps, std::size_t block = 2, bool auto_increase = true);

struct GapOptions {
  std::size_t dense_cutoff = 1024;
  double iterative_cutoff = 1048576.0;  // 2^20
  double residual_tolerance = 1e-9;
};

struct GapReport {
  std::size_t chain_length = 0;
  double ground_energy = 0.0;
  double first_excited = 0.0;
  double gap = 0.0;
  double ground_fidelity = 0.0;
  std::string method;  // "dense" or "lanczos"
  std::size_t block = 2;
  std::optional<double> uniform_min_gap;
  std::vector<double> prefix_gaps;  // gap of H_t for t = 2 .. max_N
  std::vector<std::string> warnings;
};

/// E0, E1 of H = sum of the terms on `chain`, and the overlap of the ground
/// vector with the chain state.
GapReport assemble_and_gap(const std::vector<LocalTerm>& terms, const Chain& chain, const GapOptions& options = {});
GapReport assemble_and_gap(const ParentTerms& terms, const Chain& chain, const GapOptions& options = {});

/// Gaps of the prefix parent Hamiltonians H_t, t = 2 .. max_N. A finite
/// scan is evidence for a uniform gap, not a proof.
GapReport uniform_gap_scan(const Chain& chain, std::size_t max_n, const GapOptions& options = {});

/// Matrix-free Hermitian operator on a tensor-product space.
class ChainHamiltonian {
 public:
  ChainHamiltonian(std::vector<std::size_t> site_dims, std::vector<LocalTerm> terms);

  std::size_t dim() const noexcept { return dim_; }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  Matrix dense() const;

 private:
  std::vector<std::size_t> site_dims_;
  std::vector<LocalTerm> terms_;
  std::vector<Matrix> matrices_;
  std::size_t dim_ = 1;
};

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXcd vector;
  double residual = 0.0;
};

/// Lowest eigenpair of `h` orthogonal to `deflate`, by restarted Lanczos
/// with full reorthogonalisation.
EigenPair lanczos_lowest(const ChainHamiltonian& h, const std::vector<Eigen::VectorXcd>& deflate, double tolerance,
                         std::size_t krylov_dim = 40, std::size_t max_restarts = 500);

}  // namespace patchpeps
