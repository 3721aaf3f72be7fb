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

#include <vector>

#include "patchpeps/peps.hpp"
#include "patchpeps/tensor.hpp"

namespace patchpeps {

/// Operator on the doubled virtual space. Index (j, k) with the ket index j
/// more significant than the bra index k; for strips the per-row pairs are
/// ordered by increasing row coordinate.
struct TransferOperator {
  Tensor matrix;
  std::size_t d_eff = 1;
  enum class Origin { kMpsSite, kStripColumn, kChainProduct } origin = Origin::kMpsSite;
};

/// E[(j1,k1),(j2,k2)] = sum_i t[i,j1,j2] conj(t[i,k1,k2]) for a tensor with
/// legs (physical, left, right).
TransferOperator site_transfer_operator(const Tensor& t);

/// Same with O between ket and bra: sum_{i,j} conj(t[i,k1,k2]) O[i,j] t[j,j1,j2].
TransferOperator dressed_transfer(const Tensor& t, const Tensor& o);

inline constexpr std::size_t kDefaultStripWidthCutoff = 4;

/// Column `column` of a 2D PEPS contracted over its vertical bonds. The
/// width must equal the number of rows; the column needs both horizontal
/// neighbours. A 1D lattice is treated as a single row.
TransferOperator strip_transfer_operator(const PepsState& peps, std::size_t column, std::size_t width,
                                         std::size_t width_cutoff = kDefaultStripWidthCutoff);

/// Ordered product E_first ... E_last of interior site operators of a chain.
TransferOperator chain_transfer_product(const PepsState& chain, SiteIndex first, SiteIndex last);

struct SpectrumReport {
  Complex lambda1;
  Complex lambda2;
  double ratio = 0.0;        // |lambda2 / lambda1|, 1 when the top is degenerate
  double delta_bound = 0.0;  // -ln ratio, +inf when ratio = 0
  bool unique_top = true;
  std::vector<Complex> eigenvalues;  // sorted by decreasing modulus
};

SpectrumReport spectrum(const TransferOperator& e);

/// tr(e_a e^x e_b e^{L-x-2}) / tr(e^L).
Complex transfer_correlation(const TransferOperator& e, const TransferOperator& e_a, const TransferOperator& e_b,
                             std::size_t x, std::size_t length);

/// tr(e_a e^{L-1}) / tr(e^L).
Complex transfer_expectation(const TransferOperator& e, const TransferOperator& e_a, std::size_t length);

struct DecayFit {
  double rate = 0.0;
  double r_squared = 0.0;
  std::vector<std::size_t> x_used;
  std::vector<double> connected;  // |connected correlator| at x_used
};

/// Least-squares fit of ln|connected correlator| against x over
/// [x_first, x_last]. Points at the round-off floor are skipped.
DecayFit decay_fit(const TransferOperator& e, const TransferOperator& e_a, const TransferOperator& e_b,
                   std::size_t x_first, std::size_t x_last, std::size_t length);

}  // namespace patchpeps
