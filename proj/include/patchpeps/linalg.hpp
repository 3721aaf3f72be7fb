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

#include <Eigen/Core>
#include <optional>
#include <span>
#include <vector>

#include "patchpeps/tensor.hpp"

namespace patchpeps {

using Matrix = Eigen::MatrixXcd;

/// Matrixize `t`: the listed row axes (in order) index rows, the column axes
/// index columns. Together the two lists must cover every axis exactly once.
Matrix to_matrix(const Tensor& t, std::span<const std::size_t> row_axes, std::span<const std::size_t> col_axes);
/// Rank-2 tensor as a matrix.
Matrix to_matrix(const Tensor& t);
Tensor from_matrix(const Matrix& m);

/// Default singular-value cutoff relative to the largest singular value:
/// max(rows, cols) * machine epsilon.
double default_rcond(std::size_t rows, std::size_t cols);

struct SvdResult {
  Tensor u;               // rows x k
  std::vector<double> s;  // descending, k = min(rows, cols)
  Tensor v_dag;           // k x cols
  std::size_t rank = 0;   // singular values above rcond * s[0]
};

SvdResult svd(const Tensor& t, std::span<const std::size_t> row_axes, std::span<const std::size_t> col_axes,
              std::optional<double> rcond = std::nullopt);
SvdResult svd(const Tensor& matrix, std::optional<double> rcond = std::nullopt);

/// Moore-Penrose inverse; singular values below rcond * sigma_max become zero.
Tensor pseudo_inverse(const Tensor& matrix, std::optional<double> rcond = std::nullopt);

/// sigma_max / sigma_min over the min(rows, cols) singular values. Throws
/// NotInjectiveError when the matrix is rank deficient.
double condition_number(const Tensor& matrix);

/// Largest singular value of a square matrix.
double operator_norm(const Tensor& matrix);

Tensor matmul(const Tensor& a, const Tensor& b);
Tensor adjoint(const Tensor& matrix);

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
struct HermitianEigen {
  std::vector<double> values;
  Matrix vectors;  // columns
};
HermitianEigen hermitian_eigen(const Matrix& m);

bool is_hermitian(const Tensor& matrix, double tol);

}  // namespace patchpeps
