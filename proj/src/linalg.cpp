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

#include "patchpeps/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "patchpeps/errors.hpp"

namespace patchpeps {

namespace {

void require_matrix(const Tensor& t, const char* what) {
  if (t.rank() != 2) throw DimensionError(std::string(what) + ": expected a matrix, got rank " + std::to_string(t.rank()));
}

}  // namespace

Matrix to_matrix(const Tensor& t, std::span<const std::size_t> row_axes, std::span<const std::size_t> col_axes) {
  if (row_axes.size() + col_axes.size() != t.rank())
    throw BoundsError("to_matrix: row and column axes must partition the tensor axes");
  std::vector<std::size_t> perm(row_axes.begin(), row_axes.end());
  perm.insert(perm.end(), col_axes.begin(), col_axes.end());
  const Tensor p = t.permute(perm);
  std::size_t rows = 1, cols = 1;
  for (std::size_t a : row_axes) rows *= t.shape()[a];
  for (std::size_t a : col_axes) cols *= t.shape()[a];
  Matrix m = Matrix::Zero(Eigen::Index(rows), Eigen::Index(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(Eigen::Index(i), Eigen::Index(j)) = p[i * cols + j];
  return m;
}

Matrix to_matrix(const Tensor& t) {
  require_matrix(t, "to_matrix");
  const std::size_t rows_axis[] = {0};
  const std::size_t cols_axis[] = {1};
  return to_matrix(t, rows_axis, cols_axis);
}

Tensor from_matrix(const Matrix& m) {
  const auto rows = std::size_t(m.rows()), cols = std::size_t(m.cols());
  std::vector<Complex> data(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) data[i * cols + j] = m(Eigen::Index(i), Eigen::Index(j));
  return Tensor(Shape{rows, cols}, std::move(data));
}

double default_rcond(std::size_t rows, std::size_t cols) {
  return double(std::max(rows, cols)) * std::numeric_limits<double>::epsilon();
}

SvdResult svd(const Tensor& t, std::span<const std::size_t> row_axes, std::span<const std::size_t> col_axes,
              std::optional<double> rcond) {
  const Matrix m = to_matrix(t, row_axes, col_axes);
  if (!m.allFinite()) throw NumericalError("svd: input contains non-finite entries");
  Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) throw NumericalError("svd: decomposition did not converge");

  SvdResult out;
  const auto& sv = solver.singularValues();
  out.s.assign(sv.data(), sv.data() + sv.size());
  out.u = from_matrix(solver.matrixU());
  out.v_dag = from_matrix(solver.matrixV().adjoint());
  if (!out.u.all_finite() || !out.v_dag.all_finite()) throw NumericalError("svd: non-finite factors");
  const double cutoff = rcond.value_or(default_rcond(std::size_t(m.rows()), std::size_t(m.cols())));
  const double smax = out.s.empty() ? 0.0 : out.s.front();
  out.rank = std::size_t(std::count_if(out.s.begin(), out.s.end(), [&](double x) { return x > cutoff * smax; }));
  return out;
}

SvdResult svd(const Tensor& matrix, std::optional<double> rcond) {
  require_matrix(matrix, "svd");
  const std::size_t rows_axis[] = {0};
  const std::size_t cols_axis[] = {1};
  return svd(matrix, rows_axis, cols_axis, rcond);
}

Tensor pseudo_inverse(const Tensor& matrix, std::optional<double> rcond) {
  require_matrix(matrix, "pseudo_inverse");
  if (rcond && *rcond < 0.0) throw ArgumentError("pseudo_inverse: rcond must be non-negative");
  const SvdResult f = svd(matrix);
  const double cutoff = rcond.value_or(default_rcond(matrix.shape()[0], matrix.shape()[1]));
  const double smax = f.s.empty() ? 0.0 : f.s.front();
  const Matrix u = to_matrix(f.u);
  const Matrix vd = to_matrix(f.v_dag);
  Eigen::VectorXd inv(Eigen::Index(f.s.size()));
  for (std::size_t k = 0; k < f.s.size(); ++k)
    inv(Eigen::Index(k)) = (f.s[k] >= cutoff * smax && f.s[k] > 0.0) ? 1.0 / f.s[k] : 0.0;
  const Matrix pinv = vd.adjoint() * inv.asDiagonal() * u.adjoint();
  return from_matrix(pinv);
}

double condition_number(const Tensor& matrix) {
  require_matrix(matrix, "condition_number");
  const SvdResult f = svd(matrix);
  const double smax = f.s.front();
  const double smin = f.s.back();
  if (f.rank < f.s.size() || smin <= 0.0)
    throw NotInjectiveError("condition_number: matrix is rank deficient (sigma_min = " + std::to_string(smin) + ")",
                            smin);
  return smax / smin;
}

double operator_norm(const Tensor& matrix) {
  require_matrix(matrix, "operator_norm");
  if (matrix.shape()[0] != matrix.shape()[1]) throw DimensionError("operator_norm: expected a square matrix");
  return svd(matrix).s.front();
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_matrix(a, "matmul");
  require_matrix(b, "matmul");
  return contract(a, b, {{1, 0}});
}

Tensor adjoint(const Tensor& matrix) {
  require_matrix(matrix, "adjoint");
  return matrix.permute({1, 0}).conj();
}

HermitianEigen hermitian_eigen(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("hermitian_eigen: expected a square matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian_eigen: eigensolver failed");
  HermitianEigen out;
  out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  out.vectors = solver.eigenvectors();
  return out;
}

bool is_hermitian(const Tensor& matrix, double tol) {
  if (matrix.rank() != 2 || matrix.shape()[0] != matrix.shape()[1]) return false;
  const std::size_t n = matrix.shape()[0];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (std::abs(matrix[i * n + j] - std::conj(matrix[j * n + i])) > tol) return false;
  return true;
}

}  // namespace patchpeps
