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

#include "patchpeps/tensor.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "patchpeps/errors.hpp"

namespace patchpeps {

namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::string shape_string(const Shape& shape) {
  std::string out = "(";
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(shape[k]);
  }
  return out + ")";
}

std::vector<std::size_t> row_major_strides(const Shape& shape) {
  std::vector<std::size_t> strides(shape.size(), 1);
  for (std::size_t k = shape.size(); k-- > 1;) strides[k - 1] = strides[k] * shape[k];
  return strides;
}

bool is_identity_permutation(std::span<const std::size_t> axes) {
  for (std::size_t k = 0; k < axes.size(); ++k)
    if (axes[k] != k) return false;
  return true;
}

}  // namespace

std::size_t shape_volume(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

Tensor::Tensor() : data_(1, Complex{0.0, 0.0}) {}

Tensor::Tensor(Shape shape) : shape_(std::move(shape)) {
  for (std::size_t e : shape_)
    if (e == 0) throw DimensionError("tensor extents must be positive, got " + shape_string(shape_));
  data_.assign(shape_volume(shape_), Complex{0.0, 0.0});
}

Tensor::Tensor(Shape shape, std::vector<Complex> data) : shape_(std::move(shape)), data_(std::move(data)) {
  for (std::size_t e : shape_)
    if (e == 0) throw DimensionError("tensor extents must be positive, got " + shape_string(shape_));
  if (data_.size() != shape_volume(shape_))
    throw DimensionError("data length " + std::to_string(data_.size()) + " does not match shape " +
                         shape_string(shape_));
}

Tensor Tensor::scalar(Complex value) { return Tensor(Shape{}, {value}); }

Tensor Tensor::vector(std::initializer_list<Complex> values) {
  return Tensor(Shape{values.size()}, std::vector<Complex>(values));
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major) {
  return Tensor(Shape{rows, cols}, std::move(row_major));
}

Tensor Tensor::identity(std::size_t n) {
  Tensor out(Shape{n, n});
  for (std::size_t i = 0; i < n; ++i) out[i * n + i] = 1.0;
  return out;
}

Tensor Tensor::diagonal(std::span<const Complex> values) {
  const std::size_t n = values.size();
  Tensor out(Shape{n, n});
  for (std::size_t i = 0; i < n; ++i) out[i * n + i] = values[i];
  return out;
}

std::size_t Tensor::extent(std::size_t axis) const {
  if (axis >= shape_.size())
    throw BoundsError("axis " + std::to_string(axis) + " out of range for rank " + std::to_string(rank()));
  return shape_[axis];
}

std::size_t Tensor::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size())
    throw BoundsError("index rank " + std::to_string(index.size()) + " does not match tensor rank " +
                      std::to_string(rank()));
  std::size_t flat = 0;
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (index[k] >= shape_[k]) throw BoundsError("index out of range on axis " + std::to_string(k));
    flat = flat * shape_[k] + index[k];
  }
  return flat;
}

const Complex& Tensor::at(std::span<const std::size_t> index) const { return data_[flat_index(index)]; }
Complex& Tensor::at(std::span<const std::size_t> index) { return data_[flat_index(index)]; }
const Complex& Tensor::at(std::initializer_list<std::size_t> index) const {
  return at(std::span<const std::size_t>(index.begin(), index.size()));
}
Complex& Tensor::at(std::initializer_list<std::size_t> index) {
  return at(std::span<const std::size_t>(index.begin(), index.size()));
}

Tensor Tensor::reshape(Shape shape) const {
  if (shape_volume(shape) != data_.size())
    throw DimensionError("cannot reshape " + shape_string(shape_) + " into " + shape_string(shape));
  return Tensor(std::move(shape), data_);
}

Tensor Tensor::permute(std::span<const std::size_t> axes) const {
  const std::size_t r = rank();
  if (axes.size() != r) throw BoundsError("permutation length does not match tensor rank");
  std::vector<bool> seen(r, false);
  for (std::size_t a : axes) {
    if (a >= r || seen[a]) throw BoundsError("invalid permutation of axes");
    seen[a] = true;
  }
  if (is_identity_permutation(axes)) return *this;

  Shape out_shape(r);
  for (std::size_t k = 0; k < r; ++k) out_shape[k] = shape_[axes[k]];
  const auto in_strides = row_major_strides(shape_);
  std::vector<std::size_t> step(r);
  for (std::size_t k = 0; k < r; ++k) step[k] = in_strides[axes[k]];

  std::vector<Complex> out(data_.size());
  std::vector<std::size_t> counter(r, 0);
  std::size_t src = 0;
  const std::size_t inner_extent = out_shape[r - 1];
  const std::size_t inner_step = step[r - 1];
  for (std::size_t dst = 0; dst < out.size();) {
    for (std::size_t i = 0; i < inner_extent; ++i) out[dst++] = data_[src + i * inner_step];
    // Advance the odometer over all but the innermost axis.
    std::size_t k = r - 1;
    while (k-- > 0) {
      src += step[k];
      if (++counter[k] < out_shape[k]) break;
      src -= step[k] * out_shape[k];
      counter[k] = 0;
    }
  }
  return Tensor(std::move(out_shape), std::move(out));
}

Tensor Tensor::permute(std::initializer_list<std::size_t> axes) const {
  return permute(std::span<const std::size_t>(axes.begin(), axes.size()));
}

Tensor Tensor::conj() const {
  Tensor out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

Tensor Tensor::scaled(Complex factor) const {
  Tensor out = *this;
  for (auto& z : out.data_) z *= factor;
  return out;
}

double Tensor::frobenius_norm() const {
  double acc = 0.0;
  for (const auto& z : data_) acc += std::norm(z);
  return std::sqrt(acc);
}

bool Tensor::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Tensor contract(const Tensor& a, const Tensor& b, std::span<const AxisPair> axis_pairs) {
  std::vector<bool> a_used(a.rank(), false), b_used(b.rank(), false);
  for (const auto& [ia, ib] : axis_pairs) {
    if (ia >= a.rank()) throw BoundsError("contract: axis " + std::to_string(ia) + " invalid for first tensor");
    if (ib >= b.rank()) throw BoundsError("contract: axis " + std::to_string(ib) + " invalid for second tensor");
    if (a_used[ia] || b_used[ib]) throw BoundsError("contract: axis paired twice");
    a_used[ia] = b_used[ib] = true;
    if (a.shape()[ia] != b.shape()[ib])
      throw DimensionError("contract: extent mismatch between axis " + std::to_string(ia) + " (extent " +
                           std::to_string(a.shape()[ia]) + ") of first tensor and axis " + std::to_string(ib) +
                           " (extent " + std::to_string(b.shape()[ib]) + ") of second tensor");
  }

  std::vector<std::size_t> a_perm, b_perm;
  Shape out_shape;
  std::size_t rows = 1, cols = 1, inner = 1;
  for (std::size_t k = 0; k < a.rank(); ++k)
    if (!a_used[k]) {
      a_perm.push_back(k);
      out_shape.push_back(a.shape()[k]);
      rows *= a.shape()[k];
    }
  for (const auto& [ia, ib] : axis_pairs) {
    a_perm.push_back(ia);
    b_perm.push_back(ib);
    inner *= a.shape()[ia];
  }
  for (std::size_t k = 0; k < b.rank(); ++k)
    if (!b_used[k]) {
      b_perm.push_back(k);
      out_shape.push_back(b.shape()[k]);
      cols *= b.shape()[k];
    }

  const Tensor ap = a.permute(a_perm);
  const Tensor bp = b.permute(b_perm);
  Eigen::Map<const RowMajorMatrix> am(ap.data().data(), Eigen::Index(rows), Eigen::Index(inner));
  Eigen::Map<const RowMajorMatrix> bm(bp.data().data(), Eigen::Index(inner), Eigen::Index(cols));
  std::vector<Complex> out(rows * cols);
  Eigen::Map<RowMajorMatrix> cm(out.data(), Eigen::Index(rows), Eigen::Index(cols));
  cm.noalias() = am * bm;
  return Tensor(std::move(out_shape), std::move(out));
}

Tensor contract(const Tensor& a, const Tensor& b, std::initializer_list<AxisPair> axis_pairs) {
  return contract(a, b, std::span<const AxisPair>(axis_pairs.begin(), axis_pairs.size()));
}

Tensor tensor_product(const Tensor& a, const Tensor& b) { return contract(a, b, std::span<const AxisPair>{}); }

Tensor trace_axes(const Tensor& t, std::size_t axis_a, std::size_t axis_b) {
  if (axis_a >= t.rank() || axis_b >= t.rank() || axis_a == axis_b)
    throw BoundsError("trace_axes: invalid axis pair");
  if (t.shape()[axis_a] != t.shape()[axis_b]) throw DimensionError("trace_axes: extent mismatch");
  std::vector<std::size_t> perm;
  Shape out_shape;
  for (std::size_t k = 0; k < t.rank(); ++k)
    if (k != axis_a && k != axis_b) {
      perm.push_back(k);
      out_shape.push_back(t.shape()[k]);
    }
  perm.push_back(axis_a);
  perm.push_back(axis_b);
  const Tensor p = t.permute(perm);
  const std::size_t n = t.shape()[axis_a];
  const std::size_t outer = shape_volume(out_shape);
  std::vector<Complex> out(outer, Complex{0.0, 0.0});
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t i = 0; i < n; ++i) out[o] += p[o * n * n + i * n + i];
  return Tensor(std::move(out_shape), std::move(out));
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) throw DimensionError("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Complex inner_product(const Tensor& a, const Tensor& b) {
  if (a.size() != b.size()) throw DimensionError("inner_product: size mismatch");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

}  // namespace patchpeps
