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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace patchpeps {

using Complex = std::complex<double>;
using Shape = std::vector<std::size_t>;
using AxisPair = std::pair<std::size_t, std::size_t>;

std::size_t shape_volume(const Shape& shape);

/// Dense complex multi-index array, row-major (last axis fastest).
///
/// A rank-0 tensor is a scalar holding exactly one entry.
class Tensor {
 public:
  /// Scalar zero.
  Tensor();
  /// Zero-filled tensor of the given extents. Every extent must be positive.
  explicit Tensor(Shape shape);
  Tensor(Shape shape, std::vector<Complex> data);

  static Tensor scalar(Complex value);
  static Tensor vector(std::initializer_list<Complex> values);
  static Tensor matrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major);
  static Tensor identity(std::size_t n);
  static Tensor diagonal(std::span<const Complex> values);

  std::size_t rank() const noexcept { return shape_.size(); }
  const Shape& shape() const noexcept { return shape_; }
  std::size_t extent(std::size_t axis) const;
  std::size_t size() const noexcept { return data_.size(); }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> mutable_data() noexcept { return data_; }

  const Complex& operator[](std::size_t flat) const { return data_[flat]; }
  Complex& operator[](std::size_t flat) { return data_[flat]; }

  const Complex& at(std::span<const std::size_t> index) const;
  Complex& at(std::span<const std::size_t> index);
  const Complex& at(std::initializer_list<std::size_t> index) const;
  Complex& at(std::initializer_list<std::size_t> index);

  /// Same data, new extents with equal volume.
  Tensor reshape(Shape shape) const;
  /// Result axis k is input axis `axes[k]`.
  Tensor permute(std::span<const std::size_t> axes) const;
  Tensor permute(std::initializer_list<std::size_t> axes) const;
  Tensor conj() const;
  Tensor scaled(Complex factor) const;

  double frobenius_norm() const;
  bool all_finite() const;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  std::size_t flat_index(std::span<const std::size_t> index) const;

  Shape shape_;
  std::vector<Complex> data_;
};

/// Sums over each (axis of a, axis of b) pair. The result carries the
/// uncontracted axes of `a` in order, then those of `b`.
Tensor contract(const Tensor& a, const Tensor& b, std::span<const AxisPair> axis_pairs);
Tensor contract(const Tensor& a, const Tensor& b, std::initializer_list<AxisPair> axis_pairs);

/// Outer product; the result shape is the concatenation of both shapes.
Tensor tensor_product(const Tensor& a, const Tensor& b);

/// Sum over the diagonal of two equal-extent axes of one tensor.
Tensor trace_axes(const Tensor& t, std::size_t axis_a, std::size_t axis_b);

/// Max entrywise |a - b|; shapes must agree.
double max_abs_diff(const Tensor& a, const Tensor& b);

/// <a|b> with a conjugated, over all entries.
Complex inner_product(const Tensor& a, const Tensor& b);

}  // namespace patchpeps
