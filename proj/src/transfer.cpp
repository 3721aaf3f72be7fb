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

#include "patchpeps/transfer.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "patchpeps/double_layer.hpp"
#include "patchpeps/errors.hpp"
#include "patchpeps/linalg.hpp"

namespace patchpeps {

namespace {

TransferOperator doubled_operator(const Tensor& ket, const Tensor& bra_source) {
  const std::size_t dl = ket.shape()[1], dr = ket.shape()[2];
  Tensor m = contract(ket, bra_source.conj(), {{0, 0}});  // j1, j2, k1, k2
  m = m.permute({0, 2, 1, 3}).reshape({dl * dl, dr * dr});
  return {std::move(m), dl, TransferOperator::Origin::kMpsSite};
}

void require_mps_site(const Tensor& t) {
  if (t.rank() != 3)
    throw ArgumentError("transfer operator needs a tensor with legs (physical, left, right), got rank " +
                        std::to_string(t.rank()));
}

Matrix square_matrix(const TransferOperator& e, const char* what) {
  if (e.matrix.rank() != 2 || e.matrix.shape()[0] != e.matrix.shape()[1])
    throw ArgumentError(std::string(what) + ": transfer operator must be square");
  return to_matrix(e.matrix);
}

Matrix power(Matrix base, std::size_t exponent) {
  Matrix result = Matrix::Identity(base.rows(), base.cols());
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

double spectral_radius(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> solver(m, false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

TransferOperator site_transfer_operator(const Tensor& t) {
  require_mps_site(t);
  return doubled_operator(t, t);
}

TransferOperator dressed_transfer(const Tensor& t, const Tensor& o) {
  require_mps_site(t);
  if (o.rank() != 2 || o.shape()[0] != t.shape()[0] || o.shape()[1] != t.shape()[0])
    throw ArgumentError("dressed_transfer: operator must be " + std::to_string(t.shape()[0]) + "x" +
                        std::to_string(t.shape()[0]));
  return doubled_operator(contract(o, t, {{1, 0}}), t);
}

TransferOperator strip_transfer_operator(const PepsState& peps, std::size_t column, std::size_t width,
                                         std::size_t width_cutoff) {
  const Lattice& lattice = peps.lattice();
  lattice.require_engine_dimension();
  if (width > width_cutoff)
    throw SizeError("strip width " + std::to_string(width) + " exceeds the cutoff " + std::to_string(width_cutoff),
                    std::pow(double(peps.bond_dim()), 4.0 * double(width)));
  const std::size_t rows = lattice.dimension() == 1 ? 1 : std::size_t(lattice.extents()[0]);
  const std::size_t cols = std::size_t(lattice.extents().back());
  if (width != rows)
    throw ArgumentError("strip width must equal the number of lattice rows (" + std::to_string(rows) + ")");
  if (column == 0 || column + 1 >= cols)
    throw ArgumentError("strip column must have neighbours on both sides");

  auto site_at = [&](std::size_t r) {
    return lattice.dimension() == 1 ? lattice.index(Coord{{int(column)}})
                                    : lattice.index(Coord{{int(r), int(column)}});
  };
  if (rows == 1) {
    TransferOperator out = site_transfer_operator(peps.tensor(site_at(0)));
    out.origin = TransferOperator::Origin::kStripColumn;
    return out;
  }

  std::vector<SiteIndex> sites;
  for (std::size_t r = 0; r < rows; ++r) sites.push_back(site_at(r));
  std::vector<LabeledTensor> nodes;
  std::vector<Label> left, right;
  for (SiteIndex s : sites) {
    LabeledTensor node;
    std::vector<bool> keep(lattice.legs(s).size(), true);
    node.tensor = doubled_site(peps.tensor(s), false, keep);
    for (const Leg& leg : lattice.legs(s)) {
      node.labels.push_back(edge_label(leg.edge));
      if (leg.axis == 1) (leg.plus ? right : left).push_back(edge_label(leg.edge));
    }
    nodes.push_back(std::move(node));
  }
  std::vector<Label> order = left;
  order.insert(order.end(), right.begin(), right.end());
  LabeledTensor m = arrange(contract_network(std::move(nodes), PlanKind::kGreedy, kDefaultNetworkBudget), order);
  std::size_t dim = 1;
  for (std::size_t r = 0; r < rows; ++r) dim *= peps.bond_dim() * peps.bond_dim();
  std::size_t d_eff = 1;
  for (std::size_t r = 0; r < rows; ++r) d_eff *= peps.bond_dim();
  return {m.tensor.reshape({dim, dim}), d_eff, TransferOperator::Origin::kStripColumn};
}

TransferOperator chain_transfer_product(const PepsState& chain, SiteIndex first, SiteIndex last) {
  if (chain.lattice().dimension() != 1) throw ArgumentError("chain_transfer_product expects a 1D lattice");
  if (first == 0 || last + 1 >= chain.num_sites() || first > last)
    throw ArgumentError("chain_transfer_product: sites must be interior and ordered");
  Matrix acc = to_matrix(site_transfer_operator(chain.tensor(first)).matrix);
  for (SiteIndex s = first + 1; s <= last; ++s) acc = acc * to_matrix(site_transfer_operator(chain.tensor(s)).matrix);
  return {from_matrix(acc), chain.bond_dim(), TransferOperator::Origin::kChainProduct};
}

SpectrumReport spectrum(const TransferOperator& e) {
  const Matrix m = square_matrix(e, "spectrum");
  if (!m.allFinite()) throw NumericalError("spectrum: matrix has non-finite entries");
  Eigen::ComplexEigenSolver<Matrix> solver(m, false);
  if (solver.info() != Eigen::Success) throw NumericalError("spectrum: eigensolver failed");

  SpectrumReport out;
  const auto& ev = solver.eigenvalues();
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::stable_sort(out.eigenvalues.begin(), out.eigenvalues.end(),
                   [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });
  out.lambda1 = out.eigenvalues.front();
  out.lambda2 = out.eigenvalues.size() > 1 ? out.eigenvalues[1] : Complex(0.0);
  const double m1 = std::abs(out.lambda1), m2 = std::abs(out.lambda2);
  out.unique_top = m1 - m2 > 1e-10 * m1;
  out.ratio = out.unique_top ? m2 / m1 : 1.0;
  out.delta_bound = out.ratio > 0.0 ? -std::log(out.ratio) : std::numeric_limits<double>::infinity();
  return out;
}

Complex transfer_correlation(const TransferOperator& e, const TransferOperator& e_a, const TransferOperator& e_b,
                             std::size_t x, std::size_t length) {
  Matrix m = square_matrix(e, "transfer_correlation");
  Matrix ma = square_matrix(e_a, "transfer_correlation");
  Matrix mb = square_matrix(e_b, "transfer_correlation");
  if (ma.rows() != m.rows() || mb.rows() != m.rows())
    throw ArgumentError("transfer_correlation: operators differ in dimension");
  if (length < 2 || x + 2 > length) throw ArgumentError("transfer_correlation: need 0 <= x <= L - 2");
  // Every trace holds L factors; rescaling each by the spectral radius
  // leaves the ratio unchanged and keeps powers finite.
  const double scale = spectral_radius(m);
  if (scale > 0.0) {
    m /= scale;
    ma /= scale;
    mb /= scale;
  }
  const Complex num = (ma * power(m, x) * mb * power(m, length - x - 2)).trace();
  const Complex den = power(m, length).trace();
  if (!(std::abs(den) > 0.0)) throw NumericalError("transfer_correlation: tr(e^L) vanishes");
  return num / den;
}

Complex transfer_expectation(const TransferOperator& e, const TransferOperator& e_a, std::size_t length) {
  Matrix m = square_matrix(e, "transfer_expectation");
  Matrix ma = square_matrix(e_a, "transfer_expectation");
  if (ma.rows() != m.rows()) throw ArgumentError("transfer_expectation: operators differ in dimension");
  if (length < 1) throw ArgumentError("transfer_expectation: length must be positive");
  const double scale = spectral_radius(m);
  if (scale > 0.0) {
    m /= scale;
    ma /= scale;
  }
  const Complex den = power(m, length).trace();
  if (!(std::abs(den) > 0.0)) throw NumericalError("transfer_expectation: tr(e^L) vanishes");
  return (ma * power(m, length - 1)).trace() / den;
}

DecayFit decay_fit(const TransferOperator& e, const TransferOperator& e_a, const TransferOperator& e_b,
                   std::size_t x_first, std::size_t x_last, std::size_t length) {
  if (x_first > x_last) throw ArgumentError("decay_fit: empty x range");
  if (length < 2 || x_last + 2 > length) throw ArgumentError("decay_fit: x range must end at or before L - 2");
  const Complex product = transfer_expectation(e, e_a, length) * transfer_expectation(e, e_b, length);

  DecayFit out;
  std::vector<double> xs, ys;
  for (std::size_t x = x_first; x <= x_last; ++x) {
    const Complex joint = transfer_correlation(e, e_a, e_b, x, length);
    const double c = std::abs(joint - product);
    // Below this level the difference is cancellation noise.
    const double floor = 1e-12 * std::max(std::abs(joint), std::abs(product));
    if (!(c > floor) || c == 0.0) continue;
    out.x_used.push_back(x);
    out.connected.push_back(c);
    xs.push_back(double(x));
    ys.push_back(std::log(c));
  }
  if (xs.size() < 2)
    throw DegenerateFitError("decay_fit: connected correlator vanishes at all but " + std::to_string(xs.size()) +
                             " distances");
  const double n = double(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  const double slope = sxy / sxx;
  out.rate = -slope;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double r = ys[k] - (my + slope * (xs[k] - mx));
    ss_res += r * r;
  }
  out.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return out;
}

}  // namespace patchpeps
