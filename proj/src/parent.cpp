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

#include "patchpeps/parent.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "patchpeps/errors.hpp"
#include "patchpeps/observable.hpp"
#include "patchpeps/rng.hpp"

namespace patchpeps {

namespace {

using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_chain(const Chain& chain) {
  if (chain.length() < 2) throw ArgumentError("chain needs at least two sites");
  for (const Tensor& t : chain.sites)
    if (t.rank() != 3) throw ArgumentError("chain site tensors must have legs (physical, left, right)");
  if (chain.sites.front().shape()[1] != 1 || chain.sites.back().shape()[2] != 1)
    throw ArgumentError("chain ends must have trivial outer legs");
}

struct WindowResult {
  std::optional<LocalTerm> term;  // empty when the window is not injective
  double sigma_min = 0.0;
};

WindowResult window_term(const Chain& chain, std::size_t first, std::size_t size) {
  const Matrix m = window_map(chain, first, size);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
  if (svd.info() != Eigen::Success) throw NumericalError("parent_terms: SVD failed");
  const auto& s = svd.singularValues();
  WindowResult out;
  out.sigma_min = m.cols() > m.rows() ? 0.0 : s(s.size() - 1);
  const double smax = s.size() ? s(0) : 0.0;
  if (!(smax > 0.0) || !(out.sigma_min > kInjectivityThreshold * smax)) return out;
  const Eigen::Index r = m.cols();
  const Matrix image = svd.matrixU().leftCols(r);
  const Matrix projector = Matrix::Identity(m.rows(), m.rows()) - image * image.adjoint();
  out.term = LocalTerm{first, size, from_matrix(projector), std::size_t(m.rows() - r)};
  return out;
}

ParentTerms terms_for_block(const Chain& chain, std::size_t block, std::optional<std::size_t>* failed,
                            double* failed_sigma) {
  ParentTerms out;
  out.block = std::min(block, chain.length());
  for (std::size_t first = 0; first + out.block <= chain.length(); ++first) {
    WindowResult w = window_term(chain, first, out.block);
    if (!w.term) {
      *failed = first;
      *failed_sigma = w.sigma_min;
      return out;
    }
    out.terms.push_back(std::move(*w.term));
  }
  return out;
}

// Two neighbouring terms must have exactly the image of their joint window
// as common kernel; otherwise the summed terms allow extra ground states.
bool intersection_holds(const Chain& chain, const ParentTerms& terms) {
  for (std::size_t k = 0; k + 1 < terms.terms.size(); ++k) {
    const LocalTerm& a = terms.terms[k];
    const LocalTerm& b = terms.terms[k + 1];
    const std::size_t first = a.left_site, size = a.size + 1;
    const Tensor head = Tensor::identity(chain.phys_dim(first));
    const Tensor tail = Tensor::identity(chain.phys_dim(first + size - 1));
    const Matrix h = to_matrix(kron(a.projector, tail)) + to_matrix(kron(head, b.projector));
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("parent_terms: eigensolver failed");
    const auto kernel = (es.eigenvalues().array() < 1e-8).count();
    const Matrix m = window_map(chain, first, size);
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    const auto rank = (s.array() > kInjectivityThreshold * s(0)).count();
    if (kernel != rank) return false;
  }
  return true;
}

}  // namespace

Chain chain_from_peps(const PepsState& mps) {
  if (mps.lattice().dimension() != 1) throw ArgumentError("parent Hamiltonians are built for 1D chains only");
  const std::size_t n = mps.num_sites();
  if (n < 2) throw ArgumentError("chain needs at least two sites");
  Chain chain;
  for (std::size_t s = 0; s < n; ++s) {
    const Tensor& t = mps.tensor(s);
    const std::size_t d = mps.phys_dim(), D = mps.bond_dim();
    if (s == 0)
      chain.sites.push_back(t.reshape({d, 1, D}));
    else if (s + 1 == n)
      chain.sites.push_back(t.reshape({d, D, 1}));
    else
      chain.sites.push_back(t);
  }
  return chain;
}

Chain prefix_chain(const Chain& chain, std::size_t t) {
  require_chain(chain);
  if (t < 2 || t > chain.length()) throw ArgumentError("prefix length must lie in [2, N]");
  Chain out;
  out.sites.assign(chain.sites.begin(), chain.sites.begin() + std::ptrdiff_t(t));
  Tensor& last = out.sites.back();
  const std::size_t d = last.shape()[0], l = last.shape()[1], r = last.shape()[2];
  last = last.permute({0, 2, 1}).reshape({d * r, l, 1});
  return out;
}

Tensor window_tensor(const Chain& chain, std::size_t first, std::size_t size) {
  if (size < 1 || first + size > chain.length()) throw BoundsError("window outside the chain");
  Tensor acc = chain.sites[first];
  for (std::size_t k = first + 1; k < first + size; ++k) {
    const Tensor& t = chain.sites[k];
    Tensor next = contract(acc, t, {{2, 1}});  // P, l, p, r
    const std::size_t p = next.shape()[0] * next.shape()[2];
    const std::size_t l = next.shape()[1], r = next.shape()[3];
    acc = next.permute({0, 2, 1, 3}).reshape({p, l, r});
  }
  return acc;
}

Matrix window_map(const Chain& chain, std::size_t first, std::size_t size) {
  const Tensor w = window_tensor(chain, first, size);
  const std::size_t rows[] = {0};
  const std::size_t cols[] = {1, 2};
  return to_matrix(w, rows, cols);
}

Tensor chain_state_vector(const Chain& chain, double cutoff) {
  require_chain(chain);
  double dim = 1.0;
  for (std::size_t s = 0; s < chain.length(); ++s) dim *= double(chain.phys_dim(s));
  if (dim > cutoff) throw SizeError("chain state needs " + std::to_string(dim) + " amplitudes", dim);
  const Tensor w = window_tensor(chain, 0, chain.length());
  return w.reshape({w.shape()[0]});
}

ParentTerms parent_terms(const Chain& chain, std::size_t block, bool auto_increase) {
  require_chain(chain);
  if (block < 2) throw ArgumentError("parent_terms: block must be at least 2");
  const std::size_t last_block = auto_increase && block == 2 ? 3 : block;
  for (std::size_t b = block;; ++b) {
    std::optional<std::size_t> failed;
    double sigma = 0.0;
    ParentTerms out = terms_for_block(chain, b, &failed, &sigma);
    const bool vacuous =
        !failed && std::any_of(out.terms.begin(), out.terms.end(), [](const LocalTerm& t) { return t.rank == 0; });
    const bool whole = out.block >= chain.length();
    const bool unique = !failed && !vacuous && (whole || intersection_holds(chain, out));
    if (unique) return out;
    if (b < last_block && !whole) continue;
    if (failed)
      throw NotInjectiveError("window of " + std::to_string(out.block) + " sites starting at site " +
                                  std::to_string(*failed) + " is not injective",
                              sigma);
    if (vacuous)
      out.warnings.push_back("some local terms vanish: the window image fills the physical space");
    else
      out.warnings.push_back("neighbouring terms share more than the window image: the ground space may be degenerate");
    return out;
  }
}

ParentTerms parent_terms(const PepsState& mps, std::size_t block, bool auto_increase) {
  return parent_terms(chain_from_peps(mps), block, auto_increase);
}

ChainHamiltonian::ChainHamiltonian(std::vector<std::size_t> site_dims, std::vector<LocalTerm> terms)
    : site_dims_(std::move(site_dims)), terms_(std::move(terms)) {
  for (std::size_t d : site_dims_) dim_ *= d;
  for (const LocalTerm& t : terms_) {
    if (t.size < 1 || t.left_site + t.size > site_dims_.size())
      throw ArgumentError("local term on sites " + std::to_string(t.left_site) + ".." +
                          std::to_string(t.left_site + t.size - 1) + " lies outside the chain");
    std::size_t w = 1;
    for (std::size_t k = t.left_site; k < t.left_site + t.size; ++k) w *= site_dims_[k];
    if (t.projector.rank() != 2 || t.projector.shape()[0] != w || t.projector.shape()[1] != w)
      throw DimensionError("local term at site " + std::to_string(t.left_site) + " has the wrong dimension");
    matrices_.push_back(to_matrix(t.projector));
  }
}

Eigen::VectorXcd ChainHamiltonian::apply(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(Eigen::Index(dim_));
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const LocalTerm& t = terms_[k];
    std::size_t left = 1, window = 1, right = 1;
    for (std::size_t s = 0; s < site_dims_.size(); ++s) {
      if (s < t.left_site)
        left *= site_dims_[s];
      else if (s < t.left_site + t.size)
        window *= site_dims_[s];
      else
        right *= site_dims_[s];
    }
    for (std::size_t l = 0; l < left; ++l) {
      const std::size_t offset = l * window * right;
      Eigen::Map<const RowMajor> in(v.data() + offset, Eigen::Index(window), Eigen::Index(right));
      Eigen::Map<RowMajor> acc(out.data() + offset, Eigen::Index(window), Eigen::Index(right));
      acc.noalias() += matrices_[k] * in;
    }
  }
  return out;
}

Matrix ChainHamiltonian::dense() const {
  Matrix h = Matrix::Zero(Eigen::Index(dim_), Eigen::Index(dim_));
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(Eigen::Index(dim_));
  for (std::size_t j = 0; j < dim_; ++j) {
    e(Eigen::Index(j)) = 1.0;
    h.col(Eigen::Index(j)) = apply(e);
    e(Eigen::Index(j)) = 0.0;
  }
  return h;
}

EigenPair lanczos_lowest(const ChainHamiltonian& h, const std::vector<Eigen::VectorXcd>& deflate, double tolerance,
                         std::size_t krylov_dim, std::size_t max_restarts) {
  const auto n = Eigen::Index(h.dim());
  auto project_out = [&](Eigen::VectorXcd& v, const std::vector<Eigen::VectorXcd>& basis) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= b * b.dot(v);
  };

  Rng rng(0x5eed);
  Eigen::VectorXcd start(n);
  for (Eigen::Index i = 0; i < n; ++i) start(i) = rng.complex_normal();
  project_out(start, deflate);
  if (!(start.norm() > 0.0)) throw NumericalError("lanczos: start vector lies in the deflated space");
  start.normalize();

  const std::size_t room = std::size_t(n) - std::min<std::size_t>(deflate.size(), std::size_t(n));
  const std::size_t m_max = std::max<std::size_t>(1, std::min(krylov_dim, room));
  EigenPair best;
  for (std::size_t restart = 0; restart < max_restarts; ++restart) {
    std::vector<Eigen::VectorXcd> basis{start};
    std::vector<double> alpha, beta;
    for (std::size_t j = 0; j < m_max; ++j) {
      Eigen::VectorXcd w = h.apply(basis[j]);
      alpha.push_back(basis[j].dot(w).real());
      project_out(w, deflate);
      project_out(w, basis);
      const double b = w.norm();
      if (j + 1 == m_max || b < 1e-12) break;
      beta.push_back(b);
      basis.push_back(w / b);
    }
    const auto m = Eigen::Index(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      t(i, i) = alpha[std::size_t(i)];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[std::size_t(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(t);
    if (small.info() != Eigen::Success) throw NumericalError("lanczos: tridiagonal eigensolver failed");
    Eigen::VectorXcd ritz = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index i = 0; i < m; ++i) ritz += basis[std::size_t(i)] * small.eigenvectors()(i, 0);
    project_out(ritz, deflate);
    ritz.normalize();
    const Eigen::VectorXcd hr = h.apply(ritz);
    const double value = ritz.dot(hr).real();
    const double residual = (hr - value * ritz).norm();
    best = {value, ritz, residual};
    if (residual < tolerance) return best;
    start = ritz;
  }
  throw NumericalError("lanczos: no convergence, residual " + std::to_string(best.residual));
}

GapReport assemble_and_gap(const std::vector<LocalTerm>& terms, const Chain& chain, const GapOptions& options) {
  require_chain(chain);
  std::vector<std::size_t> dims;
  double total = 1.0;
  for (std::size_t s = 0; s < chain.length(); ++s) {
    dims.push_back(chain.phys_dim(s));
    total *= double(dims.back());
  }
  if (total > options.iterative_cutoff)
    throw SizeError("chain Hilbert space of dimension " + std::to_string(total) + " exceeds the cutoff", total);

  const ChainHamiltonian h(dims, terms);
  GapReport out;
  out.chain_length = chain.length();
  Eigen::VectorXcd ground;
  if (h.dim() <= options.dense_cutoff) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.dense());
    if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
    out.ground_energy = solver.eigenvalues()(0);
    out.first_excited = h.dim() > 1 ? solver.eigenvalues()(1) : solver.eigenvalues()(0);
    ground = solver.eigenvectors().col(0);
    out.method = "dense";
  } else {
    const EigenPair e0 = lanczos_lowest(h, {}, options.residual_tolerance);
    const EigenPair e1 = lanczos_lowest(h, {e0.vector}, options.residual_tolerance);
    out.ground_energy = e0.value;
    out.first_excited = e1.value;
    ground = e0.vector;
    out.method = "lanczos";
  }
  out.gap = std::max(0.0, out.first_excited - out.ground_energy);

  const Tensor psi = chain_state_vector(chain, options.iterative_cutoff);
  Eigen::Map<const Eigen::VectorXcd> state(psi.data().data(), Eigen::Index(psi.size()));
  out.ground_fidelity = std::min(1.0, std::norm(ground.dot(state)) / state.squaredNorm());
  if (out.gap < 1e-9) out.warnings.push_back("degenerate ground space: gap below 1e-9");
  return out;
}

GapReport assemble_and_gap(const ParentTerms& terms, const Chain& chain, const GapOptions& options) {
  GapReport out = assemble_and_gap(terms.terms, chain, options);
  out.block = terms.block;
  out.warnings.insert(out.warnings.begin(), terms.warnings.begin(), terms.warnings.end());
  return out;
}

GapReport uniform_gap_scan(const Chain& chain, std::size_t max_n, const GapOptions& options) {
  require_chain(chain);
  if (max_n < 2 || max_n > chain.length())
    throw ArgumentError("max_n must lie in [2, " + std::to_string(chain.length()) + "]");
  GapReport last;
  std::vector<double> gaps;
  for (std::size_t t = 2; t <= max_n; ++t) {
    const Chain prefix = prefix_chain(chain, t);
    last = assemble_and_gap(parent_terms(prefix), prefix, options);
    gaps.push_back(last.gap);
  }
  last.prefix_gaps = gaps;
  last.uniform_min_gap = *std::min_element(gaps.begin(), gaps.end());
  if (*last.uniform_min_gap < 1e-9 &&
      std::find(last.warnings.begin(), last.warnings.end(), "degenerate ground space: gap below 1e-9") ==
          last.warnings.end())
    last.warnings.push_back("degenerate ground space: gap below 1e-9");
  last.warnings.push_back("finite prefix scan: numerical evidence for a uniform gap, not a proof");
  return last;
}

}  // namespace patchpeps
