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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

#include "patchpeps/errors.hpp"
#include "patchpeps/generators.hpp"
#include "patchpeps/linalg.hpp"
#include "patchpeps/observable.hpp"
#include "patchpeps/oracle.hpp"
#include "patchpeps/transfer.hpp"
#include "test_support.hpp"

namespace patchpeps {
namespace {

constexpr std::size_t kLength = 64;

std::vector<double> sorted_moduli(const std::vector<Complex>& v) {
  std::vector<double> m;
  for (const auto& z : v) m.push_back(std::abs(z));
  std::sort(m.begin(), m.end());
  return m;
}

TEST(SiteTransfer, ProductSiteIsOne) {
  const Tensor t = Tensor(Shape{2, 1, 1}, {std::cos(0.4), Complex(0.0, std::sin(0.4))});
  const TransferOperator e = site_transfer_operator(t);
  ASSERT_EQ(e.matrix.shape(), (Shape{1, 1}));
  EXPECT_NEAR(std::abs(e.matrix[0] - 1.0), 0.0, 1e-15);
}

TEST(SiteTransfer, PassthroughSiteIsPairProjectorInKetBraGrouping) {
  // With (j, k) grouping on each side, a copy tensor gives
  // E = |I><I|, which is the identity once regrouped as (j1 j2),(k1 k2).
  const PepsState p = identity_passthrough_chain(4, 2);
  const TransferOperator e = site_transfer_operator(p.tensor(1));
  ASSERT_EQ(e.matrix.shape(), (Shape{4, 4}));
  for (std::size_t j1 = 0; j1 < 2; ++j1)
    for (std::size_t k1 = 0; k1 < 2; ++k1)
      for (std::size_t j2 = 0; j2 < 2; ++j2)
        for (std::size_t k2 = 0; k2 < 2; ++k2) {
          const double expected = (j1 == k1 && j2 == k2) ? 1.0 : 0.0;
          EXPECT_EQ(e.matrix.at({2 * j1 + k1, 2 * j2 + k2}), Complex(expected));
        }
  const Tensor regrouped = e.matrix.reshape({2, 2, 2, 2}).permute({0, 2, 1, 3}).reshape({4, 4});
  EXPECT_EQ(regrouped, Tensor::identity(4));
}

TEST(SiteTransfer, AkltSpectrum) {
  const PepsState p = aklt_chain(6);
  const SpectrumReport s = spectrum(site_transfer_operator(p.tensor(2)));
  ASSERT_EQ(s.eigenvalues.size(), 4u);
  const Complex top = s.eigenvalues[0];
  EXPECT_NEAR(std::abs(top.imag()), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s.eigenvalues[0] / top - 1.0), 0.0, 1e-12);
  for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(std::abs(s.eigenvalues[k] / top + 1.0 / 3.0), 0.0, 1e-12);
}

TEST(SiteTransfer, SwapConjugateSymmetry) {
  const PepsState p = random_injective_peps(Lattice({6}), 3, 2, 0.4, 5);
  const Tensor& m = site_transfer_operator(p.tensor(2)).matrix;
  const std::size_t d = 3;
  for (std::size_t j1 = 0; j1 < d; ++j1)
    for (std::size_t k1 = 0; k1 < d; ++k1)
      for (std::size_t j2 = 0; j2 < d; ++j2)
        for (std::size_t k2 = 0; k2 < d; ++k2)
          EXPECT_NEAR(std::abs(m.at({j1 * d + k1, j2 * d + k2}) - std::conj(m.at({k1 * d + j1, k2 * d + j2}))), 0.0,
                      1e-12);
}

TEST(SiteTransfer, RejectsWrongLegCount) {
  EXPECT_THROW(site_transfer_operator(Tensor(Shape{2, 2})), ArgumentError);
}

TEST(StripTransfer, WidthOneOnSingleRowIsSiteOperator) {
  const PepsState p = random_injective_peps(Lattice({1, 5}), 2, 2, 0.3, 4);
  const TransferOperator strip = strip_transfer_operator(p, 2, 1);
  const Tensor site = p.tensor(2).reshape({2, 2, 2});
  EXPECT_LE(max_abs_diff(strip.matrix, site_transfer_operator(site).matrix), 1e-15);
  EXPECT_EQ(strip.origin, TransferOperator::Origin::kStripColumn);
}

TEST(StripTransfer, ProductPepsColumnIsOne) {
  const PepsState p = product_peps(Lattice({3, 4}), 2, 0.2);
  const TransferOperator e = strip_transfer_operator(p, 1, 3);
  ASSERT_EQ(e.matrix.shape(), (Shape{1, 1}));
  EXPECT_NEAR(std::abs(e.matrix[0] - 1.0), 0.0, 1e-14);
}

TEST(StripTransfer, FourRowColumnHasPerronTop) {
  const PepsState p = random_injective_peps(Lattice({4, 5}), 2, 2, 0.1, 42);
  const TransferOperator e = strip_transfer_operator(p, 2, 4);
  EXPECT_EQ(e.matrix.shape(), (Shape{256, 256}));
  EXPECT_EQ(e.d_eff, 16u);
  const SpectrumReport s = spectrum(e);
  EXPECT_GT(s.lambda1.real(), 0.0);
  EXPECT_LE(std::abs(s.lambda1.imag()), 1e-10 * std::abs(s.lambda1));
  EXPECT_TRUE(s.unique_top);
}

TEST(StripTransfer, Validation) {
  const PepsState p = random_injective_peps(Lattice({5, 4}), 2, 2, 0.1, 1);
  EXPECT_THROW(strip_transfer_operator(p, 1, 5), SizeError);
  const PepsState q = random_injective_peps(Lattice({3, 4}), 2, 2, 0.1, 1);
  EXPECT_THROW(strip_transfer_operator(q, 1, 2), ArgumentError);
  EXPECT_THROW(strip_transfer_operator(q, 0, 3), ArgumentError);
}

TEST(DressedTransfer, IdentityAndZero) {
  const PepsState p = random_injective_peps(Lattice({5}), 2, 3, 0.3, 2);
  const Tensor& t = p.tensor(2);
  EXPECT_EQ(dressed_transfer(t, Tensor::identity(3)).matrix, site_transfer_operator(t).matrix);
  const Tensor zero = dressed_transfer(t, Tensor(Shape{3, 3})).matrix;
  EXPECT_EQ(testing::max_abs(zero), 0.0);
  EXPECT_THROW(dressed_transfer(t, Tensor::identity(2)), ArgumentError);
}

TEST(DressedTransfer, AkltSzIsTraceless) {
  const PepsState p = aklt_chain(5);
  const Tensor m = dressed_transfer(p.tensor(2), spin1_z()).matrix;
  Complex tr = 0.0;
  for (std::size_t i = 0; i < 4; ++i) tr += m.at({i, i});
  EXPECT_NEAR(std::abs(tr), 0.0, 1e-15);
}

TEST(Spectrum, OneByOne) {
  const SpectrumReport s = spectrum({Tensor::identity(1), 1, TransferOperator::Origin::kMpsSite});
  EXPECT_EQ(s.lambda1, Complex(1.0));
  EXPECT_EQ(s.ratio, 0.0);
  EXPECT_TRUE(s.unique_top);
}

TEST(Spectrum, AkltRatioAndDelta) {
  const SpectrumReport s = spectrum(site_transfer_operator(aklt_chain(4).tensor(1)));
  EXPECT_NEAR(s.ratio, 1.0 / 3.0, 1e-10);
  EXPECT_NEAR(s.delta_bound, std::log(3.0), 1e-10);
  EXPECT_TRUE(s.unique_top);
}

TEST(Spectrum, RandomInjectiveSitesHaveUniqueTop) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const PepsState p = random_injective_peps(Lattice({5}), 2, 2, 0.5, seed);
    EXPECT_TRUE(spectrum(site_transfer_operator(p.tensor(2))).unique_top) << "seed " << seed;
  }
}

TEST(Spectrum, DegenerateTopIsFlagged) {
  const SpectrumReport s = spectrum({Tensor::identity(4), 2, TransferOperator::Origin::kMpsSite});
  EXPECT_FALSE(s.unique_top);
  EXPECT_EQ(s.ratio, 1.0);
  EXPECT_EQ(s.delta_bound, 0.0);
}

TEST(Spectrum, GaugeSimilarityPreservesEigenvalues) {
  const PepsState p = random_injective_peps(Lattice({5}), 2, 2, 0.5, 9);
  const Tensor& t = p.tensor(2);
  const Tensor g = testing::random_tensor({2, 2}, 31);
  const Tensor gi = pseudo_inverse(g);
  // t'[i] = G^{-1} t[i] G.
  const Tensor left = contract(gi, t, {{1, 1}}).permute({1, 0, 2});
  const Tensor gauged = contract(left, g, {{2, 0}});
  const auto a = sorted_moduli(spectrum(site_transfer_operator(t)).eigenvalues);
  const auto b = sorted_moduli(spectrum(site_transfer_operator(gauged)).eigenvalues);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-8 * std::max(1.0, a.back()));
}

TEST(TransferCorrelation, IdentityDressingGivesOne) {
  const PepsState p = random_injective_peps(Lattice({5}), 2, 2, 0.4, 3);
  const TransferOperator e = site_transfer_operator(p.tensor(2));
  for (std::size_t len : {2u, 7u, 64u})
    for (std::size_t x = 0; x + 2 <= len; x += 3) EXPECT_NEAR(std::abs(transfer_correlation(e, e, e, x, len) - 1.0), 0.0, 1e-12);
}

TEST(TransferCorrelation, ProductStateTracelessDressingsVanish) {
  const Tensor t = Tensor(Shape{2, 1, 1}, {1.0, 0.0});
  const TransferOperator e = site_transfer_operator(t);
  const TransferOperator ex = dressed_transfer(t, pauli_x());
  EXPECT_NEAR(std::abs(transfer_correlation(e, ex, ex, 3, 10)), 0.0, 1e-12);
}

TEST(TransferCorrelation, AkltRatioAtLengthSixtyFour) {
  const PepsState chain = aklt_chain(4);
  const Tensor& t = chain.tensor(1);
  const TransferOperator e = site_transfer_operator(t);
  const TransferOperator ez = dressed_transfer(t, spin1_z());
  const Complex c2 = transfer_correlation(e, ez, ez, 2, kLength);
  const Complex c3 = transfer_correlation(e, ez, ez, 3, kLength);
  EXPECT_NEAR(std::real(c3 / c2), -1.0 / 3.0, 1e-8);
}

TEST(TransferCorrelation, MatchesExactOracleOnAklt) {
  // x counts the sites strictly between the two operators.
  const PepsState chain = aklt_chain(8);
  const Tensor& t = chain.tensor(3);
  const TransferOperator e = site_transfer_operator(t);
  const TransferOperator ez = dressed_transfer(t, spin1_z());
  const Observable a({Coord{{2}}}, spin1_z());
  for (int x = 0; x <= 3; ++x) {
    const Complex exact = exact_correlation(chain, a, Observable({Coord{{3 + x}}}, spin1_z())).joint;
    const Complex ring = transfer_correlation(e, ez, ez, std::size_t(x), kLength);
    EXPECT_LE(std::abs(ring - exact), 1e-8 * std::abs(exact)) << "x = " << x;
  }
}

TEST(TransferCorrelation, Validation) {
  const TransferOperator e = site_transfer_operator(aklt_chain(4).tensor(1));
  EXPECT_THROW(transfer_correlation(e, e, e, 9, 10), ArgumentError);
  const TransferOperator small{Tensor::identity(1), 1, TransferOperator::Origin::kMpsSite};
  EXPECT_THROW(transfer_correlation(e, small, e, 1, 10), ArgumentError);
}

TEST(ChainProduct, MultipliesInteriorOperators) {
  const PepsState p = random_injective_peps(Lattice({6}), 2, 2, 0.3, 8);
  const Tensor expected = matmul(site_transfer_operator(p.tensor(2)).matrix, site_transfer_operator(p.tensor(3)).matrix);
  EXPECT_LE(max_abs_diff(chain_transfer_product(p, 2, 3).matrix, expected), 1e-14);
}

TEST(DecayFit, ProductStateIsDegenerate) {
  const Tensor t = Tensor(Shape{2, 1, 1}, {1.0, 0.0});
  const TransferOperator e = site_transfer_operator(t);
  const TransferOperator ez = dressed_transfer(t, pauli_z());
  EXPECT_THROW(decay_fit(e, ez, ez, 1, 10, kLength), DegenerateFitError);
}

TEST(DecayFit, AkltRateIsLogThree) {
  const PepsState chain = aklt_chain(4);
  const Tensor& t = chain.tensor(1);
  const TransferOperator e = site_transfer_operator(t);
  const TransferOperator ez = dressed_transfer(t, spin1_z());
  const DecayFit f = decay_fit(e, ez, ez, 1, 20, kLength);
  EXPECT_NEAR(f.rate / std::log(3.0), 1.0, 0.02);
  EXPECT_GT(f.r_squared, 0.999);
}

TEST(DecayFit, PerturbedChainRateMatchesSpectrum) {
  // Site 1 is the first bulk tensor; its entries do not depend on N. The
  // fit window stays below L/2 so the wrap-around term stays negligible.
  const PepsState p = random_injective_peps(Lattice({12}), 2, 2, 0.1, 42);
  const Tensor& t = p.tensor(1);
  const TransferOperator e = site_transfer_operator(t);
  const double delta = spectrum(e).delta_bound;
  for (const Tensor& o : {pauli_x(), pauli_y()}) {
    const TransferOperator eo = dressed_transfer(t, o);
    const DecayFit f = decay_fit(e, eo, eo, 1, kLength / 2 - 1, kLength);
    EXPECT_GE(f.x_used.size(), 5u);
    EXPECT_NEAR(f.rate / delta, 1.0, 0.05);
  }
}

}  // namespace
}  // namespace patchpeps
