// Copyright 2026 The sparseres Authors.
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

#include <algorithm>
#include <cmath>
#include <random>

#include "sparseres/library.hpp"
#include "sparseres/linalg.hpp"
#include "sparseres/oracle.hpp"

namespace sparseres::oracle {
namespace {

NumPoly bivariate(std::initializer_list<std::pair<std::vector<int>, double>> terms) {
  NumPoly p{2, {}};
  for (const auto& [e, c] : terms) p.c[Monomial(e)] += c;
  return p;
}

std::vector<Complex> sorted(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

TEST(Univariate, Factorable) {
  auto r = sorted(univariate_roots(std::vector<double>{1, -5, 6}));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(std::abs(r[0] - 2.0), 0, 1e-12);
  EXPECT_NEAR(std::abs(r[1] - 3.0), 0, 1e-12);
}

TEST(Univariate, ComplexPair) {
  auto r = sorted(univariate_roots(std::vector<double>{1, 0, 1}));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(std::abs(r[0] - Complex(0, -1)), 0, 1e-12);
  EXPECT_NEAR(std::abs(r[1] - Complex(0, 1)), 0, 1e-12);
}

TEST(Univariate, TripleRootCluster) {
  for (auto z : univariate_roots(std::vector<double>{1, -3, 3, -1})) EXPECT_NEAR(std::abs(z - 1.0), 0, 1e-4);
}

TEST(Univariate, LeadingZerosAndZeroPolynomial) {
  auto r = univariate_roots(std::vector<double>{0, 0, 1, -4});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(std::abs(r[0] - 4.0), 0, 1e-12);
  EXPECT_TRUE(univariate_roots(std::vector<double>{0, 3}).empty());
  EXPECT_THROW(univariate_roots(std::vector<double>{0, 0}), PreconditionError);
}

TEST(Univariate, RandomMonicAgainstProducts) {
  // Expand prod (x - z_i) and recover the z_i.
  std::mt19937_64 rng(2);
  std::normal_distribution<double> N;
  for (int k = 1; k <= 8; ++k) {
    std::vector<Complex> z(k), c = {1.0};
    for (auto& v : z) v = Complex(N(rng), N(rng));
    for (auto v : z) {
      std::vector<Complex> next(c.size() + 1, 0.0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i] += c[i];
        next[i + 1] -= v * c[i];
      }
      c = next;
    }
    auto r = univariate_roots(c);
    ASSERT_EQ(r.size(), z.size());
    for (auto v : z) {
      double best = 1e300;
      for (auto w : r) best = std::min(best, std::abs(v - w));
      EXPECT_LE(best, 1e-8);
    }
  }
}

TEST(Univariate, InHouseEigAgrees) {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> N;
  for (int k = 1; k <= 8; ++k) {
    std::vector<double> c(k + 1);
    c[0] = 1;
    for (int i = 1; i <= k; ++i) c[i] = N(rng);
    MatrixXd C = MatrixXd::Zero(k, k);
    for (int j = 0; j < k; ++j) C(0, j) = -c[j + 1];
    for (int i = 1; i < k; ++i) C(i, i - 1) = 1;
    EigResult e = eig(C);
    for (auto z : univariate_roots(c)) {
      double best = 1e300;
      for (int j = 0; j < e.values.size(); ++j) best = std::min(best, std::abs(e.values(j) - z));
      EXPECT_LE(best, 1e-8) << "degree " << k;
    }
  }
}

TEST(Resultant, LinearPairIsDeterminant) {
  // Res_y(a x + y - 1, x - y) = -(x - 1 + a x) up to sign; vanishes at x = 1/(1 + a).
  NumPoly f = bivariate({{{1, 0}, 2.0}, {{0, 1}, 1.0}, {{0, 0}, -1.0}});
  NumPoly g = bivariate({{{1, 0}, 1.0}, {{0, 1}, -1.0}});
  NumPoly R = resultant(f, g, 1);
  for (const auto& [m, c] : R.c) EXPECT_EQ(m.exps[1], 0);
  Complex at = R.eval({1.0 / 3.0, 0.0});
  EXPECT_NEAR(std::abs(at), 0, 1e-14);
  EXPECT_GT(std::abs(R.eval({1.0, 0.0})), 0.5);
}

TEST(Sylvester, CircleAndHyperbola) {
  NumPoly f = bivariate({{{2, 0}, 1.0}, {{0, 2}, 1.0}, {{0, 0}, -1.0}});
  NumPoly g = bivariate({{{1, 1}, 1.0}, {{0, 0}, -0.25}});
  OracleRoots r = sylvester_bivariate(f, g, 1);
  ASSERT_EQ(r.points.size(), 4u);
  const double t1 = (1 + std::sqrt(0.75)) / 2, t2 = (1 - std::sqrt(0.75)) / 2;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& p = r.points[i];
    EXPECT_NEAR(std::abs(p[0] * p[1] - 0.25), 0, 1e-10);
    double x2 = std::norm(p[0]);
    EXPECT_TRUE(std::abs(x2 - t1) < 1e-10 || std::abs(x2 - t2) < 1e-10);
    EXPECT_LE(r.residuals[i], 1e-8);
  }
  EXPECT_NEAR(std::abs(std::sqrt(t1) - 0.96593), 0, 1e-5);
  EXPECT_NEAR(std::abs(std::sqrt(t2) - 0.25882), 0, 1e-5);
}

TEST(Sylvester, LinearPoint) {
  OracleRoots r = sylvester_bivariate(bivariate({{{1, 0}, 1.0}, {{0, 0}, -1.0}}),
                                      bivariate({{{0, 1}, 1.0}, {{0, 0}, -2.0}}), 1);
  ASSERT_EQ(r.points.size(), 1u);
  EXPECT_NEAR(std::abs(r.points[0][0] - 1.0), 0, 1e-12);
  EXPECT_NEAR(std::abs(r.points[0][1] - 2.0), 0, 1e-12);
}

TEST(Sylvester, InconsistentPairHasNoRoots) {
  OracleRoots r = sylvester_bivariate(bivariate({{{1, 1}, 1.0}}), bivariate({{{1, 1}, 1.0}, {{0, 0}, -1.0}}), 1);
  EXPECT_TRUE(r.points.empty());
  EXPECT_FALSE(r.positive_dimensional);
}

TEST(Sylvester, CommonFactorIsPositiveDimensional) {
  NumPoly f = bivariate({{{1, 0}, 1.0}, {{0, 1}, -1.0}});
  NumPoly g = bivariate({{{2, 0}, 1.0}, {{1, 1}, -1.0}});  // x (x - y)
  OracleRoots r = sylvester_bivariate(f, g, 1);
  EXPECT_TRUE(r.positive_dimensional);
  EXPECT_TRUE(r.points.empty());
}

TEST(Sylvester, BezoutCountOnDenseRandom) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> N;
  for (auto [df, dg] : {std::pair{1, 2}, {2, 2}, {2, 3}, {3, 3}}) {
    for (int t = 0; t < 5; ++t) {
      NumPoly f{2, {}}, g{2, {}};
      for (int i = 0; i <= df; ++i)
        for (int j = 0; i + j <= df; ++j) f.c[Monomial({i, j})] = N(rng);
      for (int i = 0; i <= dg; ++i)
        for (int j = 0; i + j <= dg; ++j) g.c[Monomial({i, j})] = N(rng);
      OracleRoots r = sylvester_bivariate(f, g, 1);
      EXPECT_EQ(static_cast<int>(r.points.size()), df * dg);
      for (double res : r.residuals) EXPECT_LE(res, 1e-8);
    }
  }
}

TEST(Cascade, ThreeQuadricsHaveEightRoots) {
  SystemTemplate S = library_entry("three_quadrics").system();
  std::mt19937_64 rng(6);
  std::normal_distribution<double> N;
  for (int t = 0; t < 10; ++t) {
    CoefficientAssignment c;
    for (const auto& s : S.slots()) c[s] = N(rng);
    OracleRoots r = solve_system(S, c);
    EXPECT_EQ(r.points.size(), 8u);
    for (const auto& p : r.points) EXPECT_LE(normalized_residual(S, c, p), 1e-8);
  }
}

TEST(Dispatch, UnsupportedShape) {
  SystemTemplate S = parse_system(R"({"variables": ["x", "y"], "polynomials": ["a*x + b*y"]})");
  EXPECT_THROW(solve_system(S, {{"a", 1}, {"b", 1}}), UnsupportedCaseError);
}

}  // namespace
}  // namespace sparseres::oracle
