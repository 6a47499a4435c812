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
#include <random>

#include "sparseres/field.hpp"
#include "sparseres/linalg.hpp"

namespace sparseres {
namespace {

const PrimeField kF{2147483629ull};

TEST(Primes, TestPrimesArePrime) {
  for (u64 p : kTestPrimes) EXPECT_TRUE(is_prime(p));
  EXPECT_FALSE(is_prime(2147483649ull));
  EXPECT_EQ(previous_prime(2147483647ull), 2147483629ull);
}

TEST(ExactRank, IdentityAndOuterProduct) {
  ModMatrix I(3, 3);
  for (int i = 0; i < 3; ++i) I(i, i) = 1;
  EXPECT_EQ(exact_rank(I, kF), 3);
  ModMatrix R(4, 4);
  u64 u[4] = {3, 5, 7, 11}, v[4] = {2, 0, 13, 17};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) R(i, j) = kF.mul(u[i], v[j]);
  EXPECT_EQ(exact_rank(R, kF), 1);
}

ModMatrix random_mod(int r, int c, int rank, std::mt19937_64& rng) {
  ModMatrix L(r, rank), Rm(rank, c), M(r, c);
  for (auto& x : L.a) x = kF.random(rng);
  for (auto& x : Rm.a) x = kF.random(rng);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      u64 s = 0;
      for (int k = 0; k < rank; ++k) s = kF.add(s, kF.mul(L(i, k), Rm(k, j)));
      M(i, j) = s;
    }
  return M;
}

TEST(ExactRank, PermutationAndTransposeInvariant) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    int rank = 1 + trial % 7;
    ModMatrix M = random_mod(10, 7, rank, rng);
    std::vector<int> pr(10), pc(7);
    std::iota(pr.begin(), pr.end(), 0);
    std::iota(pc.begin(), pc.end(), 0);
    std::shuffle(pr.begin(), pr.end(), rng);
    std::shuffle(pc.begin(), pc.end(), rng);
    ModMatrix P(10, 7), T(7, 10);
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 7; ++j) P(i, j) = M(pr[i], pc[j]), T(j, i) = M(i, j);
    int r = exact_rank(M, kF);
    EXPECT_EQ(r, std::min(rank, 7));
    EXPECT_EQ(exact_rank(P, kF), r);
    EXPECT_EQ(exact_rank(T, kF), r);
    EXPECT_EQ(static_cast<int>(gj_eliminate(M, kF).pivots.size()), r);
  }
}

TEST(GaussJordan, SmallCases) {
  MatrixXd A(2, 2);
  A << 2, 4, 1, 3;
  EXPECT_TRUE(gj_eliminate(A).rref.isApprox(MatrixXd::Identity(2, 2)));
  MatrixXd B(2, 2);
  B << 1, 2, 2, 4;
  MatrixXd expect(2, 2);
  expect << 1, 2, 0, 0;
  auto g = gj_eliminate(B);
  EXPECT_TRUE((g.rref - expect).norm() < 1e-14);
  EXPECT_EQ(g.pivots, std::vector<int>{0});
}

// M = P * RREF reconstruction: the pivot columns of M, applied to the RREF,
// reproduce M.
TEST(GaussJordan, RandomFullRowRankReconstruction) {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> N;
  for (int t = 0; t < 5; ++t) {
    MatrixXd M(6, 9);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 9; ++j) M(i, j) = N(rng);
    auto g = gj_eliminate(M);
    ASSERT_EQ(g.pivots.size(), 6u);
    MatrixXd P(6, 6);
    for (int k = 0; k < 6; ++k) P.col(k) = M.col(g.pivots[k]);
    EXPECT_LT((P * g.rref.topRows(6) - M).norm(), 1e-10 * M.norm());
    MatrixXd left(6, 6);
    for (int k = 0; k < 6; ++k) left.col(k) = g.rref.col(g.pivots[k]);
    EXPECT_TRUE(left.isIdentity(1e-12));
  }
}

TEST(Schur, UnivariateExample) {
  MatrixXd A11(1, 1), A12(1, 1), A21(1, 1), A22(1, 1);
  A11 << -2;
  A12 << 1;
  A21 << 0;
  A22 << 1;
  MatrixXd X = schur_complement(A11, A12, A21, A22);
  EXPECT_NEAR(X(0, 0), 2.0, 1e-15);
}

TEST(Schur, ZeroLowerRightReturnsA21) {
  MatrixXd A11 = MatrixXd::Random(3, 2), A12 = MatrixXd::Random(3, 3), A21 = MatrixXd::Random(2, 2);
  MatrixXd X = schur_complement(A11, A12, A21, MatrixXd::Zero(2, 3));
  EXPECT_EQ(X, A21);
}

TEST(Schur, SingularPivot) {
  MatrixXd one = MatrixXd::Ones(1, 1);
  try {
    schur_complement(one, MatrixXd::Zero(1, 1), one, one);
    FAIL();
  } catch (const SingularPivotError& e) {
    EXPECT_LT(e.rcond(), 1e-12);
  }
}

// det M = +-det(A12) det(X) for the block layout [[A11, A12], [A21, A22]].
TEST(Schur, DeterminantFactorization) {
  std::mt19937_64 rng(47);
  std::normal_distribution<double> N;
  for (int t = 0; t < 10; ++t) {
    MatrixXd M(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) M(i, j) = N(rng);
    const int r = 5, c = 3;  // A12 is 5 x 5, X is 3 x 3
    MatrixXd X = schur_complement(M, r, c);
    double lhs = std::abs(M.determinant());
    double rhs = std::abs(M.topRightCorner(r, 8 - c).determinant() * X.determinant());
    EXPECT_NEAR(lhs, rhs, 1e-6 * lhs);
  }
}

void expect_values(const VectorXcd& got, std::vector<std::complex<double>> want, double tol) {
  ASSERT_EQ(got.size(), static_cast<int>(want.size()));
  std::vector<bool> used(want.size(), false);
  for (int i = 0; i < got.size(); ++i) {
    int best = -1;
    for (std::size_t j = 0; j < want.size(); ++j)
      if (!used[j] && (best < 0 || std::abs(got(i) - want[j]) < std::abs(got(i) - want[best]))) best = j;
    used[best] = true;
    EXPECT_LT(std::abs(got(i) - want[best]), tol) << got(i);
  }
}

TEST(Eig, SmallMatrices) {
  MatrixXd D = MatrixXd::Zero(2, 2);
  D.diagonal() << 2, 3;
  expect_values(eig(D).values, {2.0, 3.0}, 1e-14);
  MatrixXd C(2, 2);
  C << 0, 1, -6, 5;
  expect_values(eig(C).values, {2.0, 3.0}, 1e-12);
  MatrixXd R(2, 2);
  R << 0, -1, 1, 0;
  expect_values(eig(R).values, {{0, 1}, {0, -1}}, 1e-14);
}

double worst_pair_residual(const MatrixXd& A, const EigResult& e) {
  MatrixXcd Ac = A.cast<std::complex<double>>();
  double worst = 0;
  for (int k = 0; k < A.rows(); ++k) {
    VectorXcd v = e.vectors.col(k);
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    worst = std::max(worst, (Ac * v - e.values(k) * v).norm() / A.norm());
  }
  return worst;
}

TEST(Eig, RandomPairsResidual) {
  std::mt19937_64 rng(53);
  std::normal_distribution<double> N;
  for (int t = 0; t < 20; ++t) {
    int n = 1 + t;
    MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = N(rng);
    EXPECT_LT(worst_pair_residual(A, eig(A)), 1e-10);
  }
}

TEST(Eig, HardCases) {
  // Jordan block, zero matrix, badly scaled, and a matrix with repeated eigenvalues.
  MatrixXd J = MatrixXd::Identity(5, 5) * 2;
  for (int i = 0; i < 4; ++i) J(i, i + 1) = 1;
  expect_values(eig(J).values, std::vector<std::complex<double>>(5, 2.0), 1e-2);
  EXPECT_LT(worst_pair_residual(J, eig(J)), 1e-8);
  MatrixXd Z = MatrixXd::Zero(4, 4);
  expect_values(eig(Z).values, std::vector<std::complex<double>>(4, 0.0), 1e-300);
  MatrixXd S(3, 3);
  S << 1, 1e8, 0, 1e-8, 1, 1e8, 0, 1e-8, 1;
  EXPECT_LT(worst_pair_residual(S, eig(S)), 1e-8);
  MatrixXd P = MatrixXd::Zero(6, 6);  // cyclic permutation, roots of unity
  for (int i = 0; i < 6; ++i) P(i, (i + 1) % 6) = 1;
  EXPECT_LT(worst_pair_residual(P, eig(P)), 1e-10);
}

TEST(Eig, NonFiniteInputRejected) {
  MatrixXd A = MatrixXd::Ones(2, 2);
  A(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(eig(A), PreconditionError);
}

TEST(Pep, LinearCase) {
  std::mt19937_64 rng(59);
  std::normal_distribution<double> N;
  MatrixXd M0(3, 3), M1(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M0(i, j) = N(rng), M1(i, j) = N(rng);
  auto [A, B] = pep_to_gep({M0, M1});
  VectorXcd want = eig(MatrixXd(-M1.inverse() * M0)).values;
  VectorXcd got = gep_eigenvalues(A, B);
  std::vector<std::complex<double>> w(want.data(), want.data() + want.size());
  expect_values(got, w, 1e-9);
}

TEST(Pep, ScalarQuadratic) {
  MatrixXd m0(1, 1), m1(1, 1), m2(1, 1);
  m0 << 6;
  m1 << -5;
  m2 << 1;
  auto [A, B] = pep_to_gep({m0, m1, m2});
  EXPECT_EQ(A.rows(), 2);
  expect_values(gep_eigenvalues(A, B), {2.0, 3.0}, 1e-12);
}

// Plant a root at x = 1: choose M0 = S - M1 - M2 with S singular.
TEST(Pep, PlantedRoot) {
  std::mt19937_64 rng(61);
  std::normal_distribution<double> N;
  MatrixXd M1(2, 2), M2(2, 2), S(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) M1(i, j) = N(rng), M2(i, j) = N(rng);
  S << 1, 2, 2, 4;
  MatrixXd M0 = S - M1 - M2;
  EXPECT_NEAR((M0 + M1 + M2).determinant(), 0.0, 1e-12);
  auto [A, B] = pep_to_gep({M0, M1, M2});
  VectorXcd ev = gep_eigenvalues(A, B);
  double best = 1e9;
  for (int i = 0; i < ev.size(); ++i) {
    best = std::min(best, std::abs(ev(i) - 1.0));
    // Every reported value makes det(M(x)) vanish (determinant sweep).
    std::complex<double> x = ev(i);
    Eigen::MatrixXcd Mx = M0.cast<std::complex<double>>() + x * M1.cast<std::complex<double>>() +
                          x * x * M2.cast<std::complex<double>>();
    EXPECT_LT(std::abs(Mx.determinant()), 1e-8 * (1 + std::norm(x)) * (1 + std::norm(x)));
  }
  EXPECT_LT(best, 1e-9);
}

}  // namespace
}  // namespace sparseres
