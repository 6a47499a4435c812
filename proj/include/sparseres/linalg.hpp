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

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "sparseres/errors.hpp"

namespace sparseres {

using MatrixXd = Eigen::MatrixXd;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;

struct GjResult {
  MatrixXd rref;
  std::vector<int> pivots;
};

// Reduced row echelon form with partial pivoting; entries below
// tol * max|M| count as zero.
inline GjResult gj_eliminate(MatrixXd M, double tol = 1e-12) {
  GjResult out;
  const double scale = M.size() ? M.cwiseAbs().maxCoeff() : 0.0;
  const double eps = tol * (scale > 0 ? scale : 1.0);
  int row = 0;
  for (int c = 0; c < M.cols() && row < M.rows(); ++c) {
    Eigen::Index p;
    double best = M.col(c).tail(M.rows() - row).cwiseAbs().maxCoeff(&p);
    if (best <= eps) {
      M.col(c).tail(M.rows() - row).setZero();
      continue;
    }
    p += row;
    if (p != row) M.row(p).swap(M.row(row));
    M.row(row) /= M(row, c);
    for (int i = 0; i < M.rows(); ++i)
      if (i != row && M(i, c) != 0.0) M.row(i) -= M(i, c) * M.row(row);
    M(row, c) = 1.0;
    out.pivots.push_back(c);
    ++row;
  }
  out.rref = std::move(M);
  return out;
}

inline constexpr double kPivotRcond = 1e-12;

// A21 - A22 * A12^{-1} * A11, with A12 the square pivot block. Solves by LU
// rather than forming the inverse.
inline MatrixXd schur_complement(const MatrixXd& A11, const MatrixXd& A12, const MatrixXd& A21,
                                 const MatrixXd& A22, double rcond_min = kPivotRcond) {
  if (A12.rows() != A12.cols()) throw DimensionError("pivot block is not square");
  if (A11.rows() != A12.rows() || A21.cols() != A11.cols() || A22.cols() != A12.cols() ||
      A21.rows() != A22.rows())
    throw DimensionError("inconsistent block shapes");
  if (A22.size() == 0 || A22.isZero(0.0)) return A21;
  Eigen::PartialPivLU<MatrixXd> lu(A12);
  double rc = A12.size() ? lu.rcond() : 1.0;
  if (!(rc >= rcond_min)) throw SingularPivotError(rc);
  return A21 - A22 * lu.solve(A11);
}

// Convenience form on a full matrix split at (r, c): pivot block is the
// top-right r x (cols - c) part.
inline MatrixXd schur_complement(const MatrixXd& M, int r, int c) {
  return schur_complement(M.topLeftCorner(r, c), M.topRightCorner(r, M.cols() - c),
                          M.bottomLeftCorner(M.rows() - r, c),
                          M.bottomRightCorner(M.rows() - r, M.cols() - c));
}

struct EigResult {
  VectorXcd values;
  MatrixXcd vectors;  // unit-norm columns
};

namespace detail {

// Diagonal similarity by powers of two so rows and columns have comparable norms.
inline VectorXcd balance(MatrixXcd& A) {
  const int n = static_cast<int>(A.rows());
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  bool changed = true;
  for (int sweep = 0; changed && sweep < 100; ++sweep) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      double c = 0, r = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) c += std::abs(A(j, i)), r += std::abs(A(i, j));
      if (c == 0 || r == 0) continue;
      double f = 1, s = c + r;
      while (c < r / 2) c *= 2, r /= 2, f *= 2;
      while (c >= r * 2) c /= 2, r *= 2, f /= 2;
      if ((c + r) < 0.95 * s) {
        changed = true;
        d(i) *= f;
        A.row(i) /= f;
        A.col(i) *= f;
      }
    }
  }
  return d.cast<std::complex<double>>();
}

// Rotation [[c, s], [-conj(s), c]] sending (x, y) to (r, 0).
inline void givens(std::complex<double> x, std::complex<double> y, double& c,
                   std::complex<double>& s) {
  double ax = std::abs(x), ay = std::abs(y);
  if (ay == 0) {
    c = 1;
    s = 0;
    return;
  }
  if (ax == 0) {
    c = 0;
    s = std::conj(y) / ay;
    return;
  }
  double r = std::hypot(ax, ay);
  c = ax / r;
  s = (x / ax) * std::conj(y) / r;
}

}  // namespace detail

// Complex Schur form by single-shift QR on the Hessenberg form, then
// eigenvectors by back-substitution on the triangular factor.
inline EigResult eig(const MatrixXcd& input) {
  using C = std::complex<double>;
  if (input.rows() != input.cols()) throw DimensionError("eig needs a square matrix");
  const int n = static_cast<int>(input.rows());
  EigResult res;
  res.values.resize(n);
  res.vectors.resize(n, n);
  if (n == 0) return res;
  if (!input.allFinite()) throw PreconditionError("eig input has non-finite entries");

  MatrixXcd A = input;
  VectorXcd D = detail::balance(A);
  Eigen::HessenbergDecomposition<MatrixXcd> hd(A);
  MatrixXcd H = hd.matrixH();
  MatrixXcd Z = hd.matrixQ();
  const double eps = std::numeric_limits<double>::epsilon();
  const double hnorm = std::max(H.norm(), std::numeric_limits<double>::min());

  int iu = n - 1;
  int iter = 0, total = 0;
  while (iu > 0) {
    int il = iu;
    while (il > 0) {
      double s = std::abs(H(il - 1, il - 1)) + std::abs(H(il, il));
      if (s == 0) s = hnorm;
      if (std::abs(H(il, il - 1)) <= eps * s) {
        H(il, il - 1) = 0;
        break;
      }
      --il;
    }
    if (il == iu) {
      --iu;
      iter = 0;
      continue;
    }
    if (++total > 30 * n) throw NonConvergenceError(static_cast<std::size_t>(iu));
    ++iter;

    C shift;
    if (iter % 10 == 0) {
      double ex = std::abs(H(iu, iu - 1).real());
      if (iu >= 2) ex += std::abs(H(iu - 1, iu - 2).real());
      shift = H(iu, iu) + ex;
    } else {
      // Eigenvalue of the trailing 2x2 nearest the corner entry.
      C a = H(iu - 1, iu - 1), b = H(iu - 1, iu), c = H(iu, iu - 1), d = H(iu, iu);
      C tr = a + d, disc = std::sqrt((a - d) * (a - d) / 4.0 + b * c);
      C l1 = tr / 2.0 + disc, l2 = tr / 2.0 - disc;
      shift = std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
    }

    for (int k = il; k < iu; ++k) {
      C x = k == il ? H(k, k) - shift : H(k, k - 1);
      C y = k == il ? H(k + 1, k) : H(k + 1, k - 1);
      double c;
      C s;
      detail::givens(x, y, c, s);
      for (int j = std::max(il, k - 1); j < n; ++j) {
        C a = H(k, j), b = H(k + 1, j);
        H(k, j) = c * a + s * b;
        H(k + 1, j) = -std::conj(s) * a + c * b;
      }
      int top = std::min(k + 2, iu);
      for (int i = 0; i <= top; ++i) {
        C a = H(i, k), b = H(i, k + 1);
        H(i, k) = a * c + b * std::conj(s);
        H(i, k + 1) = -a * s + b * c;
      }
      for (int i = 0; i < n; ++i) {
        C a = Z(i, k), b = Z(i, k + 1);
        Z(i, k) = a * c + b * std::conj(s);
        Z(i, k + 1) = -a * s + b * c;
      }
      if (k > il) H(k + 1, k - 1) = 0;
    }
  }

  const double small = eps * hnorm;
  for (int k = 0; k < n; ++k) {
    res.values(k) = H(k, k);
    VectorXcd y = VectorXcd::Zero(n);
    y(k) = 1;
    for (int j = k - 1; j >= 0; --j) {
      C s = 0;
      for (int l = j + 1; l <= k; ++l) s += H(j, l) * y(l);
      C d = H(j, j) - H(k, k);
      if (std::abs(d) < small) d = small;
      y(j) = -s / d;
      double big = y.cwiseAbs().maxCoeff();
      if (big > 1e100) y /= big;
    }
    VectorXcd v = (Z * y).cwiseProduct(D);
    double nv = v.norm();
    res.vectors.col(k) = nv > 0 ? VectorXcd(v / nv) : v;
  }
  return res;
}

inline EigResult eig(const MatrixXd& A) { return eig(MatrixXcd(A.cast<std::complex<double>>())); }

// Companion linearization of sum_i x^i M_i: A = [0 I ...; -M0 ... -M_{l-1}],
// B = diag(I, ..., I, M_l), so that (A - x B) z = 0.
inline std::pair<MatrixXd, MatrixXd> pep_to_gep(const std::vector<MatrixXd>& M) {
  if (M.size() < 2) throw PreconditionError("polynomial eigenproblem needs degree >= 1");
  const int l = static_cast<int>(M.size()) - 1;
  const int d = static_cast<int>(M[0].rows());
  for (const auto& m : M)
    if (m.rows() != d || m.cols() != d) throw DimensionError("pencil blocks differ in shape");
  MatrixXd A = MatrixXd::Zero(l * d, l * d), B = MatrixXd::Identity(l * d, l * d);
  for (int i = 0; i + 1 < l; ++i) A.block(i * d, (i + 1) * d, d, d).setIdentity();
  for (int i = 0; i < l; ++i) A.block((l - 1) * d, i * d, d, d) = -M[i];
  B.bottomRightCorner(d, d) = M[l];
  return {A, B};
}

// Finite generalized eigenvalues of (A, B) by shift-invert around sigma.
inline VectorXcd gep_eigenvalues(const MatrixXd& A, const MatrixXd& B, double sigma = 0.3141592653589793) {
  Eigen::PartialPivLU<MatrixXd> lu(A - sigma * B);
  MatrixXd K = lu.solve(B);
  VectorXcd mu = eig(K).values;
  std::vector<std::complex<double>> out;
  const double tiny = 1e-12 * std::max(1.0, K.norm());
  for (int i = 0; i < mu.size(); ++i)
    if (std::abs(mu(i)) > tiny) out.push_back(sigma + 1.0 / mu(i));
  VectorXcd r(static_cast<int>(out.size()));
  for (std::size_t i = 0; i < out.size(); ++i) r(static_cast<int>(i)) = out[i];
  return r;
}

}  // namespace sparseres
