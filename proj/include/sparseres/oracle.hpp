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

// Brute-force root finding used to cross-check the solvers in tests:
// companion matrices for one variable and hidden-variable Sylvester
// resultants for two, chained once for three.

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "sparseres/errors.hpp"
#include "sparseres/poly.hpp"

namespace sparseres::oracle {

using CMatrix = Eigen::MatrixXcd;

struct NumPoly {
  int n = 0;
  std::map<Monomial, Complex> c;

  int degree() const {
    int d = -1;
    for (const auto& [m, v] : c) d = std::max(d, m.degree());
    return d;
  }
  int degree_in(int v) const {
    int d = -1;
    for (const auto& [m, x] : c) d = std::max(d, m.exps[v]);
    return d;
  }
  Complex eval(const std::vector<Complex>& x) const {
    Complex s = 0;
    for (const auto& [m, v] : c) s += v * m.eval(x);
    return s;
  }
  double scale(const std::vector<Complex>& x) const {
    double s = 1;
    for (const auto& [m, v] : c) s += std::abs(v * m.eval(x));
    return s;
  }
  Complex deriv(int v, const std::vector<Complex>& x) const {
    Complex s = 0;
    for (const auto& [m, a] : c) {
      if (m.exps[v] == 0) continue;
      Monomial d = m;
      d.exps[v] -= 1;
      s += a * static_cast<double>(m.exps[v]) * d.eval(x);
    }
    return s;
  }
};

inline NumPoly instantiate(const PolynomialTemplate& f, int n, const CoefficientAssignment& coeffs) {
  NumPoly p{n, {}};
  for (const auto& t : f.terms) p.c[t.mono] += coefficient_value(t.coeff, coeffs);
  return p;
}

struct OracleRoots {
  std::vector<std::vector<Complex>> points;
  std::vector<double> residuals;
  bool positive_dimensional = false;
};

// Roots of c[0] x^d + ... + c[d]. Leading zeros are stripped first.
inline std::vector<Complex> univariate_roots(std::vector<Complex> c) {
  auto first = std::find_if(c.begin(), c.end(), [](Complex v) { return v != 0.0; });
  if (first == c.end()) throw PreconditionError("zero polynomial");
  c.erase(c.begin(), first);
  const int d = static_cast<int>(c.size()) - 1;
  if (d == 0) return {};
  CMatrix C = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) C(0, j) = -c[j + 1] / c[0];
  for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<CMatrix> es(C, false);
  std::vector<Complex> r(es.eigenvalues().data(), es.eigenvalues().data() + d);
  return r;
}

inline std::vector<Complex> univariate_roots(const std::vector<double>& c) {
  return univariate_roots(std::vector<Complex>(c.begin(), c.end()));
}

namespace detail {

// Coefficients of p in variable v (index = power) after fixing the others.
inline std::vector<Complex> coeffs_in(const NumPoly& p, int v, const std::vector<Complex>& x, int deg) {
  std::vector<Complex> out(deg + 1, 0.0);
  for (const auto& [m, a] : p.c) {
    Complex s = a;
    for (int i = 0; i < p.n; ++i)
      if (i != v) s *= std::pow(x[i], m.exps[i]);
    out[m.exps[v]] += s;
  }
  return out;
}

inline Complex sylvester_det(const std::vector<Complex>& f, const std::vector<Complex>& g) {
  const int df = static_cast<int>(f.size()) - 1, dg = static_cast<int>(g.size()) - 1;
  const int N = df + dg;
  if (N == 0) return 1.0;
  CMatrix S = CMatrix::Zero(N, N);
  for (int i = 0; i < dg; ++i)
    for (int j = 0; j <= df; ++j) S(i, i + j) = f[df - j];
  for (int i = 0; i < df; ++i)
    for (int j = 0; j <= dg; ++j) S(dg + i, i + j) = g[dg - j];
  return S.partialPivLu().determinant();
}

}  // namespace detail

// Res_v(f, g) as a polynomial in the remaining variables. The determinant is
// sampled on a grid of roots of unity and recovered by an inverse DFT in
// every remaining variable.
inline NumPoly resultant(const NumPoly& f, const NumPoly& g, int v) {
  const int n = f.n;
  const int df = f.degree_in(v), dg = g.degree_in(v);
  if (df < 0 || dg < 0) throw PreconditionError("zero polynomial");
  const int total = f.degree() * g.degree();
  std::vector<int> bound(n, 0), size(n, 1);
  for (int w = 0; w < n; ++w) {
    if (w == v) continue;
    bound[w] = std::min(total, dg * std::max(0, f.degree_in(w)) + df * std::max(0, g.degree_in(w)));
    size[w] = bound[w] + 1;
  }
  int count = 1;
  for (int s : size) count *= s;
  std::vector<Complex> vals(count);
  std::vector<int> idx(n, 0);
  const double tau = 2 * std::numbers::pi;
  for (int k = 0; k < count; ++k) {
    int r = k;
    std::vector<Complex> x(n, 0.0);
    for (int w = 0; w < n; ++w) {
      idx[w] = r % size[w];
      r /= size[w];
      x[w] = std::polar(1.0, tau * idx[w] / size[w]);
    }
    vals[k] = detail::sylvester_det(detail::coeffs_in(f, v, x, df), detail::coeffs_in(g, v, x, dg));
  }
  // Inverse DFT: coefficient of prod x_w^{e_w} is mean of vals * conj(x)^e.
  NumPoly out{n, {}};
  for (int k = 0; k < count; ++k) {
    int r = k;
    std::vector<int> e(n, 0);
    for (int w = 0; w < n; ++w) {
      e[w] = r % size[w];
      r /= size[w];
    }
    int tdeg = 0;
    for (int w = 0; w < n; ++w) tdeg += e[w];
    if (tdeg > total) continue;
    Complex s = 0;
    for (int j = 0; j < count; ++j) {
      int q = j;
      double ang = 0;
      for (int w = 0; w < n; ++w) {
        ang -= tau * static_cast<double>(e[w]) * (q % size[w]) / size[w];
        q /= size[w];
      }
      s += vals[j] * std::polar(1.0, ang);
    }
    s /= static_cast<double>(count);
    out.c[Monomial(e)] = s;
  }
  double mx = 0;
  for (const auto& [m, a] : out.c) mx = std::max(mx, std::abs(a));
  std::erase_if(out.c, [&](const auto& kv) { return std::abs(kv.second) <= 1e-13 * mx; });
  return out;
}

inline double residual(const std::vector<NumPoly>& F, const std::vector<Complex>& x) {
  double worst = 0;
  for (const auto& f : F) worst = std::max(worst, std::abs(f.eval(x)) / f.scale(x));
  return worst;
}

// Newton's method on a square system; returns the polished point.
inline std::vector<Complex> newton_polish(const std::vector<NumPoly>& F, std::vector<Complex> x, int iters = 30) {
  const int n = static_cast<int>(x.size());
  for (int it = 0; it < iters; ++it) {
    CMatrix J(n, n);
    Eigen::VectorXcd r(n);
    for (int i = 0; i < n; ++i) {
      r(i) = F[i].eval(x);
      for (int j = 0; j < n; ++j) J(i, j) = F[i].deriv(j, x);
    }
    Eigen::VectorXcd dx = J.fullPivLu().solve(r);
    if (!dx.allFinite()) break;
    double nx = 0;
    for (int i = 0; i < n; ++i) {
      x[i] -= dx(i);
      nx = std::max(nx, std::abs(x[i]));
    }
    if (dx.cwiseAbs().maxCoeff() <= 1e-15 * (1 + nx)) break;
  }
  return x;
}

namespace detail {

inline void add_root(OracleRoots& out, const std::vector<NumPoly>& F, std::vector<Complex> x, double tol) {
  x = newton_polish(F, std::move(x));
  double res = residual(F, x);
  if (!(res <= tol)) return;
  for (const auto& p : out.points) {
    double d = 0, s = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
      d = std::max(d, std::abs(p[i] - x[i]));
      s = std::max(s, std::abs(x[i]));
    }
    if (d <= 1e-6 * s) return;
  }
  out.points.push_back(std::move(x));
  out.residuals.push_back(res);
}

// Roots of p after fixing every variable but v; empty when p vanishes or is
// constant there.
inline std::vector<Complex> roots_in(const NumPoly& p, int v, const std::vector<Complex>& x) {
  const int d = p.degree_in(v);
  if (d < 0) return {};
  auto c = coeffs_in(p, v, x, d);
  std::vector<Complex> desc(c.rbegin(), c.rend());
  double mx = 0;
  for (auto a : desc) mx = std::max(mx, std::abs(a));
  if (mx == 0) return {};
  for (auto& a : desc)
    if (std::abs(a) <= 1e-14 * mx) a = 0;
  return univariate_roots(desc);
}

inline std::vector<Complex> univariate_of(const NumPoly& p, int v) {
  std::vector<Complex> desc(p.degree_in(v) + 1, 0.0);
  for (const auto& [m, a] : p.c) desc[desc.size() - 1 - m.exps[v]] += a;
  return desc;
}

}  // namespace detail

// Common roots of f and g, two variables. The hidden variable is solved
// from the resultant, the other one back-substituted into f (or g).
inline OracleRoots sylvester_bivariate(const NumPoly& f, const NumPoly& g, int hide, double tol = 1e-8) {
  if (f.n != 2 || g.n != 2) throw DimensionError("bivariate polynomials expected");
  const int other = 1 - hide;
  OracleRoots out;
  if (f.degree_in(other) <= 0 && g.degree_in(other) <= 0)
    throw PreconditionError("neither polynomial involves the eliminated variable");
  NumPoly R = resultant(f, g, other);
  if (R.c.empty()) {
    out.positive_dimensional = true;
    return out;
  }
  for (Complex h : univariate_roots(detail::univariate_of(R, hide))) {
    std::vector<Complex> x(2, 0.0);
    x[hide] = h;
    auto ys = detail::roots_in(f, other, x);
    if (ys.empty()) ys = detail::roots_in(g, other, x);
    for (Complex y : ys) {
      x[other] = y;
      detail::add_root(out, {f, g}, x, tol);
    }
  }
  return out;
}

// Three polynomials in three variables: eliminate z twice, then y, and
// complete each x by the bivariate oracle on the remaining pair.
inline OracleRoots sylvester_cascade3(const std::vector<NumPoly>& F, double tol = 1e-8) {
  if (F.size() != 3 || F[0].n != 3) throw DimensionError("three trivariate polynomials expected");
  NumPoly R12 = resultant(F[0], F[1], 2), R13 = resultant(F[0], F[2], 2);
  NumPoly R = resultant(R12, R13, 1);
  OracleRoots out;
  if (R.c.empty()) {
    out.positive_dimensional = true;
    return out;
  }
  auto restrict2 = [](const NumPoly& p, Complex x0) {
    NumPoly q{2, {}};
    for (const auto& [m, a] : p.c) q.c[Monomial({m.exps[1], m.exps[2]})] += a * std::pow(x0, m.exps[0]);
    return q;
  };
  for (Complex x0 : univariate_roots(detail::univariate_of(R, 0))) {
    auto sub = sylvester_bivariate(restrict2(F[0], x0), restrict2(F[1], x0), 0, 1e-6);
    for (const auto& yz : sub.points) detail::add_root(out, F, {x0, yz[0], yz[1]}, tol);
  }
  return out;
}

// Dispatch on the shape of the system.
inline OracleRoots solve_system(const SystemTemplate& S, const CoefficientAssignment& coeffs, double tol = 1e-8) {
  std::vector<NumPoly> F;
  for (const auto& p : S.polys) F.push_back(instantiate(p, S.n_vars, coeffs));
  if (S.n_vars == 1 && S.m() == 1) {
    OracleRoots out;
    for (Complex r : univariate_roots(detail::univariate_of(F[0], 0))) detail::add_root(out, F, {r}, tol);
    return out;
  }
  if (S.n_vars == 2 && S.m() == 2) return sylvester_bivariate(F[0], F[1], 1, tol);
  if (S.n_vars == 3 && S.m() == 3) return sylvester_cascade3(F, tol);
  throw UnsupportedCaseError("oracle handles square systems in up to three variables");
}

}  // namespace sparseres::oracle
