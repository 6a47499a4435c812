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

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "sparseres/poly.hpp"

namespace sparseres {

using IntVec = std::vector<std::int64_t>;

// Half-space normal . x <= offset, or an equality when used as such.
struct Facet {
  IntVec normal;
  std::int64_t offset = 0;
  friend auto operator<=>(const Facet&, const Facet&) = default;
};

// Integer polytope kept in both representations. Facets live in the ambient
// space; for lower-dimensional polytopes the equalities pin the affine hull.
struct LatticePolytope {
  int n = 0;
  int dim = -1;
  std::vector<IntVec> vertices;
  std::vector<Facet> facets;
  std::vector<Facet> equalities;

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
    return a.n == b.n && a.vertices == b.vertices;
  }
};

// delta entries in {-d, 0, d}.
struct Displacement {
  std::vector<Rational> delta;

  static Displacement zero(int n) { return {std::vector<Rational>(n, Rational(0))}; }
  static Displacement from_signs(const std::vector<int>& signs, Rational d) {
    Displacement r;
    for (int s : signs) r.delta.push_back(Rational(s) * d);
    return r;
  }
};

namespace detail {

inline std::int64_t dot(const IntVec& a, const IntVec& b) {
  __int128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<__int128>(a[i]) * b[i];
  return static_cast<std::int64_t>(s);
}

// Determinant of a small integer matrix by Bareiss elimination.
inline __int128 det_int(std::vector<std::vector<__int128>> m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  __int128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline void normalize(IntVec& v, std::int64_t* off = nullptr) {
  std::int64_t g = off ? (*off < 0 ? -*off : *off) : 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  if (g > 1) {
    for (auto& x : v) x /= g;
    if (off) *off /= g;
  }
}

// Integer basis of {e : e . d = 0 for all rows d}, plus the pivot columns of
// the row space. Exact rational elimination on small matrices.
inline std::pair<std::vector<IntVec>, std::vector<int>> nullspace(const std::vector<IntVec>& rows, int n) {
  std::vector<std::vector<Rational>> a;
  for (const auto& r : rows) {
    std::vector<Rational> v;
    for (auto x : r) v.emplace_back(x);
    a.push_back(v);
  }
  auto sub = [](Rational x, Rational y) {
    return Rational(x.num * y.den - y.num * x.den, x.den * y.den);
  };
  std::vector<int> pivots;
  int row = 0;
  for (int c = 0; c < n && row < static_cast<int>(a.size()); ++c) {
    int p = row;
    while (p < static_cast<int>(a.size()) && a[p][c].is_zero()) ++p;
    if (p == static_cast<int>(a.size())) continue;
    std::swap(a[p], a[row]);
    Rational inv(a[row][c].den, a[row][c].num);
    for (auto& x : a[row]) x = x * inv;
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      if (i == row || a[i][c].is_zero()) continue;
      Rational f = a[i][c];
      for (int j = 0; j < n; ++j) a[i][j] = sub(a[i][j], f * a[row][j]);
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<IntVec> basis;
  for (int fcol = 0; fcol < n; ++fcol) {
    if (std::find(pivots.begin(), pivots.end(), fcol) != pivots.end()) continue;
    // e[fcol] = 1, e[pivot_i] = -a[i][fcol]; clear denominators.
    std::vector<Rational> e(n, Rational(0));
    e[fcol] = Rational(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) e[pivots[i]] = -a[i][fcol];
    std::int64_t l = 1;
    for (const auto& x : e) l = std::lcm(l, x.den);
    IntVec v(n);
    for (int j = 0; j < n; ++j) v[j] = e[j].num * (l / e[j].den);
    normalize(v);
    basis.push_back(v);
  }
  return {basis, pivots};
}

}  // namespace detail

inline LatticePolytope convex_hull(const std::vector<IntVec>& input) {
  if (input.empty()) throw PreconditionError("convex hull of an empty point set");
  std::set<IntVec> uniq(input.begin(), input.end());
  std::vector<IntVec> pts(uniq.begin(), uniq.end());
  LatticePolytope P;
  P.n = static_cast<int>(pts[0].size());
  for (const auto& p : pts)
    if (static_cast<int>(p.size()) != P.n) throw DimensionError("points of mixed dimension");

  std::vector<IntVec> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    IntVec d(P.n);
    for (int j = 0; j < P.n; ++j) d[j] = pts[i][j] - pts[0][j];
    diffs.push_back(d);
  }
  auto [eqs, piv] = detail::nullspace(diffs, P.n);
  for (auto& e : eqs) P.equalities.push_back({e, detail::dot(e, pts[0])});
  int d = static_cast<int>(piv.size());
  P.dim = d;
  if (d == 0) {
    P.vertices = pts;
    return P;
  }

  // Work in the pivot coordinates, which parametrize the affine hull.
  std::vector<IntVec> proj;
  for (const auto& p : pts) {
    IntVec q(d);
    for (int j = 0; j < d; ++j) q[j] = p[piv[j]];
    proj.push_back(q);
  }
  const int np = static_cast<int>(proj.size());
  std::set<Facet> found;
  std::vector<int> idx(d);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == d) {
      // Normal by cofactor expansion of the (d-1) x d difference matrix.
      IntVec a(d);
      bool nonzero = false;
      for (int c = 0; c < d; ++c) {
        std::vector<std::vector<__int128>> m;
        for (int r = 1; r < d; ++r) {
          std::vector<__int128> row;
          for (int j = 0; j < d; ++j)
            if (j != c) row.push_back(proj[idx[r]][j] - proj[idx[0]][j]);
          m.push_back(row);
        }
        __int128 v = detail::det_int(m);
        a[c] = static_cast<std::int64_t>((c % 2 ? -v : v));
        nonzero |= a[c] != 0;
      }
      if (!nonzero) return;
      detail::normalize(a);
      std::int64_t b = detail::dot(a, proj[idx[0]]);
      bool le = true, ge = true;
      for (const auto& q : proj) {
        std::int64_t v = detail::dot(a, q);
        le &= v <= b;
        ge &= v >= b;
      }
      if (!le && !ge) return;
      if (!le) {
        for (auto& x : a) x = -x;
        b = -b;
      }
      found.insert({a, b});
      return;
    }
    for (int i = start; i < np; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);

  std::vector<Facet> local(found.begin(), found.end());
  for (int i = 0; i < np; ++i) {
    std::vector<IntVec> tight;
    for (const auto& f : local)
      if (detail::dot(f.normal, proj[i]) == f.offset) tight.push_back(f.normal);
    if (tight.empty()) continue;
    auto [ns, tp] = detail::nullspace(tight, d);
    if (static_cast<int>(tp.size()) == d) P.vertices.push_back(pts[i]);
  }
  for (const auto& f : local) {
    IntVec full(P.n, 0);
    for (int j = 0; j < d; ++j) full[piv[j]] = f.normal[j];
    P.facets.push_back({full, f.offset});
  }
  return P;
}

inline LatticePolytope newton_polytope(const PolynomialTemplate& f) {
  std::vector<IntVec> pts;
  for (const auto& t : f.terms) pts.emplace_back(t.mono.exps.begin(), t.mono.exps.end());
  return convex_hull(pts);
}

inline LatticePolytope unit_simplex(int n) {
  if (n < 1) throw PreconditionError("unit simplex needs n >= 1");
  std::vector<IntVec> pts(1, IntVec(n, 0));
  for (int i = 0; i < n; ++i) {
    IntVec e(n, 0);
    e[i] = 1;
    pts.push_back(e);
  }
  return convex_hull(pts);
}

inline LatticePolytope minkowski_sum(const std::vector<LatticePolytope>& polys) {
  if (polys.empty()) throw PreconditionError("Minkowski sum of nothing");
  std::vector<IntVec> acc = polys[0].vertices;
  for (std::size_t k = 1; k < polys.size(); ++k) {
    if (polys[k].n != polys[0].n) throw DimensionError("Minkowski sum of mixed dimensions");
    std::vector<IntVec> next;
    for (const auto& a : acc)
      for (const auto& b : polys[k].vertices) {
        IntVec s(a.size());
        for (std::size_t j = 0; j < a.size(); ++j) s[j] = a[j] + b[j];
        next.push_back(s);
      }
    acc = convex_hull(next).vertices;
  }
  return convex_hull(acc);
}

// All z in Z^n with z - delta in Q, by exact tests on Q's facets.
inline std::vector<IntVec> lattice_points(const LatticePolytope& Q, const Displacement& shift) {
  const int n = Q.n;
  std::vector<Rational> delta = shift.delta;
  if (delta.empty()) delta.assign(n, Rational(0));
  if (static_cast<int>(delta.size()) != n) throw DimensionError("displacement length mismatch");
  std::int64_t D = 1;
  for (const auto& x : delta) D = std::lcm(D, x.den);
  IntVec dnum(n);  // delta = dnum / D
  for (int i = 0; i < n; ++i) dnum[i] = delta[i].num * (D / delta[i].den);

  IntVec lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    std::int64_t mn = Q.vertices[0][i], mx = mn;
    for (const auto& v : Q.vertices) mn = std::min(mn, v[i]), mx = std::max(mx, v[i]);
    // ceil((mn*D + dnum)/D), floor((mx*D + dnum)/D)
    auto fl = [](std::int64_t a, std::int64_t b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
    lo[i] = -fl(-(mn * D + dnum[i]), D);
    hi[i] = fl(mx * D + dnum[i], D);
  }
  auto value = [&](const Facet& f, const IntVec& z) {
    __int128 s = 0;
    for (int i = 0; i < n; ++i) s += static_cast<__int128>(f.normal[i]) * (z[i] * D - dnum[i]);
    return s - static_cast<__int128>(f.offset) * D;
  };
  std::vector<IntVec> out;
  IntVec z = lo;
  for (int i = 0; i < n; ++i)
    if (lo[i] > hi[i]) return out;
  for (;;) {
    bool in = true;
    for (const auto& e : Q.equalities)
      if (value(e, z) != 0) {
        in = false;
        break;
      }
    if (in)
      for (const auto& f : Q.facets)
        if (value(f, z) > 0) {
          in = false;
          break;
        }
    if (in) out.push_back(z);
    int i = n - 1;
    while (i >= 0 && z[i] == hi[i]) z[i] = lo[i], --i;
    if (i < 0) break;
    ++z[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::set<Monomial> to_monomials(const std::vector<IntVec>& pts) {
  std::set<Monomial> s;
  for (const auto& p : pts) s.insert(Monomial(std::vector<int>(p.begin(), p.end())));
  return s;
}

}  // namespace sparseres
