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
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sparseres/field.hpp"
#include "sparseres/lattice.hpp"
#include "sparseres/poly.hpp"

namespace sparseres {

// V1 keys B1 on T_{m+1}; V2 on x_k * T_{m+1}.
enum class Variant { kV1, kV2 };

inline std::string variant_name(Variant v) { return v == Variant::kV1 ? "v1" : "v2"; }
inline Variant parse_variant(const std::string& s) {
  if (s == "v1") return Variant::kV1;
  if (s == "v2") return Variant::kV2;
  throw ParseError("unknown variant '" + s + "'");
}

// Row x^mult * f_poly of the coefficient matrix.
struct RowId {
  int poly = 0;
  Monomial mult;
  friend auto operator<=>(const RowId&, const RowId&) = default;
  friend bool operator==(const RowId&, const RowId&) = default;
};

struct Cell {
  int row = 0;
  int col = 0;
  int poly = 0;
  int term = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Rows: upper block (multiples of f_1..f_m), then the lower block aligned
// with b1. Columns: b1 then b2.
struct MatrixLayout {
  std::vector<RowId> rows;
  std::vector<Monomial> cols;
  int n_upper = 0;
  int n_b1 = 0;
  std::vector<Cell> cells;

  int n_rows() const { return static_cast<int>(rows.size()); }
  int n_cols() const { return static_cast<int>(cols.size()); }
  int n_lower() const { return n_rows() - n_upper; }
  int n_b2() const { return n_cols() - n_b1; }
  friend bool operator==(const MatrixLayout&, const MatrixLayout&) = default;
};

// f_{m+1} = x_k - u0 appended; k is 0-based.
inline SystemTemplate augment(const SystemTemplate& F, int k) {
  if (k < 0 || k >= F.n_vars)
    throw PreconditionError("hidden variable index " + std::to_string(k) + " out of range");
  SystemTemplate Fa = F;
  PolynomialTemplate extra;
  extra.terms.push_back({Coefficient{"", Rational(1)}, Monomial::var(F.n_vars, k)});
  extra.terms.push_back({Coefficient{kHiddenSlot, Rational(-1)}, Monomial::one(F.n_vars)});
  Fa.polys.push_back(extra);
  Fa.root_count.reset();
  return Fa;
}

struct FavourableCandidate {
  int x_k = 0;
  Displacement delta;
  std::vector<int> subset;  // members of the sum; 0 is NP0, j >= 1 is f_j
  std::set<Monomial> B;
  std::vector<std::vector<Monomial>> T;  // T_1..T_{m+1}
  Variant variant = Variant::kV1;
  std::vector<Monomial> B1, B2;
  MatrixLayout layout;
  std::vector<RowId> deleted;  // rows dropped by the reductions so far

  int p() const {
    int s = 0;
    for (const auto& t : T) s += static_cast<int>(t.size());
    return s;
  }
  int eps() const { return static_cast<int>(B.size()); }
};

// Rows, columns and fill cells for multipliers T under a variant. Returns
// nothing when the lower rows do not fit the variant's partition.
inline std::optional<MatrixLayout> build_layout(const SystemTemplate& Fa,
                                                const std::vector<std::vector<Monomial>>& T,
                                                Variant variant, int x_k,
                                                const MonomialOrder& order) {
  const int m = Fa.m() - 1;
  MatrixLayout L;
  std::set<Monomial> B;
  for (int i = 0; i <= m; ++i)
    for (const auto& t : T[i])
      for (const auto& term : Fa.polys[i].terms) B.insert(term.mono * t);

  std::vector<Monomial> lower = T[m];
  order.sort_desc(lower);
  Monomial xk = Monomial::var(Fa.n_vars, x_k);
  std::vector<Monomial> b1;
  for (const auto& t : lower) b1.push_back(variant == Variant::kV1 ? t : t * xk);
  std::set<Monomial> b1set(b1.begin(), b1.end());
  for (const auto& b : b1)
    if (!B.count(b)) return std::nullopt;
  std::vector<Monomial> b2;
  for (const auto& b : B)
    if (!b1set.count(b)) b2.push_back(b);
  order.sort_desc(b2);

  L.cols = b1;
  L.cols.insert(L.cols.end(), b2.begin(), b2.end());
  L.n_b1 = static_cast<int>(b1.size());
  for (int i = 0; i < m; ++i) {
    std::vector<Monomial> ti = T[i];
    order.sort_desc(ti);
    for (const auto& t : ti) L.rows.push_back({i, t});
  }
  L.n_upper = static_cast<int>(L.rows.size());
  for (const auto& t : lower) L.rows.push_back({m, t});

  std::map<Monomial, int> col_of;
  for (int c = 0; c < L.n_cols(); ++c) col_of[L.cols[c]] = c;
  for (int r = 0; r < L.n_rows(); ++r) {
    const auto& row = L.rows[r];
    const auto& f = Fa.polys[row.poly];
    for (int j = 0; j < static_cast<int>(f.terms.size()); ++j)
      L.cells.push_back({r, col_of.at(f.terms[j].mono * row.mult), row.poly, j});
  }
  return L;
}

// Fills C(u0) over Z/p from field values of the slots.
inline ModMatrix fill_mod(const MatrixLayout& L, const SystemTemplate& Fa,
                          const std::map<std::string, u64>& vals, const PrimeField& F) {
  ModMatrix M(L.n_rows(), L.n_cols());
  for (const auto& c : L.cells)
    M(c.row, c.col) = F.add(M(c.row, c.col), coefficient_mod(Fa.polys[c.poly].terms[c.term].coeff, vals, F));
  return M;
}

inline ModMatrix submatrix(const ModMatrix& M, int r0, int r1, int c0, int c1) {
  ModMatrix S(r1 - r0, c1 - c0);
  for (int i = r0; i < r1; ++i)
    for (int j = c0; j < c1; ++j) S(i - r0, j - c0) = M(i, j);
  return S;
}

// Repeated randomized rank decisions over a list of primes.
class RankOracle {
 public:
  RankOracle(std::vector<u64> primes, int assignments, std::uint64_t seed)
      : primes_(std::move(primes)), assignments_(assignments), rng_(seed) {}
  RankOracle() : RankOracle({kTestPrimes.begin(), kTestPrimes.end()}, 2, 0x5eed) {}

  // Every trial must show full column rank of C(u0), and of the upper-right
  // block when check_a12 is set. Stops at the first failing trial.
  bool full_rank(const MatrixLayout& L, const SystemTemplate& Fa, bool check_a12 = true) {
    if (L.n_rows() < L.n_cols()) return false;
    if (check_a12 && L.n_upper < L.n_b2()) return false;
    auto slots = Fa.slots();
    for (u64 p : primes_) {
      PrimeField F{p};
      for (int a = 0; a < assignments_; ++a) {
        auto vals = random_field_assignment(slots, F, rng_);
        ModMatrix M = fill_mod(L, Fa, vals, F);
        if (check_a12 && exact_rank(submatrix(M, 0, L.n_upper, L.n_b1, L.n_cols()), F) != L.n_b2())
          return false;
        if (exact_rank(M, F) != L.n_cols()) return false;
      }
    }
    return true;
  }

  // Rank of the upper block [A11 A12] over the first prime.
  int upper_rank(const MatrixLayout& L, const SystemTemplate& Fa) {
    PrimeField F{primes_.front()};
    auto vals = random_field_assignment(Fa.slots(), F, rng_);
    return exact_rank(submatrix(fill_mod(L, Fa, vals, F), 0, L.n_upper, 0, L.n_cols()), F);
  }

  const std::vector<u64>& primes() const { return primes_; }

 private:
  std::vector<u64> primes_;
  int assignments_;
  std::mt19937_64 rng_;
};

// Lower-row structure required by the eigenvalue reduction: in V1 the u0
// entry of lower row j sits on column j; in V2 the x_k entry does.
inline bool check_lower_structure(const MatrixLayout& L, const SystemTemplate& Fa, Variant v) {
  if (L.n_lower() != L.n_b1) return false;
  for (const auto& c : L.cells) {
    if (c.row < L.n_upper) continue;
    int j = c.row - L.n_upper;
    bool hidden = Fa.polys[c.poly].terms[c.term].coeff.slot == kHiddenSlot;
    if ((v == Variant::kV1) == hidden && c.col != j) return false;
  }
  return true;
}

struct PartitionVerdict {
  bool ok = false;
  std::string reason;
  std::optional<MatrixLayout> layout;
};

inline bool all_nonempty(const std::vector<std::vector<Monomial>>& T) {
  for (const auto& t : T)
    if (t.empty()) return false;
  return true;
}

inline int total_rows(const std::vector<std::vector<Monomial>>& T) {
  int p = 0;
  for (const auto& t : T) p += static_cast<int>(t.size());
  return p;
}

// Block layout and the Schur-complement existence test for one state.
inline PartitionVerdict test_partition(const SystemTemplate& Fa,
                                       const std::vector<std::vector<Monomial>>& T, Variant v,
                                       int x_k, const MonomialOrder& order, RankOracle& oracle) {
  PartitionVerdict out;
  if (!all_nonempty(T)) {
    out.reason = "empty multiplier set";
    return out;
  }
  out.layout = build_layout(Fa, T, v, x_k, order);
  if (!out.layout) {
    out.reason = "lower rows do not fit the partition";
    return out;
  }
  const auto& L = *out.layout;
  if (L.n_rows() < L.n_cols()) {
    out.reason = "fewer rows than columns";
    return out;
  }
  if (!check_lower_structure(L, Fa, v)) {
    out.reason = "lower block structure";
    return out;
  }
  if (L.n_upper < L.n_b2() || !oracle.full_rank(L, Fa, true)) {
    out.reason = "no Schur complement";
    return out;
  }
  out.ok = true;
  return out;
}

inline FavourableCandidate make_candidate(int x_k, const Displacement& d, std::vector<int> subset,
                                          const std::vector<std::vector<Monomial>>& T, Variant v,
                                          MatrixLayout L) {
  FavourableCandidate c;
  c.x_k = x_k;
  c.delta = d;
  c.subset = std::move(subset);
  c.T = T;
  c.variant = v;
  c.B.insert(L.cols.begin(), L.cols.end());
  c.B1.assign(L.cols.begin(), L.cols.begin() + L.n_b1);
  c.B2.assign(L.cols.begin() + L.n_b1, L.cols.end());
  c.layout = std::move(L);
  return c;
}

struct SearchConfig {
  std::vector<Rational> magnitudes = {Rational(1, 10), Rational(1, 1000)};
  int max_subset = -1;  // largest subset size; -1 means all
  MonomialOrder order;
  std::vector<Variant> variants = {Variant::kV1, Variant::kV2};
  std::vector<int> hidden;  // 0-based variable indices; empty means all
  int max_monomials = 400;  // skip larger B
  std::uint64_t seed = 1;
};

// Polytope search over hidden variables, subsets of {NP0, NP(f_1..f_{m+1})}
// and displacements. Each distinct B is tested once per hidden variable.
inline std::vector<FavourableCandidate> search_candidates(const SystemTemplate& F,
                                                          const SearchConfig& cfg,
                                                          RankOracle& oracle) {
  std::vector<FavourableCandidate> out;
  const int n = F.n_vars;
  std::vector<int> ks = cfg.hidden;
  if (ks.empty())
    for (int k = 0; k < n; ++k) ks.push_back(k);

  std::vector<std::vector<int>> subsets;
  const int members = F.m() + 2;
  int cap = cfg.max_subset < 0 ? members : std::min(cfg.max_subset, members);
  for (int size = 1; size <= cap; ++size) {
    std::vector<bool> sel(members, false);
    std::fill(sel.begin(), sel.begin() + size, true);
    do {
      std::vector<int> s;
      for (int i = 0; i < members; ++i)
        if (sel[i]) s.push_back(i);
      subsets.push_back(s);
    } while (std::prev_permutation(sel.begin(), sel.end()));
  }

  std::vector<Displacement> shifts;
  for (const auto& mag : cfg.magnitudes) {
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
      std::vector<int> signs(n);
      int c = code;
      for (int i = 0; i < n; ++i) signs[i] = c % 3 - 1, c /= 3;
      shifts.push_back(Displacement::from_signs(signs, mag));
    }
  }

  for (int k : ks) {
    SystemTemplate Fa = augment(F, k);
    std::vector<LatticePolytope> polys = {unit_simplex(n)};
    for (const auto& f : Fa.polys) polys.push_back(newton_polytope(f));
    std::set<std::set<Monomial>> seen;
    for (const auto& s : subsets) {
      std::vector<LatticePolytope> parts;
      for (int i : s) parts.push_back(polys[i]);
      LatticePolytope Q = minkowski_sum(parts);
      for (const auto& d : shifts) {
        auto pts = lattice_points(Q, d);
        if (pts.empty() || static_cast<int>(pts.size()) > cfg.max_monomials) continue;
        Extension ext = extend_system(Fa, to_monomials(pts));
        if (ext.B.empty() || !seen.insert(ext.B).second) continue;
        if (!all_nonempty(ext.T)) continue;
        if (total_rows(ext.T) < static_cast<int>(ext.B.size())) continue;
        for (Variant v : cfg.variants) {
          auto verdict = test_partition(Fa, ext.T, v, k, cfg.order, oracle);
          if (verdict.ok) out.push_back(make_candidate(k, d, s, ext.T, v, std::move(*verdict.layout)));
        }
      }
    }
  }
  if (out.empty()) throw NoSolverError("no favourable monomial set passed the rank and partition tests");
  return out;
}

namespace detail {

inline std::vector<std::vector<int>> layout_key(const MatrixLayout& L) {
  std::vector<std::vector<int>> key;
  for (const auto& c : L.cols) key.push_back(c.exps);
  for (const auto& r : L.rows) {
    std::vector<int> k = r.mult.exps;
    k.insert(k.begin(), r.poly);
    key.push_back(k);
  }
  return key;
}

// Ordering for select_best: smaller |B1|, then p * eps, then p, then layout.
inline bool better(const FavourableCandidate& a, const FavourableCandidate& b) {
  auto sa = static_cast<long long>(a.layout.n_rows()) * a.layout.n_cols();
  auto sb = static_cast<long long>(b.layout.n_rows()) * b.layout.n_cols();
  if (a.layout.n_b1 != b.layout.n_b1) return a.layout.n_b1 < b.layout.n_b1;
  if (sa != sb) return sa < sb;
  if (a.layout.n_rows() != b.layout.n_rows()) return a.layout.n_rows() < b.layout.n_rows();
  if (a.x_k != b.x_k) return a.x_k < b.x_k;
  if (a.variant != b.variant) return a.variant < b.variant;
  return layout_key(a.layout) < layout_key(b.layout);
}

}  // namespace detail

inline const FavourableCandidate& select_best(const std::vector<FavourableCandidate>& cands) {
  if (cands.empty()) throw PreconditionError("select_best on an empty list");
  const FavourableCandidate* best = &cands[0];
  for (const auto& c : cands)
    if (detail::better(c, *best)) best = &c;
  return *best;
}

// Removes the rows hitting a column and whatever columns they leave empty,
// keeping each removal only if the candidate stays favourable and partitionable.
inline FavourableCandidate reduce_rowcol(const SystemTemplate& F, FavourableCandidate cand,
                                         const MonomialOrder& order, RankOracle& oracle,
                                         std::uint64_t seed, int* removed = nullptr) {
  SystemTemplate Fa = augment(F, cand.x_k);
  std::mt19937_64 rng(seed);
  int count = 0;
  // Eigenproblem size that row removal can still reach; never allowed to grow.
  int reach = cand.eps() - oracle.upper_rank(cand.layout, Fa);
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<Monomial> cols = cand.layout.cols;
    std::sort(cols.begin(), cols.end());
    std::shuffle(cols.begin(), cols.end(), rng);
    for (const auto& c : cols) {
      if (!cand.B.count(c)) continue;
      auto T = cand.T;
      for (std::size_t i = 0; i < T.size(); ++i) {
        std::vector<Monomial> keep;
        for (const auto& t : T[i]) {
          bool hits = false;
          for (const auto& term : Fa.polys[i].terms) hits |= term.mono * t == c;
          if (!hits) keep.push_back(t);
        }
        T[i] = keep;
      }
      if (!all_nonempty(T)) continue;
      auto verdict = test_partition(Fa, T, cand.variant, cand.x_k, order, oracle);
      if (!verdict.ok) continue;
      if (verdict.layout->n_b1 > cand.layout.n_b1) continue;
      int eps2 = verdict.layout->n_cols();
      if (eps2 - oracle.upper_rank(*verdict.layout, Fa) > reach) continue;
      for (std::size_t i = 0; i < T.size(); ++i)
        for (const auto& t : cand.T[i])
          if (std::find(T[i].begin(), T[i].end(), t) == T[i].end())
            cand.deleted.push_back({static_cast<int>(i), t});
      auto deleted = std::move(cand.deleted);
      cand = make_candidate(cand.x_k, cand.delta, cand.subset, T, cand.variant, std::move(*verdict.layout));
      cand.deleted = std::move(deleted);
      ++count;
      progress = true;
    }
  }
  if (removed) *removed = count;
  return cand;
}

struct SolverPlan {
  SystemTemplate system;  // input system, without the extra polynomial
  int x_k = 0;
  Variant variant = Variant::kV1;
  Displacement delta;
  std::vector<int> subset;
  MonomialOrder order;
  std::uint64_t seed = 0;
  MatrixLayout layout;
  std::vector<RowId> deleted_rows;

  int n_solutions() const { return layout.n_b1; }
  SystemTemplate augmented() const { return augment(system, x_k); }
  friend bool operator==(const SolverPlan& a, const SolverPlan& b) {
    return a.system == b.system && a.x_k == b.x_k && a.variant == b.variant &&
           a.delta.delta == b.delta.delta && a.subset == b.subset && a.order.kind == b.order.kind &&
           a.order.perm == b.order.perm && a.seed == b.seed && a.layout == b.layout &&
           a.deleted_rows == b.deleted_rows;
  }
};

struct SquarifyConfig {
  int retries = 32;
};

// Drops rows until the matrix is square: lower-block rows first, then random
// upper rows. A dead end restarts with the next seed.
inline SolverPlan squarify(const SystemTemplate& F, const FavourableCandidate& cand,
                           const MonomialOrder& order, RankOracle& oracle, std::uint64_t seed,
                           const SquarifyConfig& cfg = {}) {
  SystemTemplate Fa = augment(F, cand.x_k);
  const int m = F.m();
  for (int attempt = 0; attempt < cfg.retries; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt) * 0x9e3779b97f4a7c15ull);
    auto T = cand.T;
    MatrixLayout L = cand.layout;
    std::vector<RowId> deleted = cand.deleted;
    std::set<RowId> checked;
    const int eps = L.n_cols();
    bool stuck = false;
    while (L.n_rows() > eps && !stuck) {
      std::vector<RowId> pool;
      for (const auto& t : T[m])
        if (!checked.count({m, t})) pool.push_back({m, t});
      bool lower_phase = !pool.empty();
      if (!lower_phase)
        for (int i = 0; i < m; ++i)
          for (const auto& t : T[i])
            if (!checked.count({i, t})) pool.push_back({i, t});
      std::sort(pool.begin(), pool.end());
      std::shuffle(pool.begin(), pool.end(), rng);
      bool done = false;
      for (const auto& r : pool) {
        checked.insert(r);
        auto T2 = T;
        auto& ti = T2[r.poly];
        ti.erase(std::find(ti.begin(), ti.end(), r.mult));
        if (ti.empty()) continue;
        auto verdict = test_partition(Fa, T2, cand.variant, cand.x_k, order, oracle);
        if (!verdict.ok || verdict.layout->n_cols() != eps) continue;
        T = std::move(T2);
        L = std::move(*verdict.layout);
        deleted.push_back(r);
        done = true;
        break;
      }
      if (!done && !lower_phase) stuck = true;
    }
    if (L.n_rows() != eps) continue;
    SolverPlan plan;
    plan.system = F;
    plan.x_k = cand.x_k;
    plan.variant = cand.variant;
    plan.delta = cand.delta;
    plan.subset = cand.subset;
    plan.order = order;
    plan.seed = seed;
    plan.layout = std::move(L);
    plan.deleted_rows = std::move(deleted);
    return plan;
  }
  throw NoSolverError("row removal exhausted after " + std::to_string(cfg.retries) + " seeds");
}

// Re-checks a plan from scratch: favourable-set conditions, the partition
// structure and invertibility of the square pivot block, over the given primes.
inline bool revalidate(const SolverPlan& plan, const std::vector<u64>& primes, std::uint64_t seed) {
  SystemTemplate Fa = plan.augmented();
  const auto& L = plan.layout;
  std::vector<std::vector<Monomial>> T(Fa.m());
  for (const auto& r : L.rows) T[r.poly].push_back(r.mult);
  if (!all_nonempty(T)) return false;
  if (total_rows(T) < L.n_cols()) return false;
  auto rebuilt = build_layout(Fa, T, plan.variant, plan.x_k, plan.order);
  if (!rebuilt || !(*rebuilt == L)) return false;
  if (!check_lower_structure(L, Fa, plan.variant)) return false;
  if (L.n_upper != L.n_b2()) return false;
  RankOracle fresh(primes, 2, seed);
  return fresh.full_rank(L, Fa, true);
}

struct GenerateConfig {
  SearchConfig search;
  int finalize_top = 6;  // candidates carried through the reductions
  bool reduce = true;
  SquarifyConfig squarify;
};

struct GenerateReport {
  std::size_t candidates = 0;
  int removed_by_rowcol = 0;
  std::vector<int> b1_before;  // |B1| of finalized candidates before reduction
  std::vector<int> b1_after;   // same candidates after both reductions, -1 if squaring failed
};

// Full offline pipeline. Candidates are ranked by the eigenproblem size that
// row removal can reach (eps minus the rank of the upper block), the best few
// are reduced and squared, and select_best picks among the results.
inline SolverPlan generate(const SystemTemplate& F, const GenerateConfig& cfg,
                           GenerateReport* report = nullptr) {
  validate(F);
  RankOracle oracle({kTestPrimes.begin(), kTestPrimes.end()}, 2, cfg.search.seed);
  auto cands = search_candidates(F, cfg.search, oracle);
  std::vector<std::pair<int, std::size_t>> ranked;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    SystemTemplate Fa = augment(F, cands[i].x_k);
    ranked.push_back({cands[i].eps() - oracle.upper_rank(cands[i].layout, Fa), i});
  }
  std::stable_sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return detail::better(cands[a.second], cands[b.second]);
  });
  if (report) report->candidates = cands.size();

  std::vector<FavourableCandidate> finals;
  std::vector<SolverPlan> plans;
  for (std::size_t r = 0; r < ranked.size() && static_cast<int>(plans.size()) < cfg.finalize_top; ++r) {
    FavourableCandidate c = cands[ranked[r].second];
    if (report) report->b1_before.push_back(c.layout.n_b1);
    int removed = 0;
    if (cfg.reduce) c = reduce_rowcol(F, c, cfg.search.order, oracle, cfg.search.seed, &removed);
    try {
      SolverPlan p = squarify(F, c, cfg.search.order, oracle, cfg.search.seed, cfg.squarify);
      if (report) {
        report->removed_by_rowcol += removed;
        report->b1_after.push_back(p.layout.n_b1);
      }
      FavourableCandidate fc = make_candidate(p.x_k, p.delta, p.subset, {}, p.variant, p.layout);
      for (const auto& row : p.layout.rows) {
        if (fc.T.size() <= static_cast<std::size_t>(row.poly)) fc.T.resize(row.poly + 1);
        fc.T[row.poly].push_back(row.mult);
      }
      finals.push_back(std::move(fc));
      plans.push_back(std::move(p));
    } catch (const NoSolverError&) {
      if (report) report->b1_after.push_back(-1);
    }
  }
  if (plans.empty()) throw NoSolverError("no candidate could be squared");
  const FavourableCandidate& best = select_best(finals);
  return plans[&best - finals.data()];
}

}  // namespace sparseres
