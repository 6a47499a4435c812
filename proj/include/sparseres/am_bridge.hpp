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
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sparseres/field.hpp"
#include "sparseres/linalg.hpp"
#include "sparseres/plan_io.hpp"
#include "sparseres/resgen.hpp"
#include "sparseres/runtime.hpp"

namespace sparseres {

// Elimination template with columns [b_e | b_r | b_a]. The left part
// (excess and reducible columns) is square on the kept rows.
struct AmPlan {
  SystemTemplate system;     // includes x_k * lambda - 1 when rabinowitsch is set
  int action_var = 0;        // index into system variables
  bool rabinowitsch = false;
  int source_var = -1;       // x_k of the trick; lambda is the last variable
  std::vector<Monomial> Be, Br, Ba;
  std::vector<RowId> rows;
  std::vector<Cell> cells;   // columns index the concatenation [Be, Br, Ba]

  int n_left() const { return static_cast<int>(Be.size() + Br.size()); }
  int n_cols() const { return n_left() + static_cast<int>(Ba.size()); }
  int n_rows() const { return static_cast<int>(rows.size()); }
  std::vector<Monomial> columns() const {
    std::vector<Monomial> c = Be;
    c.insert(c.end(), Br.begin(), Br.end());
    c.insert(c.end(), Ba.begin(), Ba.end());
    return c;
  }
  // Template size without the rows and reducible columns added by the trick.
  std::pair<int, int> effective_size() const {
    if (!rabinowitsch) return {n_rows(), n_cols()};
    int extra = 0;
    for (const auto& r : rows) extra += r.poly == system.m() - 1;
    return {n_rows() - extra, n_cols() - static_cast<int>(Br.size())};
  }
};

struct ActionMatrix {
  MatrixXd M;
  std::vector<Monomial> basis;
};

inline SystemTemplate rabinowitsch_system(const SystemTemplate& F, int k) {
  SystemTemplate R;
  R.n_vars = F.n_vars + 1;
  R.var_names = F.var_names;
  R.var_names.push_back("lambda");
  for (const auto& p : F.polys) {
    PolynomialTemplate q = p;
    for (auto& t : q.terms) t.mono.exps.push_back(0);
    R.polys.push_back(q);
  }
  Monomial xl = Monomial::var(R.n_vars, k);
  xl.exps[F.n_vars] = 1;
  PolynomialTemplate extra;
  extra.terms.push_back({Coefficient{"", Rational(1)}, xl});
  extra.terms.push_back({Coefficient{"", Rational(-1)}, Monomial::one(R.n_vars)});
  R.polys.push_back(extra);
  R.root_count = F.root_count;
  return R;
}

namespace detail {

inline std::vector<Cell> template_cells(const SystemTemplate& S, const std::vector<RowId>& rows,
                                        const std::vector<Monomial>& cols) {
  std::map<Monomial, int> at;
  for (int c = 0; c < static_cast<int>(cols.size()); ++c) at[cols[c]] = c;
  std::vector<Cell> cells;
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
    const auto& f = S.polys[rows[r].poly];
    for (int j = 0; j < static_cast<int>(f.terms.size()); ++j) {
      auto it = at.find(f.terms[j].mono * rows[r].mult);
      if (it != at.end()) cells.push_back({r, it->second, rows[r].poly, j});
    }
  }
  return cells;
}

inline ModMatrix template_mod(const SystemTemplate& S, int n_rows, int n_cols,
                              const std::vector<Cell>& cells, const std::map<std::string, u64>& vals,
                              const PrimeField& F) {
  ModMatrix M(n_rows, n_cols);
  for (const auto& c : cells)
    M(c.row, c.col) = F.add(M(c.row, c.col), coefficient_mod(S.polys[c.poly].terms[c.term].coeff, vals, F));
  return M;
}

inline ModMatrix transpose(const ModMatrix& M) {
  ModMatrix T(M.cols, M.rows);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) T(j, i) = M(i, j);
  return T;
}

}  // namespace detail

// Template for basis B_a and action variable k from the given multipliers.
// Dependent rows are dropped, reducible columns must all be independent, and
// excess columns are kept greedily in the fixed order, so dependent ones are
// removed from the right.
inline AmPlan build_template(const SystemTemplate& S, const std::vector<Monomial>& Ba, int k,
                             const std::vector<std::vector<Monomial>>& T,
                             const MonomialOrder& order = {}, std::uint64_t seed = 7) {
  if (Ba.empty()) throw PreconditionError("empty basis");
  if (static_cast<int>(T.size()) != S.m()) throw DimensionError("one multiplier set per polynomial");
  AmPlan plan;
  plan.system = S;
  plan.action_var = k;
  plan.Ba = Ba;
  std::vector<RowId> rows;
  std::set<Monomial> B(Ba.begin(), Ba.end());
  for (int i = 0; i < S.m(); ++i)
    for (const auto& t : T[i]) {
      rows.push_back({i, t});
      for (const auto& term : S.polys[i].terms) B.insert(term.mono * t);
    }
  std::set<Monomial> ba(Ba.begin(), Ba.end());
  Monomial xk = Monomial::var(S.n_vars, k);
  std::vector<Monomial> Br, Be;
  for (const auto& m : Ba) {
    Monomial p = m * xk;
    if (ba.count(p)) continue;
    if (!B.count(p)) throw NoTemplateError("x_k times a basis monomial is not reached by the template");
    if (std::find(Br.begin(), Br.end(), p) == Br.end()) Br.push_back(p);
  }
  std::set<Monomial> brs(Br.begin(), Br.end());
  for (const auto& m : B)
    if (!ba.count(m) && !brs.count(m)) Be.push_back(m);
  order.sort_desc(Be);

  // Column order for selection: reducible first, then excess, then basis.
  std::vector<Monomial> cols = Br;
  cols.insert(cols.end(), Be.begin(), Be.end());
  cols.insert(cols.end(), Ba.begin(), Ba.end());
  auto cells = detail::template_cells(S, rows, cols);
  std::mt19937_64 rng(seed);
  PrimeField F0{kTestPrimes[0]};
  auto vals = random_field_assignment(S.slots(), F0, rng);
  ModMatrix M = detail::template_mod(S, static_cast<int>(rows.size()), static_cast<int>(cols.size()), cells, vals, F0);

  // Independent rows: pivots of the transpose.
  auto rowsel = gj_eliminate(detail::transpose(M), F0).pivots;
  ModMatrix R(static_cast<int>(rowsel.size()), M.cols);
  for (int i = 0; i < R.rows; ++i)
    for (int j = 0; j < M.cols; ++j) R(i, j) = M(rowsel[i], j);
  auto piv = gj_eliminate(R, F0).pivots;
  const int nr = static_cast<int>(Br.size()), ne = static_cast<int>(Be.size());
  for (int j = 0; j < nr; ++j)
    if (j >= static_cast<int>(piv.size()) || piv[j] != j)
      throw NoTemplateError("reducible columns are dependent; the reduction block is singular");
  std::vector<Monomial> keepE;
  for (int c : piv) {
    if (c >= nr + ne) throw NoTemplateError("basis columns are not independent modulo the template");
    if (c >= nr) keepE.push_back(Be[c - nr]);
  }
  if (static_cast<int>(piv.size()) != R.rows) throw NoTemplateError("template rank mismatch");

  plan.Be = keepE;
  plan.Br = Br;
  for (int i : rowsel) plan.rows.push_back(rows[i]);
  plan.cells = detail::template_cells(S, plan.rows, plan.columns());

  // The square left block must be invertible for every test prime.
  for (u64 p : kTestPrimes) {
    PrimeField F{p};
    auto v = random_field_assignment(S.slots(), F, rng);
    ModMatrix L = detail::template_mod(S, plan.n_rows(), plan.n_cols(), plan.cells, v, F);
    ModMatrix left(plan.n_rows(), plan.n_left());
    for (int i = 0; i < left.rows; ++i)
      for (int j = 0; j < left.cols; ++j) left(i, j) = L(i, j);
    if (plan.n_rows() != plan.n_left() || exact_rank(left, F) != plan.n_left())
      throw NoTemplateError("reduction block singular");
  }
  return plan;
}

inline MatrixXd fill_template(const AmPlan& plan, const CoefficientAssignment& coeffs) {
  MatrixXd C = MatrixXd::Zero(plan.n_rows(), plan.n_cols());
  for (const auto& c : plan.cells)
    C(c.row, c.col) += coefficient_value(plan.system.polys[c.poly].terms[c.term].coeff, coeffs);
  return C;
}

// G-J of the filled template, then M_f row by row: a unit row when x_k m_j is
// itself a basis monomial, otherwise minus the matching row of C'_23.
inline ActionMatrix extract_action_matrix(const AmPlan& plan, const CoefficientAssignment& coeffs) {
  MatrixXd C = fill_template(plan, coeffs);
  const int nl = plan.n_left(), ne = static_cast<int>(plan.Be.size());
  const int r = static_cast<int>(plan.Ba.size());
  GjResult g = gj_eliminate(C);
  bool ok = static_cast<int>(g.pivots.size()) == nl;
  for (int i = 0; ok && i < nl; ++i) ok = g.pivots[i] == i;
  if (!ok) throw SingularPivotError(0.0);
  std::map<Monomial, int> in_a, in_r;
  for (int i = 0; i < r; ++i) in_a[plan.Ba[i]] = i;
  for (int i = 0; i < static_cast<int>(plan.Br.size()); ++i) in_r[plan.Br[i]] = i;
  Monomial xk = Monomial::var(plan.system.n_vars, plan.action_var);
  ActionMatrix A;
  A.basis = plan.Ba;
  A.M = MatrixXd::Zero(r, r);
  for (int j = 0; j < r; ++j) {
    Monomial p = plan.Ba[j] * xk;
    if (auto it = in_a.find(p); it != in_a.end()) {
      A.M(j, it->second) = 1.0;
    } else {
      int i = in_r.at(p);
      A.M.row(j) = -g.rref.block(ne + i, nl, 1, r);
    }
  }
  return A;
}

// Resultant plan from an action-matrix template: the template becomes the
// upper block, b1 = B_a, b2 = [b_e, b_r], and T_{m+1} = B_a.
inline SolverPlan am_to_res(const AmPlan& am) {
  if (am.rabinowitsch) throw UnsupportedCaseError("template built with the inverse trick");
  SolverPlan plan;
  plan.system = am.system;
  plan.system.root_count = am.system.root_count;
  plan.x_k = am.action_var;
  plan.variant = Variant::kV1;
  plan.seed = 0;
  SystemTemplate Fa = augment(am.system, am.action_var);
  const int m = am.system.m();
  auto& L = plan.layout;
  L.cols = am.Ba;
  L.cols.insert(L.cols.end(), am.Be.begin(), am.Be.end());
  L.cols.insert(L.cols.end(), am.Br.begin(), am.Br.end());
  L.n_b1 = static_cast<int>(am.Ba.size());
  L.rows = am.rows;
  L.n_upper = am.n_rows();
  for (const auto& t : am.Ba) L.rows.push_back({m, t});
  L.cells = detail::template_cells(Fa, L.rows, L.cols);
  return plan;
}

// Action-matrix plan from a resultant plan with N = r. V1 plans keep x_k as
// the action variable. V2 plans use x_k * lambda - 1 and act by lambda.
inline AmPlan res_to_am(const SolverPlan& plan) {
  if (plan.variant == Variant::kV2) {
    // Without constant terms the origin is a root, and 1/x_k does not exist there.
    bool has_constant = false;
    for (const auto& f : plan.system.polys)
      for (const auto& t : f.terms) has_constant |= t.mono.degree() == 0;
    if (!has_constant) throw PreconditionError("the origin is a root, so x_k = 0 there; the inverse trick does not apply");
  }
  const int r = plan.system.root_count.value_or(-1);
  if (r < 0) throw PreconditionError("root count unknown");
  if (plan.n_solutions() != r)
    throw UnsupportedCaseError("eigenproblem size " + std::to_string(plan.n_solutions()) +
                               " differs from the root count " + std::to_string(r));
  const auto& L = plan.layout;
  const int m = plan.system.m();
  std::vector<Monomial> b1(L.cols.begin(), L.cols.begin() + L.n_b1);
  std::vector<std::vector<Monomial>> T(m);
  std::vector<Monomial> lower;
  for (const auto& row : L.rows) {
    if (row.poly < m)
      T[row.poly].push_back(row.mult);
    else
      lower.push_back(row.mult);
  }
  if (plan.variant == Variant::kV1) {
    AmPlan am = build_template(plan.system, b1, plan.x_k, T, plan.order);
    return am;
  }
  // The trick needs x_k invertible on every root: the pivot block of the
  // resultant matrix must be generically nonsingular.
  {
    SystemTemplate Fa = plan.augmented();
    std::mt19937_64 rng(plan.seed + 1);
    for (u64 p : kTestPrimes) {
      PrimeField F{p};
      auto vals = random_field_assignment(Fa.slots(), F, rng);
      ModMatrix M = fill_mod(L, Fa, vals, F);
      if (exact_rank(submatrix(M, 0, L.n_upper, L.n_b1, L.n_cols()), F) != L.n_b2())
        throw PreconditionError("a root has x_k = 0; the inverse trick does not apply");
    }
  }
  SystemTemplate R = rabinowitsch_system(plan.system, plan.x_k);
  auto lift = [&](const Monomial& m) {
    Monomial q = m;
    q.exps.push_back(0);
    return q;
  };
  std::vector<std::vector<Monomial>> TR(m + 1);
  for (int i = 0; i < m; ++i)
    for (const auto& t : T[i]) TR[i].push_back(lift(t));
  for (const auto& t : lower) TR[m].push_back(lift(t));
  std::vector<Monomial> Ba;
  for (const auto& b : b1) Ba.push_back(lift(b));
  AmPlan am = build_template(R, Ba, plan.system.n_vars, TR, plan.order);
  am.rabinowitsch = true;
  am.source_var = plan.x_k;
  return am;
}

// Macaulay-style proposal: all multiples up to total degree D, standard
// monomials from a random elimination in descending order. D grows until the
// count matches the root count and the template builds.
inline AmPlan propose_am_plan(const SystemTemplate& F, int k, int max_extra_degree = 8) {
  const int r = F.root_count.value_or(-1);
  if (r < 1) throw PreconditionError("root count needed to size the basis");
  MonomialOrder order;
  int dmax = 0;
  for (const auto& p : F.polys)
    for (const auto& t : p.terms) dmax = std::max(dmax, t.mono.degree());
  const int n = F.n_vars;
  auto monomials_upto = [&](int d) {
    std::vector<Monomial> out;
    std::vector<int> e(n, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == n) {
        out.emplace_back(e);
        return;
      }
      for (int v = 0; v <= left; ++v) {
        e[i] = v;
        rec(i + 1, left - v);
      }
      e[i] = 0;
    };
    if (d >= 0) rec(0, d);
    return out;
  };
  std::mt19937_64 rng(11);
  for (int D = dmax; D <= dmax + max_extra_degree; ++D) {
    std::vector<std::vector<Monomial>> T(F.m());
    std::vector<RowId> rows;
    std::set<Monomial> Bset;
    for (int i = 0; i < F.m(); ++i) {
      int di = 0;
      for (const auto& t : F.polys[i].terms) di = std::max(di, t.mono.degree());
      T[i] = monomials_upto(D - di);
      for (const auto& t : T[i]) {
        rows.push_back({i, t});
        for (const auto& term : F.polys[i].terms) Bset.insert(term.mono * t);
      }
    }
    std::vector<Monomial> cols(Bset.begin(), Bset.end());
    order.sort_desc(cols);
    PrimeField F0{kTestPrimes[0]};
    auto vals = random_field_assignment(F.slots(), F0, rng);
    auto cells = detail::template_cells(F, rows, cols);
    ModMatrix M = detail::template_mod(F, static_cast<int>(rows.size()), static_cast<int>(cols.size()), cells, vals, F0);
    auto piv = gj_eliminate(M, F0).pivots;
    std::set<int> ps(piv.begin(), piv.end());
    std::vector<Monomial> Ba;
    for (int c = 0; c < static_cast<int>(cols.size()); ++c)
      if (!ps.count(c)) Ba.push_back(cols[c]);
    if (static_cast<int>(Ba.size()) != r) continue;
    try {
      return build_template(F, Ba, k, T, order);
    } catch (const NoTemplateError&) {
    }
  }
  throw NoTemplateError("no degree bound gave a basis of the expected size");
}

struct EquivalenceVerdict {
  bool equivalent = false;
  bool size_match = false;
  bool basis_match = false;
  double max_deviation = 0;  // max |M_f - s X| / (1 + |X|_F) over trials
  int trials = 0;
  int failed_trials = 0;
};

// Def.-2 style check on random instances. With the inverse trick the action
// matrix acts by lambda = 1/x_k while X has eigenvalues -1/x_k, hence s = -1.
inline EquivalenceVerdict check_equivalence(const AmPlan& am, const SolverPlan& res, int trials,
                                            std::uint64_t seed = 1, double tol = 1e-8) {
  EquivalenceVerdict v;
  v.trials = trials;
  auto [er, ec] = am.effective_size();
  v.size_match = er == res.layout.n_upper && ec == res.layout.n_cols();
  std::vector<Monomial> b1(res.layout.cols.begin(), res.layout.cols.begin() + res.layout.n_b1);
  std::vector<int> perm;
  if (am.Ba.size() == b1.size()) {
    std::map<Monomial, int> at;
    for (int i = 0; i < static_cast<int>(b1.size()); ++i) at[b1[i]] = i;
    for (const auto& m : am.Ba) {
      Monomial q = m;
      q.exps.resize(res.system.n_vars);
      auto it = at.find(q);
      if (it == at.end()) break;
      perm.push_back(it->second);
    }
  }
  v.basis_match = perm.size() == b1.size() && !b1.empty();
  if (!v.basis_match) return v;
  const double s = am.rabinowitsch ? -1.0 : 1.0;
  auto gen = unit_normal_generator(res.system);
  std::mt19937_64 rng(seed);
  bool all_ok = true;
  for (int t = 0; t < trials; ++t) {
    CoefficientAssignment c = gen(rng);
    try {
      MatrixXd Mf = extract_action_matrix(am, c).M;
      MatrixXd X = schur_of(fill(res, c));
      MatrixXd Xp(X.rows(), X.cols());
      for (int i = 0; i < X.rows(); ++i)
        for (int j = 0; j < X.cols(); ++j) Xp(i, j) = X(perm[i], perm[j]);
      double dev = (Mf - s * Xp).cwiseAbs().maxCoeff() / (1.0 + X.norm());
      v.max_deviation = std::max(v.max_deviation, dev);
      all_ok &= dev <= tol;
    } catch (const Error&) {
      ++v.failed_trials;
      all_ok = false;
    }
  }
  v.equivalent = all_ok && v.size_match;
  return v;
}

inline Json am_plan_to_json(const AmPlan& am) {
  Json j;
  j["kind"] = "action-matrix";
  j["meta"] = {{"action_var", am.action_var}, {"rabinowitsch", am.rabinowitsch}, {"source_var", am.source_var}};
  j["system"] = system_to_json(am.system);
  auto mons = [](const std::vector<Monomial>& v) {
    Json a = Json::array();
    for (const auto& m : v) a.push_back(m.exps);
    return a;
  };
  j["monomials"] = {{"excess", mons(am.Be)}, {"reducible", mons(am.Br)}, {"basis", mons(am.Ba)}};
  Json rows = Json::array();
  for (const auto& r : am.rows) rows.push_back(detail::row_json(r));
  j["rows"] = rows;
  Json cells = Json::array();
  for (const auto& c : am.cells) cells.push_back({c.row, c.col, c.poly, c.term});
  j["cells"] = cells;
  return j;
}

inline std::string emit_am_plan(const AmPlan& am) { return dump_json(am_plan_to_json(am)); }

inline AmPlan load_am_plan(const std::string& text) {
  Json j = detail::parse_json(text);
  AmPlan am;
  try {
    if (j.at("kind").get<std::string>() != "action-matrix") throw ParseError("not an action-matrix plan");
    am.action_var = j.at("meta").at("action_var").get<int>();
    am.rabinowitsch = j.at("meta").at("rabinowitsch").get<bool>();
    am.source_var = j.at("meta").at("source_var").get<int>();
    am.system = system_from_json(j.at("system"));
    auto mons = [](const Json& a) {
      std::vector<Monomial> v;
      for (const auto& e : a) v.emplace_back(e.get<std::vector<int>>());
      return v;
    };
    am.Be = mons(j.at("monomials").at("excess"));
    am.Br = mons(j.at("monomials").at("reducible"));
    am.Ba = mons(j.at("monomials").at("basis"));
    for (const auto& r : j.at("rows")) am.rows.push_back(detail::row_from_json(r, am.system.n_vars));
    for (const auto& c : j.at("cells")) am.cells.push_back({c[0].get<int>(), c[1].get<int>(), c[2].get<int>(), c[3].get<int>()});
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed action-matrix plan: ") + e.what());
  }
  return am;
}

}  // namespace sparseres
