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

#include <string>

#include "sparseres/resgen.hpp"
#include "sparseres/system_io.hpp"

namespace sparseres {

namespace detail {

inline Json row_json(const RowId& r) {
  Json a = Json::array({r.poly});
  for (int e : r.mult.exps) a.push_back(e);
  return a;
}

inline RowId row_from_json(const Json& a, int n) {
  if (!a.is_array() || static_cast<int>(a.size()) != n + 1) throw ParseError("malformed row entry");
  RowId r;
  r.poly = a[0].get<int>();
  for (int i = 1; i <= n; ++i) r.mult.exps.push_back(a[i].get<int>());
  return r;
}

}  // namespace detail

inline Json plan_to_json(const SolverPlan& plan) {
  Json j;
  j["kind"] = "sparse-resultant";
  Json meta;
  meta["seed"] = plan.seed;
  meta["order"] = plan.order.name();
  meta["perm"] = plan.order.perm;
  meta["variant"] = variant_name(plan.variant);
  meta["x_k"] = plan.x_k;
  Json delta = Json::array();
  for (const auto& d : plan.delta.delta) delta.push_back(d.str());
  meta["delta"] = delta;
  meta["subset"] = plan.subset;
  j["meta"] = meta;
  j["system"] = system_to_json(plan.system);
  const auto& L = plan.layout;
  Json B = Json::array();
  for (const auto& c : L.cols) B.push_back(c.exps);
  j["monomials"] = {{"b1_size", L.n_b1}, {"B", B}};
  Json rows = Json::array();
  for (const auto& r : L.rows) rows.push_back(detail::row_json(r));
  j["rows"] = rows;
  j["blocks"] = {{"upper_rows", L.n_upper}, {"lower_rows", L.n_lower()}, {"b1", L.n_b1}, {"b2", L.n_b2()}};
  Json cells = Json::array();
  for (const auto& c : L.cells) cells.push_back({c.row, c.col, c.poly, c.term});
  j["cells"] = cells;
  Json del = Json::array();
  for (const auto& r : plan.deleted_rows) del.push_back(detail::row_json(r));
  j["deleted_rows"] = del;
  return j;
}

inline std::string emit_plan(const SolverPlan& plan) { return dump_json(plan_to_json(plan)); }

inline SolverPlan plan_from_json(const Json& j) {
  SolverPlan plan;
  try {
    if (j.at("kind").get<std::string>() != "sparse-resultant") throw ParseError("not a resultant plan");
    const Json& meta = j.at("meta");
    plan.seed = meta.at("seed").get<std::uint64_t>();
    plan.order = MonomialOrder::parse(meta.at("order").get<std::string>());
    plan.order.perm = meta.at("perm").get<std::vector<int>>();
    plan.variant = parse_variant(meta.at("variant").get<std::string>());
    plan.x_k = meta.at("x_k").get<int>();
    for (const auto& d : meta.at("delta")) plan.delta.delta.push_back(Rational::parse(d.get<std::string>()));
    plan.subset = meta.at("subset").get<std::vector<int>>();
    plan.system = system_from_json(j.at("system"));
    const int n = plan.system.n_vars;
    auto& L = plan.layout;
    L.n_b1 = j.at("monomials").at("b1_size").get<int>();
    for (const auto& c : j.at("monomials").at("B")) {
      Monomial m(c.get<std::vector<int>>());
      if (m.size() != n) throw ParseError("monomial length mismatch");
      L.cols.push_back(m);
    }
    for (const auto& r : j.at("rows")) L.rows.push_back(detail::row_from_json(r, n));
    L.n_upper = j.at("blocks").at("upper_rows").get<int>();
    for (const auto& c : j.at("cells")) {
      if (!c.is_array() || c.size() != 4) throw ParseError("malformed cell");
      L.cells.push_back({c[0].get<int>(), c[1].get<int>(), c[2].get<int>(), c[3].get<int>()});
    }
    for (const auto& r : j.at("deleted_rows")) plan.deleted_rows.push_back(detail::row_from_json(r, n));
    if (j.at("blocks").at("lower_rows").get<int>() != L.n_lower() || j.at("blocks").at("b1").get<int>() != L.n_b1 ||
        j.at("blocks").at("b2").get<int>() != L.n_b2())
      throw ParseError("block extents disagree with rows and monomials");
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed plan: ") + e.what());
  }
  const auto& L = plan.layout;
  if (plan.x_k < 0 || plan.x_k >= plan.system.n_vars) throw ParseError("hidden variable out of range");
  SystemTemplate Fa = plan.augmented();
  for (const auto& c : L.cells) {
    if (c.row < 0 || c.row >= L.n_rows() || c.col < 0 || c.col >= L.n_cols() || c.poly < 0 ||
        c.poly >= Fa.m() || c.term < 0 || c.term >= static_cast<int>(Fa.polys[c.poly].terms.size()))
      throw ParseError("cell out of range");
    if (L.rows[c.row].poly != c.poly || Fa.polys[c.poly].terms[c.term].mono * L.rows[c.row].mult != L.cols[c.col])
      throw ParseError("cell disagrees with its row and column");
  }
  if (L.n_b1 < 0 || L.n_b1 > L.n_cols() || L.n_upper < 0 || L.n_upper > L.n_rows())
    throw ParseError("block extents out of range");
  return plan;
}

inline SolverPlan load_plan(const std::string& text) { return plan_from_json(detail::parse_json(text)); }

}  // namespace sparseres
