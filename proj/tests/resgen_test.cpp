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
#include <set>

#include "sparseres/library.hpp"
#include "sparseres/plan_io.hpp"
#include "sparseres/resgen.hpp"

namespace sparseres {
namespace {

Monomial mono(std::vector<int> e) { return Monomial(std::move(e)); }

SystemTemplate linear() { return parse_system(R"({"variables": ["x"], "polynomials": ["x - 2"]})"); }

TEST(Augment, AppendsHiddenPolynomial) {
  SystemTemplate Fa = augment(linear(), 0);
  ASSERT_EQ(Fa.m(), 2);
  const auto& extra = Fa.polys[1];
  ASSERT_EQ(extra.terms.size(), 2u);
  EXPECT_EQ(extra.terms[0].mono, mono({1}));
  EXPECT_EQ(extra.terms[1].coeff.slot, kHiddenSlot);
  EXPECT_EQ(extra.terms[1].coeff.scale, Rational(-1));
  EXPECT_TRUE(Fa.slots().count(kHiddenSlot));
}

TEST(Augment, ExampleOneSecondVariable) {
  SystemTemplate Fa = augment(library_entry("example1").system(), 1);
  ASSERT_EQ(Fa.m(), 3);
  EXPECT_EQ(Fa.polys[2].terms[0].mono, mono({0, 1}));
}

TEST(Augment, RejectsBadIndex) {
  EXPECT_THROW(augment(linear(), -1), PreconditionError);
  EXPECT_THROW(augment(linear(), 1), PreconditionError);
}

TEST(Search, LinearHasTheTwoByTwoCandidate) {
  RankOracle oracle;
  auto cands = search_candidates(linear(), {}, oracle);
  bool found = false;
  for (const auto& c : cands) {
    if (c.variant != Variant::kV1 || c.B != std::set<Monomial>{mono({0}), mono({1})}) continue;
    found = true;
    EXPECT_EQ(c.B1, std::vector<Monomial>{mono({0})});
    EXPECT_EQ(c.B2, std::vector<Monomial>{mono({1})});
    EXPECT_EQ(c.T[0], std::vector<Monomial>{mono({0})});
    EXPECT_EQ(c.T[1], std::vector<Monomial>{mono({0})});
  }
  EXPECT_TRUE(found);
}

// Every emitted candidate must satisfy the favourable-set conditions and the
// partition rule of its variant.
void expect_candidate_invariants(const SystemTemplate& F) {
  RankOracle oracle;
  auto cands = search_candidates(F, {}, oracle);
  ASSERT_FALSE(cands.empty());
  const int m = F.m();
  for (const auto& c : cands) {
    std::set<Monomial> b1(c.B1.begin(), c.B1.end()), b2(c.B2.begin(), c.B2.end());
    for (const auto& x : b1) EXPECT_FALSE(b2.count(x));
    std::set<Monomial> u = b1;
    u.insert(b2.begin(), b2.end());
    EXPECT_EQ(u, c.B);
    EXPECT_GE(c.p(), c.eps());
    for (const auto& t : c.T) EXPECT_FALSE(t.empty());
    std::set<Monomial> expect;
    Monomial xk = Monomial::var(F.n_vars, c.x_k);
    for (const auto& t : c.T[m]) expect.insert(c.variant == Variant::kV1 ? t : t * xk);
    std::set<Monomial> got;
    for (const auto& b : c.B)
      if (expect.count(b)) got.insert(b);
    EXPECT_EQ(got, b1);
    EXPECT_GE(c.layout.n_upper, c.layout.n_b2());
  }
}

TEST(Search, CandidateInvariantsTwoConics) { expect_candidate_invariants(library_entry("two_conics").system()); }
TEST(Search, CandidateInvariantsExampleOne) { expect_candidate_invariants(library_entry("example1").system()); }

TEST(Search, NoCandidateIsNoSolver) {
  SearchConfig cfg;
  cfg.max_monomials = 1;
  RankOracle oracle;
  EXPECT_THROW(search_candidates(library_entry("two_conics").system(), cfg, oracle), NoSolverError);
}

TEST(Partition, LinearLayout) {
  SystemTemplate Fa = augment(linear(), 0);
  RankOracle oracle;
  auto v = test_partition(Fa, {{mono({0})}, {mono({0})}}, Variant::kV1, 0, {}, oracle);
  ASSERT_TRUE(v.ok) << v.reason;
  const auto& L = *v.layout;
  EXPECT_EQ(L.n_upper, 1);
  EXPECT_EQ(L.n_b1, 1);
  EXPECT_EQ(L.cols, (std::vector<Monomial>{mono({0}), mono({1})}));
  EXPECT_TRUE(check_lower_structure(L, Fa, Variant::kV1));
}

TEST(Partition, EmptyMultiplierSetRejected) {
  SystemTemplate Fa = augment(linear(), 0);
  RankOracle oracle;
  auto v = test_partition(Fa, {{}, {mono({0})}}, Variant::kV1, 0, {}, oracle);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.reason, "empty multiplier set");
}

TEST(Partition, TooFewRowsRejected) {
  SystemTemplate F = parse_system(R"({"variables": ["x"], "polynomials": ["a*x^2 + b"]})");
  SystemTemplate Fa = augment(F, 0);
  RankOracle oracle;
  auto v = test_partition(Fa, {{mono({0})}, {mono({0})}}, Variant::kV1, 0, {}, oracle);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.reason, "fewer rows than columns");
}

TEST(Partition, CollidingColumnsHaveNoSchurComplement) {
  // The second row of A12 is twice the first, for every instance.
  SystemTemplate F = parse_system(R"({"variables": ["x", "y"], "polynomials": ["a*x + b*y", "2*a*x + 2*b*y + e"]})");
  SystemTemplate Fa = augment(F, 0);
  RankOracle oracle;
  std::vector<std::vector<Monomial>> T = {{mono({0, 0})}, {mono({0, 0})}, {mono({0, 0})}};
  auto v = test_partition(Fa, T, Variant::kV1, 0, {}, oracle);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.reason, "no Schur complement");
  SystemTemplate G = parse_system(R"({"variables": ["x", "y"], "polynomials": ["a*x + b*y", "c*x + d*y + e"]})");
  EXPECT_TRUE(test_partition(augment(G, 0), T, Variant::kV1, 0, {}, oracle).ok);
}

FavourableCandidate fake(int n_b1, int rows, int cols) {
  FavourableCandidate c;
  for (int i = 0; i < rows; ++i) c.layout.rows.push_back({0, mono({i})});
  for (int i = 0; i < cols; ++i) c.layout.cols.push_back(mono({i}));
  c.layout.n_b1 = n_b1;
  c.layout.n_upper = rows - n_b1;
  return c;
}

TEST(SelectBest, SmallestEigenproblemFirst) {
  std::vector<FavourableCandidate> c = {fake(5, 20, 20), fake(3, 30, 30)};
  EXPECT_EQ(select_best(c).layout.n_b1, 3);
}

TEST(SelectBest, TieBrokenBySize) {
  std::vector<FavourableCandidate> c = {fake(9, 12, 20), fake(9, 11, 20)};
  EXPECT_EQ(select_best(c).layout.n_rows(), 11);
  std::vector<FavourableCandidate> one = {fake(2, 4, 4)};
  EXPECT_EQ(&select_best(one), &one[0]);
  EXPECT_THROW(select_best({}), PreconditionError);
}

FavourableCandidate candidate_for(const SystemTemplate& F, int k, std::vector<std::vector<Monomial>> T) {
  RankOracle oracle;
  auto v = test_partition(augment(F, k), T, Variant::kV1, k, {}, oracle);
  EXPECT_TRUE(v.ok) << v.reason;
  return make_candidate(k, Displacement::zero(F.n_vars), {1}, T, Variant::kV1, *v.layout);
}

TEST(ReduceRowcol, TwoByTwoUnchanged) {
  auto c = candidate_for(linear(), 0, {{mono({0})}, {mono({0})}});
  RankOracle oracle;
  int removed = -1;
  auto r = reduce_rowcol(linear(), c, {}, oracle, 1, &removed);
  EXPECT_EQ(removed, 0);
  EXPECT_EQ(r.layout, c.layout);
}

TEST(ReduceRowcol, DropsSpuriousColumn) {
  // The multiple x^2 (x - 2) only adds the column x^3 and a lower row.
  auto c = candidate_for(linear(), 0, {{mono({0}), mono({1}), mono({2})}, {mono({0}), mono({1}), mono({2})}});
  RankOracle oracle;
  int removed = 0;
  auto r = reduce_rowcol(linear(), c, {}, oracle, 3, &removed);
  EXPECT_GT(removed, 0);
  EXPECT_LT(r.eps(), c.eps());
  EXPECT_LE(r.layout.n_b1, c.layout.n_b1);
  EXPECT_FALSE(r.deleted.empty());
}

TEST(Squarify, SquareIsUnchanged) {
  auto c = candidate_for(linear(), 0, {{mono({0})}, {mono({0})}});
  RankOracle oracle;
  SolverPlan p = squarify(linear(), c, {}, oracle, 1);
  EXPECT_EQ(p.layout, c.layout);
  EXPECT_TRUE(p.deleted_rows.empty());
}

TEST(Squarify, RemovesExactlyTheExcessRow) {
  auto c = candidate_for(linear(), 0, {{mono({0}), mono({1})}, {mono({0}), mono({1})}});
  ASSERT_EQ(c.p(), c.eps() + 1);
  RankOracle oracle;
  SolverPlan p = squarify(linear(), c, {}, oracle, 5);
  EXPECT_EQ(p.layout.n_rows(), p.layout.n_cols());
  EXPECT_EQ(p.layout.n_cols(), c.eps());
  EXPECT_EQ(p.deleted_rows.size(), 1u);
  EXPECT_TRUE(revalidate(p, {kTestPrimes.begin(), kTestPrimes.end()}, 77));
}

TEST(Generate, LibraryPlansRevalidateAndNeverGrowB1) {
  for (std::string name : {"linear", "univariate", "two_conics", "example1"}) {
    SystemTemplate F = library_entry(name).system();
    GenerateReport rep;
    SolverPlan p = generate(F, {}, &rep);
    EXPECT_EQ(p.layout.n_rows(), p.layout.n_cols()) << name;
    EXPECT_TRUE(revalidate(p, {2147483549ull, 2147483543ull, 2147483497ull}, 99)) << name;
    int smallest = *std::min_element(rep.b1_before.begin(), rep.b1_before.end());
    EXPECT_LE(p.n_solutions(), smallest) << name;
    if (F.root_count) EXPECT_GE(p.n_solutions(), *F.root_count) << name;
  }
}

TEST(Generate, KnownSizes) {
  SolverPlan u = generate(library_entry("univariate").system(), {});
  EXPECT_EQ(u.layout.n_upper, 1);
  EXPECT_EQ(u.layout.n_cols(), 3);
  SolverPlan l = generate(linear(), {});
  EXPECT_EQ(l.layout.n_upper, 1);
  EXPECT_EQ(l.layout.n_cols(), 2);
  SolverPlan c = generate(library_entry("two_conics").system(), {});
  EXPECT_EQ(c.n_solutions(), 4);
}

TEST(PlanIo, RoundTrip) {
  for (std::string name : {"univariate", "two_conics"}) {
    SolverPlan p = generate(library_entry(name).system(), {});
    std::string text = emit_plan(p);
    SolverPlan q = load_plan(text);
    EXPECT_TRUE(p == q) << name;
    EXPECT_EQ(emit_plan(q), text);
  }
}

TEST(PlanIo, TruncatedFileIsParseError) {
  std::string text = emit_plan(generate(linear(), {}));
  EXPECT_THROW(load_plan(text.substr(0, text.size() / 2)), ParseError);
  EXPECT_THROW(load_plan("{\"kind\": \"sparse-resultant\"}"), ParseError);
}

TEST(Generate, DeterministicBytes) {
  SystemTemplate F = library_entry("two_conics").system();
  GenerateConfig cfg;
  cfg.search.seed = 42;
  EXPECT_EQ(emit_plan(generate(F, cfg)), emit_plan(generate(F, cfg)));
}

}  // namespace
}  // namespace sparseres
