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

// Command-line front end: generate, solve, bench, compare.
//
// Exit codes: 0 ok, 2 usage or input error, 3 no solver for the request,
// 4 numeric failure.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>

#include "sparseres.hpp"

namespace {

using namespace sparseres;

constexpr int kUsage = 2;
constexpr int kNoSolver = 3;
constexpr int kNumeric = 4;

struct GenerateArgs {
  std::string system, out, delta, order = "grevlex", variant = "both";
  int max_subset = -1;
  std::uint64_t seed = 1;
};

struct SolveArgs {
  std::string plan, instance, out;
  double tol = 1e-6;
};

struct BenchArgs {
  std::string plan, report;
  int trials = 100;
  std::uint64_t seed = 1;
  bool timing = false;
};

struct CompareArgs {
  std::string system, direction;
  int trials = 100;
  std::uint64_t seed = 1;
};

int run_generate(const GenerateArgs& a) {
  SystemTemplate F = load_system(a.system);
  GenerateConfig cfg;
  cfg.search.order = MonomialOrder::parse(a.order);
  cfg.search.seed = a.seed;
  cfg.search.max_subset = a.max_subset;
  if (!a.delta.empty()) cfg.search.magnitudes = {Rational::parse(a.delta)};
  if (a.variant != "both") cfg.search.variants = {parse_variant(a.variant)};
  SolverPlan plan = generate(F, cfg);
  write_file(a.out, emit_plan(plan));
  const auto& L = plan.layout;
  std::cout << "x_k: " << plan.system.var_names[plan.x_k] << " (index " << plan.x_k << ")\n"
            << "variant: " << variant_name(plan.variant) << "\n"
            << "size: " << L.n_upper << "x" << L.n_cols() << "\n"
            << "eigen size: " << L.n_b1 << "\n";
  return 0;
}

Json point_json(const std::vector<Complex>& p) {
  Json a = Json::array();
  for (const auto& z : p) a.push_back(Json::array({z.real(), z.imag()}));
  return a;
}

int run_solve(const SolveArgs& a) {
  SolverPlan plan = load_plan(read_file(a.plan));
  CoefficientAssignment c = parse_instance(read_file(a.instance));
  SolutionSet sol = solve(fill(plan, c));
  Json roots = Json::array();
  int accepted = 0;
  for (const auto& r : sol.roots) {
    bool ok = r.residual <= a.tol;
    accepted += ok;
    roots.push_back({{"point", point_json(r.point)}, {"residual", r.residual}, {"real", r.is_real}, {"accepted", ok}});
  }
  Json out = {{"roots", roots}, {"accepted", accepted}, {"dropped", sol.dropped}};
  std::string text = dump_json(out);
  std::cout << text;
  if (!a.out.empty()) write_file(a.out, text);
  int r = plan.system.root_count.value_or(0);
  if (accepted < r) {
    std::cerr << "only " << accepted << " of " << r << " roots within tolerance\n";
    return kNumeric;
  }
  return 0;
}

int run_bench(const BenchArgs& a) {
  SolverPlan plan = load_plan(read_file(a.plan));
  BenchReport rep = benchmark(plan, unit_normal_generator(plan.system), a.trials, a.seed, a.timing);
  write_file(a.report, dump_json(report_to_json(rep)));
  std::cout << "trials: " << rep.trials << "\nfail%: " << rep.fail_pct << "\nmean log10 residual: " << rep.mean_log10
            << "\nmedian log10 residual: " << rep.median_log10 << "\n";
  return 0;
}

int run_compare(const CompareArgs& a) {
  SystemTemplate F = load_system(a.system);
  AmPlan am;
  SolverPlan res;
  if (a.direction == "am-res") {
    am = propose_am_plan(F, 0);
    res = am_to_res(am);
  } else if (a.direction == "res-am" || a.direction == "res-alt-am") {
    GenerateConfig cfg;
    cfg.search.seed = a.seed;
    cfg.search.variants = {a.direction == "res-am" ? Variant::kV1 : Variant::kV2};
    res = generate(F, cfg);
    am = res_to_am(res);
  } else {
    std::cerr << "unknown direction '" << a.direction << "' (am-res, res-am, res-alt-am)\n";
    return kUsage;
  }
  EquivalenceVerdict v = check_equivalence(am, res, a.trials, a.seed);
  auto [tr, tc] = am.effective_size();
  std::cout << "direction: " << a.direction << "\n"
            << "template: " << tr << "x" << tc << "\n"
            << "upper block: " << res.layout.n_upper << "x" << res.layout.n_cols() << "\n"
            << "max deviation: " << v.max_deviation << "\n"
            << "verdict: " << (v.equivalent ? "equivalent" : "not equivalent") << "\n";
  return v.equivalent ? 0 : kNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse resultant solver generator"};
  app.require_subcommand(1);

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "search and reduce a solver plan");
  gen->add_option("--system", ga.system, "system file or lib:<name>")->required();
  gen->add_option("--out", ga.out, "plan file to write")->required();
  gen->add_option("--delta", ga.delta, "displacement magnitude, e.g. 1/10");
  gen->add_option("--max-subset", ga.max_subset, "largest polytope subset");
  gen->add_option("--order", ga.order, "grevlex, grlex or lex");
  gen->add_option("--variant", ga.variant, "v1, v2 or both")->check(CLI::IsMember({"v1", "v2", "both"}));
  gen->add_option("--seed", ga.seed);

  SolveArgs sa;
  auto* sol = app.add_subcommand("solve", "solve one instance with a plan");
  sol->add_option("--plan", sa.plan)->required();
  sol->add_option("--instance", sa.instance)->required();
  sol->add_option("--tol", sa.tol, "residual bound for accepted roots");
  sol->add_option("--out", sa.out, "also write the solutions here");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "stability benchmark on random instances");
  bench->add_option("--plan", ba.plan)->required();
  bench->add_option("--trials", ba.trials)->required()->check(CLI::PositiveNumber);
  bench->add_option("--seed", ba.seed)->required();
  bench->add_option("--report", ba.report)->required();
  bench->add_flag("--timing", ba.timing, "record wall time (report no longer reproducible)");

  CompareArgs ca;
  auto* cmp = app.add_subcommand("compare", "check action-matrix / resultant equivalence");
  cmp->add_option("--system", ca.system, "system file or lib:<name>")->required();
  cmp->add_option("--direction", ca.direction, "am-res, res-am or res-alt-am")->required();
  cmp->add_option("--trials", ca.trials)->check(CLI::PositiveNumber);
  cmp->add_option("--seed", ca.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*gen) return run_generate(ga);
    if (*sol) return run_solve(sa);
    if (*bench) return run_bench(ba);
    if (*cmp) return run_compare(ca);
  } catch (const NoSolverError& e) {
    std::cerr << "no solver: " << e.what() << "\n";
    return kNoSolver;
  } catch (const NoTemplateError& e) {
    std::cerr << "no template: " << e.what() << "\n";
    return kNoSolver;
  } catch (const UnsupportedCaseError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kNoSolver;
  } catch (const SingularPivotError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const NonConvergenceError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return kNoSolver;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
