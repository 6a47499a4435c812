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
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "sparseres/linalg.hpp"
#include "sparseres/resgen.hpp"
#include "sparseres/system_io.hpp"

namespace sparseres {

// M(u0) = M0 + u0 * M1, split into the blocks used by the Schur complement.
// L1/L2 hold A21/A22 for V1 plans and B21/B22 for V2 plans.
struct SolverInstance {
  const SolverPlan* plan = nullptr;
  CoefficientAssignment coeffs;
  MatrixXd M0, M1;
  MatrixXd A11, A12, L1, L2;

  MatrixXd at(double u0) const { return M0 + u0 * M1; }
  Eigen::MatrixXcd at(std::complex<double> u0) const {
    return M0.cast<std::complex<double>>() + u0 * M1.cast<std::complex<double>>();
  }
};

inline SolverInstance fill(const SolverPlan& plan, const CoefficientAssignment& coeffs) {
  const auto& L = plan.layout;
  SystemTemplate Fa = plan.augmented();
  SolverInstance inst;
  inst.plan = &plan;
  inst.coeffs = coeffs;
  inst.M0 = MatrixXd::Zero(L.n_rows(), L.n_cols());
  inst.M1 = MatrixXd::Zero(L.n_rows(), L.n_cols());
  for (const auto& c : L.cells) {
    const Coefficient& k = Fa.polys[c.poly].terms[c.term].coeff;
    if (k.slot == kHiddenSlot)
      inst.M1(c.row, c.col) += k.scale.value();
    else
      inst.M0(c.row, c.col) += coefficient_value(k, coeffs);
  }
  const int U = L.n_upper, n1 = L.n_b1;
  inst.A11 = inst.M0.topLeftCorner(U, n1);
  inst.A12 = inst.M0.topRightCorner(U, L.n_cols() - n1);
  const MatrixXd& low = plan.variant == Variant::kV1 ? inst.M0 : inst.M1;
  inst.L1 = low.bottomLeftCorner(L.n_lower(), n1);
  inst.L2 = low.bottomRightCorner(L.n_lower(), L.n_cols() - n1);
  return inst;
}

struct Root {
  std::vector<Complex> point;
  Complex eigvalue;
  double residual = 0;
  bool is_real = false;
};

struct SolutionSet {
  std::vector<Root> roots;
  int dropped = 0;  // V2 eigenvalues at zero, which map to no finite x_k
};

inline bool is_real_point(const std::vector<Complex>& p) {
  double im = 0, mag = 0;
  for (const auto& z : p) im = std::max(im, std::abs(z.imag())), mag = std::max(mag, std::abs(z));
  return im <= 1e-6 * (1 + mag);
}

// Least-squares ratio over pairs (m, x_i m) of the basis: sum conj(v_m) v_{x_i m}
// / sum |v_m|^2. Invariant under scaling of v. Variables with no pair are empty.
inline std::vector<std::optional<Complex>> recover_from_basis(const VectorXcd& v,
                                                              const std::vector<Monomial>& basis,
                                                              int n) {
  std::map<Monomial, int> at;
  for (int j = 0; j < static_cast<int>(basis.size()); ++j) at[basis[j]] = j;
  std::vector<std::optional<Complex>> out(n);
  for (int i = 0; i < n; ++i) {
    Monomial xi = Monomial::var(n, i);
    Complex num = 0;
    double den = 0;
    bool any = false;
    for (int j = 0; j < static_cast<int>(basis.size()); ++j) {
      auto it = at.find(basis[j] * xi);
      if (it == at.end()) continue;
      any = true;
      num += std::conj(v(j)) * v(it->second);
      den += std::norm(v(j));
    }
    if (any && den > 0) out[i] = num / den;
  }
  return out;
}

// Solution vector from an eigenpair. x_k comes from the eigenvalue; other
// variables from ratios inside b1, falling back to the full vector over B
// (b2 = -Y b1 with Y = A12^{-1} A11) when b1 has no pair for a variable.
inline std::vector<Complex> recover(const VectorXcd& v, Complex x_k_value, const SolverPlan& plan,
                                    const Eigen::MatrixXcd* Y = nullptr) {
  const auto& L = plan.layout;
  const int n = plan.system.n_vars;
  if (v.norm() == 0) throw PreconditionError("zero eigenvector");
  std::vector<Monomial> b1(L.cols.begin(), L.cols.begin() + L.n_b1);
  auto part = recover_from_basis(v, b1, n);
  bool missing = false;
  for (int i = 0; i < n; ++i) missing |= i != plan.x_k && !part[i];
  if (missing && Y) {
    VectorXcd full(L.n_cols());
    full << v, -(*Y) * v;
    auto ext = recover_from_basis(full, L.cols, n);
    for (int i = 0; i < n; ++i)
      if (!part[i]) part[i] = ext[i];
  }
  std::vector<Complex> x(n);
  for (int i = 0; i < n; ++i) {
    if (i == plan.x_k) {
      x[i] = x_k_value;
      continue;
    }
    if (!part[i]) throw UnrecoverableVariableError(i);
    x[i] = *part[i];
  }
  return x;
}

inline MatrixXd schur_of(const SolverInstance& inst) {
  return schur_complement(inst.A11, inst.A12, inst.L1, inst.L2);
}

inline SolutionSet solve(const SolverInstance& inst) {
  const SolverPlan& plan = *inst.plan;
  MatrixXd X = schur_of(inst);
  Eigen::PartialPivLU<MatrixXd> lu(inst.A12);
  Eigen::MatrixXcd Y = lu.solve(inst.A11).cast<Complex>();
  EigResult e = eig(X);
  SolutionSet out;
  const double tiny = 1e-12 * std::max(1.0, X.norm());
  for (int j = 0; j < e.values.size(); ++j) {
    Complex lam = e.values(j);
    Complex xk;
    if (plan.variant == Variant::kV1) {
      xk = lam;
    } else {
      if (std::abs(lam) <= tiny) {
        ++out.dropped;
        continue;
      }
      xk = -1.0 / lam;
    }
    Root r;
    r.eigvalue = lam;
    r.point = recover(e.vectors.col(j), xk, plan, &Y);
    r.residual = normalized_residual(plan.system, inst.coeffs, r.point);
    r.is_real = is_real_point(r.point);
    out.roots.push_back(std::move(r));
  }
  return out;
}

using InstanceGenerator = std::function<CoefficientAssignment(std::mt19937_64&)>;

// Independent unit-normal value per slot, in slot name order.
inline InstanceGenerator unit_normal_generator(const SystemTemplate& sys) {
  auto slots = sys.slots();
  return [slots](std::mt19937_64& rng) {
    std::normal_distribution<double> N(0.0, 1.0);
    CoefficientAssignment a;
    for (const auto& s : slots) a[s] = N(rng);
    return a;
  };
}

struct BenchReport {
  int trials = 0;
  double mean_log10 = 0;
  double median_log10 = 0;
  double fail_pct = 0;
  std::map<int, int> n_solutions_histogram;  // accepted roots per trial
  std::optional<double> p50_us, p95_us;
};

inline constexpr double kFailResidual = 1e-3;

// Per trial, the r best residuals count (all roots when r is unknown). A
// trial fails on a solve error, on fewer than r roots, or when any counted
// residual exceeds the threshold. Timing is collected only when asked, since
// it would break byte-identical reports.
inline BenchReport benchmark(const SolverPlan& plan, const InstanceGenerator& gen, int trials,
                             std::uint64_t seed, bool timing = false) {
  if (trials < 1) throw PreconditionError("benchmark needs at least one trial");
  std::mt19937_64 rng(seed);
  BenchReport rep;
  rep.trials = trials;
  std::vector<double> logs, times;
  int failures = 0;
  const int r = plan.system.root_count.value_or(-1);
  for (int t = 0; t < trials; ++t) {
    CoefficientAssignment c = gen(rng);
    auto t0 = std::chrono::steady_clock::now();
    std::optional<SolutionSet> sol;
    try {
      sol = solve(fill(plan, c));
    } catch (const Error&) {
    }
    if (timing)
      times.push_back(std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count());
    if (!sol) {
      ++failures;
      rep.n_solutions_histogram[0]++;
      continue;
    }
    std::vector<double> res;
    for (const auto& root : sol->roots) res.push_back(root.residual);
    std::sort(res.begin(), res.end());
    int keep = r < 0 ? static_cast<int>(res.size()) : std::min<int>(r, static_cast<int>(res.size()));
    bool fail = r >= 0 && static_cast<int>(res.size()) < r;
    for (int i = 0; i < keep; ++i) {
      logs.push_back(std::log10(std::max(res[i], 1e-20)));
      fail |= !(res[i] <= kFailResidual);
    }
    failures += fail;
    int accepted = static_cast<int>(std::count_if(res.begin(), res.end(), [](double x) { return x <= kFailResidual; }));
    rep.n_solutions_histogram[accepted]++;
  }
  rep.fail_pct = 100.0 * failures / trials;
  if (!logs.empty()) {
    double s = 0;
    for (double x : logs) s += x;
    rep.mean_log10 = s / logs.size();
    std::sort(logs.begin(), logs.end());
    std::size_t h = logs.size() / 2;
    rep.median_log10 = logs.size() % 2 ? logs[h] : 0.5 * (logs[h - 1] + logs[h]);
  }
  if (timing && !times.empty()) {
    std::sort(times.begin(), times.end());
    rep.p50_us = times[times.size() / 2];
    rep.p95_us = times[std::min(times.size() - 1, static_cast<std::size_t>(0.95 * times.size()))];
  }
  return rep;
}

inline Json report_to_json(const BenchReport& r) {
  Json j;
  j["trials"] = r.trials;
  j["mean_log10"] = r.mean_log10;
  j["median_log10"] = r.median_log10;
  j["fail_pct"] = r.fail_pct;
  Json h = Json::object();
  for (const auto& [k, v] : r.n_solutions_histogram) h[std::to_string(k)] = v;
  j["n_solutions_histogram"] = h;
  if (r.p50_us)
    j["timing_us"] = {{"p50", *r.p50_us}, {"p95", *r.p95_us}};
  else
    j["timing_us"] = nullptr;
  return j;
}

}  // namespace sparseres
