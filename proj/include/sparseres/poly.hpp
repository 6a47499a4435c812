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
#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sparseres/errors.hpp"

namespace sparseres {

using Complex = std::complex<double>;

// Exact fraction with 64-bit parts, used for literal coefficients and shifts.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {  // NOLINT
    if (den == 0) throw PreconditionError("rational with zero denominator");
    if (den < 0) num = -num, den = -den;
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) num /= g, den /= g;
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_zero() const { return num == 0; }

  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den);
  }
  friend Rational operator-(const Rational& a) { return Rational(-a.num, a.den); }
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 l = static_cast<__int128>(a.num) * b.den;
    __int128 r = static_cast<__int128>(b.num) * a.den;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  // Accepts "7", "-3/4" and plain decimals such as "0.125" or "1e-3".
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos)
      return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    std::size_t epos = s.find_first_of("eE");
    std::string mant = s.substr(0, epos);
    int exp10 = epos == std::string::npos ? 0 : std::stoi(s.substr(epos + 1));
    bool neg = !mant.empty() && mant[0] == '-';
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant = mant.substr(1);
    std::int64_t n = 0;
    int frac = 0;
    bool seen_dot = false;
    bool seen_digit = false;
    for (char ch : mant) {
      if (ch == '.') {
        if (seen_dot) throw ParseError("malformed number '" + s + "'");
        seen_dot = true;
        continue;
      }
      if (ch < '0' || ch > '9') throw ParseError("malformed number '" + s + "'");
      seen_digit = true;
      if (n > (INT64_MAX - 9) / 10) throw ParseError("number too long '" + s + "'");
      n = n * 10 + (ch - '0');
      if (seen_dot) ++frac;
    }
    if (!seen_digit) throw ParseError("malformed number '" + s + "'");
    exp10 -= frac;
    std::int64_t den = 1;
    for (; exp10 > 0; --exp10) n *= 10;
    for (; exp10 < 0; ++exp10) den *= 10;
    return Rational(neg ? -n : n, den);
  }

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

// Exponent vector alpha of x^alpha. Comparison operators give a plain
// lexicographic order on the vector, which is only meant for containers.
struct Monomial {
  std::vector<int> exps;

  Monomial() = default;
  explicit Monomial(std::vector<int> e) : exps(std::move(e)) {}
  static Monomial one(int n) { return Monomial(std::vector<int>(n, 0)); }
  static Monomial var(int n, int i) {
    Monomial m = one(n);
    m.exps[i] = 1;
    return m;
  }

  int size() const { return static_cast<int>(exps.size()); }
  int degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }

  bool divides(const Monomial& o) const {
    for (int i = 0; i < size(); ++i)
      if (exps[i] > o.exps[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (int i = 0; i < r.size(); ++i) r.exps[i] += b.exps[i];
    return r;
  }
  // Caller guarantees b divides a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (int i = 0; i < r.size(); ++i) r.exps[i] -= b.exps[i];
    return r;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  template <typename T>
  T eval(const std::vector<T>& x) const {
    T r(1);
    for (int i = 0; i < size(); ++i)
      for (int e = 0; e < exps[i]; ++e) r *= x[i];
    return r;
  }
};

enum class OrderKind { kGrevlex, kGrlex, kLex };

// Strict total order on monomials. perm lists variables from most to least
// significant; an empty perm means natural order.
struct MonomialOrder {
  OrderKind kind = OrderKind::kGrevlex;
  std::vector<int> perm;

  static MonomialOrder parse(const std::string& name) {
    if (name == "grevlex") return {OrderKind::kGrevlex, {}};
    if (name == "grlex") return {OrderKind::kGrlex, {}};
    if (name == "lex") return {OrderKind::kLex, {}};
    throw ParseError("unknown monomial order '" + name + "'");
  }
  std::string name() const {
    switch (kind) {
      case OrderKind::kGrevlex: return "grevlex";
      case OrderKind::kGrlex: return "grlex";
      default: return "lex";
    }
  }

  // True when a < b.
  bool less(const Monomial& a, const Monomial& b) const {
    int n = a.size();
    auto at = [&](const Monomial& m, int i) { return m.exps[perm.empty() ? i : perm[i]]; };
    if (kind != OrderKind::kLex) {
      int da = a.degree(), db = b.degree();
      if (da != db) return da < db;
    }
    if (kind == OrderKind::kGrevlex) {
      for (int i = n - 1; i >= 0; --i)
        if (at(a, i) != at(b, i)) return at(a, i) > at(b, i);
      return false;
    }
    for (int i = 0; i < n; ++i)
      if (at(a, i) != at(b, i)) return at(a, i) < at(b, i);
    return false;
  }

  // Sorts largest first.
  void sort_desc(std::vector<Monomial>& v) const {
    std::sort(v.begin(), v.end(), [&](const Monomial& a, const Monomial& b) { return less(b, a); });
  }
};

// Symbolic coefficient: scale * value(slot), or the bare constant when slot is empty.
struct Coefficient {
  std::string slot;
  Rational scale{1};

  bool is_constant() const { return slot.empty(); }
  friend bool operator==(const Coefficient&, const Coefficient&) = default;
};

struct Term {
  Coefficient coeff;
  Monomial mono;
  friend bool operator==(const Term&, const Term&) = default;
};

struct PolynomialTemplate {
  std::vector<Term> terms;
  friend bool operator==(const PolynomialTemplate&, const PolynomialTemplate&) = default;

  // Index of the term carrying monomial m, or -1.
  int find(const Monomial& m) const {
    for (std::size_t i = 0; i < terms.size(); ++i)
      if (terms[i].mono == m) return static_cast<int>(i);
    return -1;
  }
};

struct SystemTemplate {
  int n_vars = 0;
  std::vector<std::string> var_names;
  std::vector<PolynomialTemplate> polys;
  std::optional<int> root_count;

  int m() const { return static_cast<int>(polys.size()); }
  friend bool operator==(const SystemTemplate&, const SystemTemplate&) = default;

  std::set<std::string> slots() const {
    std::set<std::string> s;
    for (const auto& p : polys)
      for (const auto& t : p.terms)
        if (!t.coeff.is_constant()) s.insert(t.coeff.slot);
    return s;
  }
};

using CoefficientAssignment = std::map<std::string, double>;

// Reserved slot of the hidden variable in the extra polynomial x_k - u0.
inline const std::string kHiddenSlot = "u0";

inline void validate(const SystemTemplate& sys) {
  if (sys.n_vars < 1) throw DimensionError("system needs at least one variable");
  if (static_cast<int>(sys.var_names.size()) != sys.n_vars)
    throw DimensionError("variable name count differs from n_vars");
  for (std::size_t i = 0; i < sys.polys.size(); ++i) {
    const auto& p = sys.polys[i];
    if (p.terms.empty()) throw PreconditionError("polynomial " + std::to_string(i) + " has no terms");
    std::set<Monomial> seen;
    std::set<std::string> seen_slots;
    for (const auto& t : p.terms) {
      if (t.mono.size() != sys.n_vars)
        throw DimensionError("exponent vector of length " + std::to_string(t.mono.size()) +
                             " in a system of " + std::to_string(sys.n_vars) + " variables");
      for (int e : t.mono.exps)
        if (e < 0) throw PreconditionError("negative exponent");
      if (!seen.insert(t.mono).second)
        throw PreconditionError("duplicate monomial in polynomial " + std::to_string(i));
      if (!t.coeff.is_constant() && !seen_slots.insert(t.coeff.slot).second)
        throw PreconditionError("slot '" + t.coeff.slot + "' repeated in polynomial " +
                                std::to_string(i));
    }
  }
}

inline std::vector<Monomial> support(const PolynomialTemplate& f) {
  std::vector<Monomial> s;
  s.reserve(f.terms.size());
  for (const auto& t : f.terms) s.push_back(t.mono);
  std::sort(s.begin(), s.end());
  return s;
}

// x^a * f
inline PolynomialTemplate shift(const PolynomialTemplate& f, const Monomial& a) {
  PolynomialTemplate g = f;
  for (auto& t : g.terms) t.mono = t.mono * a;
  return g;
}

inline double coefficient_value(const Coefficient& c, const CoefficientAssignment& coeffs) {
  if (c.is_constant()) return c.scale.value();
  auto it = coeffs.find(c.slot);
  if (it == coeffs.end()) throw MissingSlotError(c.slot);
  return c.scale.value() * it->second;
}

inline Complex evaluate(const PolynomialTemplate& f, const CoefficientAssignment& coeffs,
                        const std::vector<Complex>& point) {
  Complex s = 0;
  for (const auto& t : f.terms) s += coefficient_value(t.coeff, coeffs) * t.mono.eval(point);
  return s;
}

inline double normalized_residual(const SystemTemplate& sys, const CoefficientAssignment& coeffs,
                                  const std::vector<Complex>& point) {
  double worst = 0;
  for (const auto& f : sys.polys) {
    Complex s = 0;
    double scale = 1;
    for (const auto& t : f.terms) {
      Complex v = coefficient_value(t.coeff, coeffs) * t.mono.eval(point);
      s += v;
      scale += std::abs(v);
    }
    worst = std::max(worst, std::abs(s) / scale);
  }
  return worst;
}

struct Extension {
  std::vector<std::vector<Monomial>> T;  // multipliers per polynomial, container order
  std::set<Monomial> B;                  // mon(F'), a subset of the requested set
};

// Multipliers x^a with mon(x^a f_i) inside Bp, and the monomials they reach.
inline Extension extend_system(const std::vector<PolynomialTemplate>& F,
                               const std::set<Monomial>& Bp) {
  if (Bp.empty()) throw PreconditionError("extend_system needs a nonempty monomial set");
  Extension ext;
  ext.T.resize(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) {
    const Monomial& anchor = F[i].terms.front().mono;
    for (const auto& b : Bp) {
      if (!anchor.divides(b)) continue;
      Monomial a = b / anchor;
      bool inside = true;
      for (const auto& t : F[i].terms)
        if (!Bp.count(t.mono * a)) {
          inside = false;
          break;
        }
      if (!inside) continue;
      ext.T[i].push_back(a);
      for (const auto& t : F[i].terms) ext.B.insert(t.mono * a);
    }
  }
  return ext;
}

inline Extension extend_system(const SystemTemplate& F, const std::set<Monomial>& Bp) {
  return extend_system(F.polys, Bp);
}

inline std::string monomial_string(const Monomial& m, const std::vector<std::string>& names) {
  std::string s;
  for (int i = 0; i < m.size(); ++i) {
    if (m.exps[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (m.exps[i] > 1) s += "^" + std::to_string(m.exps[i]);
  }
  return s.empty() ? "1" : s;
}

}  // namespace sparseres
