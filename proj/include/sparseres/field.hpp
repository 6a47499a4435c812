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

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "sparseres/poly.hpp"

namespace sparseres {

using u64 = std::uint64_t;

inline u64 mulmod(u64 a, u64 b, u64 p) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}

inline u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  for (; e; e >>= 1, a = mulmod(a, a, p))
    if (e & 1) r = mulmod(r, a, p);
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s && comp; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) comp = false;
    }
    if (comp) return false;
  }
  return true;
}

inline u64 previous_prime(u64 n) {
  for (u64 q = n - 1; q > 1; --q)
    if (is_prime(q)) return q;
  return 2;
}

inline constexpr std::array<u64, 3> kTestPrimes = {2147483647ull, 2147483629ull, 2147483587ull};

struct PrimeField {
  u64 p;

  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return mulmod(a, b, p); }
  u64 inv(u64 a) const { return powmod(a, p - 2, p); }
  u64 neg(u64 a) const { return a == 0 ? 0 : p - a; }
  u64 from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
  }
  u64 from_rational(const Rational& q) const { return mul(from_int(q.num), inv(from_int(q.den))); }
  u64 random(std::mt19937_64& rng) const { return std::uniform_int_distribution<u64>(1, p - 1)(rng); }
};

// Dense row-major matrix over Z/p.
struct ModMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<u64> a;

  ModMatrix() = default;
  ModMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  u64& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  u64 operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  friend bool operator==(const ModMatrix&, const ModMatrix&) = default;
};

struct ModRref {
  ModMatrix rref;
  std::vector<int> pivots;
};

// Gauss-Jordan over the field; any nonzero entry is an exact pivot.
inline ModRref gj_eliminate(ModMatrix M, const PrimeField& F) {
  ModRref out;
  int row = 0;
  for (int c = 0; c < M.cols && row < M.rows; ++c) {
    int p = row;
    while (p < M.rows && M(p, c) == 0) ++p;
    if (p == M.rows) continue;
    if (p != row)
      for (int j = 0; j < M.cols; ++j) std::swap(M(p, j), M(row, j));
    u64 inv = F.inv(M(row, c));
    for (int j = c; j < M.cols; ++j) M(row, j) = F.mul(M(row, j), inv);
    for (int i = 0; i < M.rows; ++i) {
      if (i == row || M(i, c) == 0) continue;
      u64 f = M(i, c);
      for (int j = c; j < M.cols; ++j)
        if (M(row, j)) M(i, j) = F.sub(M(i, j), F.mul(f, M(row, j)));
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.rref = std::move(M);
  return out;
}

// Row echelon elimination only; cheaper than the full reduction.
inline int exact_rank(ModMatrix M, const PrimeField& F) {
  int row = 0;
  for (int c = 0; c < M.cols && row < M.rows; ++c) {
    int p = row;
    while (p < M.rows && M(p, c) == 0) ++p;
    if (p == M.rows) continue;
    if (p != row)
      for (int j = c; j < M.cols; ++j) std::swap(M(p, j), M(row, j));
    u64 inv = F.inv(M(row, c));
    for (int i = row + 1; i < M.rows; ++i) {
      if (M(i, c) == 0) continue;
      u64 f = F.mul(M(i, c), inv);
      for (int j = c; j < M.cols; ++j)
        if (M(row, j)) M(i, j) = F.sub(M(i, j), F.mul(f, M(row, j)));
    }
    ++row;
  }
  return row;
}

// Random field values for every slot of a system (and for the hidden slot).
inline std::map<std::string, u64> random_field_assignment(const std::set<std::string>& slots,
                                                           const PrimeField& F,
                                                           std::mt19937_64& rng) {
  std::map<std::string, u64> a;
  for (const auto& s : slots) a[s] = F.random(rng);
  a[kHiddenSlot] = F.random(rng);
  return a;
}

inline u64 coefficient_mod(const Coefficient& c, const std::map<std::string, u64>& vals,
                           const PrimeField& F) {
  u64 s = F.from_rational(c.scale);
  if (c.is_constant()) return s;
  return F.mul(s, vals.at(c.slot));
}

}  // namespace sparseres
