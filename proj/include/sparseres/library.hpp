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

// Built-in test problems, addressable from the CLI as lib:<name>. The texts
// mirror data/systems/*.sys.

#include <string>
#include <string_view>
#include <vector>

#include "sparseres/errors.hpp"
#include "sparseres/runtime.hpp"
#include "sparseres/system_io.hpp"

namespace sparseres {

struct LibraryEntry {
  std::string name;
  std::string text;
  std::string note;
  SystemTemplate system() const { return parse_system(text); }
  InstanceGenerator generator() const { return unit_normal_generator(system()); }
};

inline const std::vector<LibraryEntry>& library() {
  static const std::vector<LibraryEntry> entries = {
      {"univariate", R"({
  "variables": ["x"],
  "polynomials": ["a*x^2 + b*x + c"],
  "roots": 2
})",
       "quadratic in one variable"},
      {"linear", R"({
  "variables": ["x"],
  "polynomials": ["a*x + b"],
  "roots": 1
})",
       "one linear equation"},
      {"two_conics", R"({
  "variables": ["x", "y"],
  "polynomials": [
    "a1*x^2 + a2*y^2 + a3",
    "b1*x*y + b2"
  ],
  "roots": 4
})",
       "axis-aligned conic and hyperbola"},
      {"three_quadrics", R"({
  "variables": ["x", "y", "z"],
  "polynomials": [
    "a0*x^2 + a1*y^2 + a2*z^2 + a3*x*y + a4*x*z + a5*y*z + a6*x + a7*y + a8*z + a9",
    "b0*x^2 + b1*y^2 + b2*z^2 + b3*x*y + b4*x*z + b5*y*z + b6*x + b7*y + b8*z + b9",
    "c0*x^2 + c1*y^2 + c2*z^2 + c3*x*y + c4*x*z + c5*y*z + c6*x + c7*y + c8*z + c9"
  ],
  "roots": 8
})",
       "dense quadrics in three variables"},
      {"example1", R"({
  "variables": ["x1", "x2"],
  "polynomials": [
    [{"coeff": "c1_1", "exps": [3, 3]}, {"coeff": "c1_2", "exps": [2, 3]},
     {"coeff": "c1_3", "exps": [3, 2]}, {"coeff": "c1_4", "exps": [2, 2]},
     {"coeff": "c1_5", "exps": [0, 3]}, {"coeff": "c1_6", "exps": [2, 1]},
     {"coeff": "c1_7", "exps": [0, 2]}, {"coeff": "c1_8", "exps": [1, 1]},
     {"coeff": "c1_9", "exps": [2, 0]}, {"coeff": "c1_10", "exps": [0, 1]}],
    [{"coeff": "c2_1", "exps": [2, 0]}, {"coeff": "c2_2", "exps": [0, 1]},
     {"coeff": "c2_3", "exps": [1, 0]}, {"coeff": "c2_4", "exps": [0, 0]}]
  ]
})",
       "sparse bivariate pair with a bicubic member"},
      {"origin_root", R"({
  "variables": ["x", "y"],
  "polynomials": [
    "a1*x*y + a2*x + a3*y",
    "b1*x^2 + b2*y^2 + b3*x + b4*y"
  ]
})",
       "every instance vanishes at the origin"},
  };
  return entries;
}

inline const LibraryEntry& library_entry(std::string_view name) {
  for (const auto& e : library())
    if (e.name == name) return e;
  throw PreconditionError("unknown library system: " + std::string(name));
}

// "lib:<name>" selects a built-in entry, anything else is a file path.
inline SystemTemplate load_system(const std::string& spec) {
  if (spec.rfind("lib:", 0) == 0) return library_entry(spec.substr(4)).system();
  return parse_system(read_file(spec));
}

}  // namespace sparseres
