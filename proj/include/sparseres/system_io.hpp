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

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sparseres/poly.hpp"

namespace sparseres {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [l, c] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("malformed document", l, c);
  }
}

// Recursive-descent reader for strings like "a*x^2 - 3*b*x*y + 1/4".
class ExprParser {
 public:
  ExprParser(const std::string& s, const std::vector<std::string>& vars, int line)
      : s_(s), vars_(vars), line_(line) {}

  PolynomialTemplate parse() {
    PolynomialTemplate p;
    skip();
    bool first = true;
    while (pos_ < s_.size()) {
      Rational sign(1);
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = Rational(-1);
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      p.terms.push_back(term(sign));
      first = false;
      skip();
    }
    if (p.terms.empty()) fail("empty polynomial");
    return p;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, static_cast<int>(pos_) + 1);
  }

  Term term(Rational scale) {
    Term t;
    t.mono = Monomial::one(static_cast<int>(vars_.size()));
    bool any = false;
    for (;;) {
      skip();
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        scale = scale * number();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string id = ident();
        auto it = std::find(vars_.begin(), vars_.end(), id);
        if (it != vars_.end()) {
          int e = 1;
          skip();
          if (peek() == '^') {
            ++pos_;
            skip();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent must be a non-negative integer");
            e = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) e = e * 10 + (s_[pos_++] - '0');
          }
          t.mono.exps[it - vars_.begin()] += e;
        } else {
          if (!t.coeff.slot.empty()) fail("two coefficient slots in one term");
          if (id == kHiddenSlot) fail("slot name '" + id + "' is reserved");
          t.coeff.slot = id;
        }
      } else {
        fail("expected a number, slot or variable");
      }
      any = true;
      skip();
      if (peek() != '*') break;
      ++pos_;
    }
    if (!any) fail("empty term");
    t.coeff.scale = scale;
    return t;
  }

  std::string ident() {
    std::size_t b = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(b, pos_ - b);
  }

  Rational number() {
    std::size_t b = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    std::string tok = s_.substr(b, pos_ - b);
    skip();
    if (peek() == '/') {
      ++pos_;
      skip();
      std::size_t d = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (d == pos_) fail("expected denominator");
      Rational den = Rational::parse(s_.substr(d, pos_ - d));
      Rational num = Rational::parse(tok);
      return Rational(num.num * den.den, num.den * den.num);
    }
    try {
      return Rational::parse(tok);
    } catch (const ParseError&) {
      fail("malformed number");
    }
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  int line_;
  std::size_t pos_ = 0;
};

// Line of the n-th occurrence of a JSON string literal, for error positions.
inline int line_of(const std::string& text, const std::string& needle) {
  auto at = text.find(needle);
  return at == std::string::npos ? 0 : line_col(text, at).first;
}

inline Coefficient coeff_from_json(const Json& j) {
  Coefficient c;
  if (j.is_number_integer()) {
    c.scale = Rational(j.get<std::int64_t>());
  } else if (j.is_number()) {
    c.scale = Rational::parse(j.dump());
  } else if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (!s.empty() && s[0] == '-') {
      c.scale = Rational(-1);
      s = s.substr(1);
    }
    if (s.empty()) throw ParseError("empty coefficient slot");
    if (s == kHiddenSlot) throw ParseError("slot name '" + s + "' is reserved");
    c.slot = s;
  } else {
    throw ParseError("coefficient must be a slot name or a number");
  }
  return c;
}

}  // namespace detail

// System file: {"variables": [...], "polynomials": [...], "roots": r?}. Each
// polynomial is either a list of {"coeff", "exps"} terms or an expression string.
inline SystemTemplate parse_system(const std::string& text) {
  Json doc = detail::parse_json(text);
  if (!doc.is_object() || !doc.contains("variables") || !doc.contains("polynomials"))
    throw ParseError("system needs 'variables' and 'polynomials'", 1, 1);
  SystemTemplate sys;
  try {
    sys.var_names = doc.at("variables").get<std::vector<std::string>>();
  } catch (const Json::exception&) {
    throw ParseError("'variables' must be a list of names");
  }
  sys.n_vars = static_cast<int>(sys.var_names.size());
  if (doc.contains("roots")) sys.root_count = doc.at("roots").get<int>();
  for (const auto& pj : doc.at("polynomials")) {
    if (pj.is_string()) {
      std::string expr = pj.get<std::string>();
      int line = detail::line_of(text, expr);
      sys.polys.push_back(detail::ExprParser(expr, sys.var_names, line).parse());
      continue;
    }
    if (!pj.is_array()) throw ParseError("polynomial must be a term list or an expression");
    PolynomialTemplate p;
    for (const auto& tj : pj) {
      if (!tj.is_object() || !tj.contains("coeff") || !tj.contains("exps"))
        throw ParseError("term needs 'coeff' and 'exps'");
      Term t;
      t.coeff = detail::coeff_from_json(tj.at("coeff"));
      for (const auto& e : tj.at("exps")) {
        if (!e.is_number_integer() || e.get<long long>() < 0)
          throw ParseError("exponents must be non-negative integers");
        t.mono.exps.push_back(e.get<int>());
      }
      p.terms.push_back(std::move(t));
    }
    sys.polys.push_back(std::move(p));
  }
  validate(sys);
  return sys;
}

inline Json system_to_json(const SystemTemplate& sys) {
  Json doc;
  doc["variables"] = sys.var_names;
  Json polys = Json::array();
  for (const auto& p : sys.polys) {
    Json terms = Json::array();
    for (const auto& t : p.terms) {
      Json tj;
      if (t.coeff.is_constant()) {
        tj["coeff"] = t.coeff.scale.den == 1 ? Json(t.coeff.scale.num) : Json(t.coeff.scale.str());
      } else {
        tj["coeff"] = t.coeff.slot;
        if (t.coeff.scale != Rational(1)) tj["scale"] = t.coeff.scale.str();
      }
      tj["exps"] = t.mono.exps;
      terms.push_back(tj);
    }
    polys.push_back(terms);
  }
  doc["polynomials"] = polys;
  if (sys.root_count) doc["roots"] = *sys.root_count;
  return doc;
}

// Inverse of system_to_json, which may carry a "scale" on slot terms.
inline SystemTemplate system_from_json(const Json& doc) {
  SystemTemplate sys;
  sys.var_names = doc.at("variables").get<std::vector<std::string>>();
  sys.n_vars = static_cast<int>(sys.var_names.size());
  if (doc.contains("roots")) sys.root_count = doc.at("roots").get<int>();
  for (const auto& pj : doc.at("polynomials")) {
    PolynomialTemplate p;
    for (const auto& tj : pj) {
      Term t;
      const Json& cj = tj.at("coeff");
      if (cj.is_string() && tj.contains("scale")) {
        t.coeff.slot = cj.get<std::string>();
        t.coeff.scale = Rational::parse(tj.at("scale").get<std::string>());
      } else if (cj.is_string() && cj.get<std::string>().find('/') != std::string::npos) {
        t.coeff.scale = Rational::parse(cj.get<std::string>());
      } else {
        t.coeff = detail::coeff_from_json(cj);
      }
      t.mono.exps = tj.at("exps").get<std::vector<int>>();
      p.terms.push_back(std::move(t));
    }
    sys.polys.push_back(std::move(p));
  }
  validate(sys);
  return sys;
}

// Instance file: flat map of slot name to number.
inline CoefficientAssignment parse_instance(const std::string& text) {
  Json doc = detail::parse_json(text);
  if (!doc.is_object()) throw ParseError("instance must be a map of slot to number", 1, 1);
  CoefficientAssignment a;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!it.value().is_number()) throw ParseError("value of slot '" + it.key() + "' is not a number");
    a[it.key()] = it.value().get<double>();
  }
  return a;
}

// Indented JSON that keeps arrays of scalars on one line, so plan files
// stay short and diff well.
inline void dump_json(const Json& j, std::string& out, int indent = 0) {
  auto flat = [](const Json& a) {
    for (const auto& e : a)
      if (e.is_structured()) return false;
    return true;
  };
  std::string pad(indent + 2, ' ');
  if (j.is_array() && !flat(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      dump_json(j[i], out, indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "]";
  } else if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += pad + Json(it.key()).dump() + ": ";
      dump_json(it.value(), out, indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "}";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

inline std::string dump_json(const Json& j) {
  std::string s;
  dump_json(j, s);
  return s + "\n";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("file not found: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

}  // namespace sparseres
