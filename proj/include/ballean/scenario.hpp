// Copyright 2026 The ballean-lab Authors
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

// Scenario files: a line-oriented key/value grammar.
//
//   # comment
//   family = hyper-of:f_ballean
//   universe_size = 8
//   radius_budget = 2
//   witness_horizon = 4
//
//   check find_isolated_balls
//     alpha = {0,1,2}
//     expect = nonempty
//
// Top-level keys come first; each `check <name>` line opens a stanza and
// the `key = value` lines after it belong to that check. Values are
// integers, rationals (p/q), sets {a,b}, lists [v, ...] and words, where a
// word may take arguments: layer(0). `output` takes the rest of the line.

#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ballean/ballean.hpp"

namespace ballean {

struct Position {
  std::size_t line = 0;
  std::size_t column = 0;
};

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(Position pos, const std::string& message)
      : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
        pos_(pos),
        message_(message) {}
  Position position() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  Position pos_;
  std::string message_;
};

struct Value {
  enum class Kind { integer, rational, set, list, word };
  Kind kind = Kind::integer;
  std::int64_t integer = 0;
  Rational rational{0};
  std::vector<std::int64_t> members;  // set, sorted and unique
  std::vector<Value> items;           // list items or word arguments
  std::string word;
  bool call = false;  // word written with parentheses

  static Value of_integer(std::int64_t v) {
    Value out;
    out.integer = v;
    out.rational = Rational(v);
    return out;
  }
  static Value of_rational(Rational r) {
    if (r.denominator() == 1) return of_integer(r.numerator());
    Value out;
    out.kind = Kind::rational;
    out.rational = r;
    return out;
  }
  static Value of_set(std::vector<std::int64_t> ms) {
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    Value out;
    out.kind = Kind::set;
    out.members = std::move(ms);
    return out;
  }
  static Value of_list(std::vector<Value> vs) {
    Value out;
    out.kind = Kind::list;
    out.items = std::move(vs);
    return out;
  }
  static Value of_word(std::string w, std::vector<Value> args = {}, bool call = false) {
    Value out;
    out.kind = Kind::word;
    out.word = std::move(w);
    out.items = std::move(args);
    out.call = call || !out.items.empty();
    return out;
  }

  bool is_number() const { return kind == Kind::integer || kind == Kind::rational; }
  bool is_word(std::string_view w) const { return kind == Kind::word && !call && word == w; }

  friend bool operator==(const Value& a, const Value& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::integer: return a.integer == b.integer;
      case Kind::rational: return a.rational == b.rational;
      case Kind::set: return a.members == b.members;
      case Kind::list: return a.items == b.items;
      case Kind::word: return a.word == b.word && a.call == b.call && a.items == b.items;
    }
    return false;
  }
};

inline std::string format_value(const Value& v) {
  std::string out;
  auto join = [&](const auto& xs, auto&& fmt) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ", ";
      out += fmt(xs[i]);
    }
  };
  switch (v.kind) {
    case Value::Kind::integer: return std::to_string(v.integer);
    case Value::Kind::rational: return to_string(v.rational);
    case Value::Kind::set:
      out = "{";
      for (std::size_t i = 0; i < v.members.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v.members[i]);
      }
      return out + "}";
    case Value::Kind::list:
      out = "[";
      join(v.items, format_value);
      return out + "]";
    case Value::Kind::word:
      out = v.word;
      if (v.call) {
        out += "(";
        join(v.items, format_value);
        out += ")";
      }
      return out;
  }
  return out;
}

inline void to_json(nlohmann::json& j, const Value& v) {
  switch (v.kind) {
    case Value::Kind::integer: j = v.integer; return;
    case Value::Kind::rational: j = to_string(v.rational); return;
    case Value::Kind::set: j = v.members; return;
    default: j = format_value(v); return;
  }
}

struct CheckSpec {
  std::string name;
  std::map<std::string, Value> params;
  Position position;
  std::map<std::string, Position> param_positions;

  const Value* param(const std::string& key) const {
    auto it = params.find(key);
    return it == params.end() ? nullptr : &it->second;
  }
  Position where(const std::string& key) const {
    auto it = param_positions.find(key);
    return it == param_positions.end() ? position : it->second;
  }
  friend bool operator==(const CheckSpec& a, const CheckSpec& b) { return a.name == b.name && a.params == b.params; }
};

struct Scenario {
  std::string family;
  std::optional<std::string> metric;
  Truncation truncation{};
  std::optional<std::size_t> compare_universe_size;
  std::vector<Rational> extra_radii;
  std::optional<std::string> output;
  std::vector<CheckSpec> checks;

  /// The base family: `family` without a hyper-of: prefix.
  std::string base_family() const {
    constexpr std::string_view prefix = "hyper-of:";
    return is_hyper() ? family.substr(prefix.size()) : family;
  }
  bool is_hyper() const { return family.rfind("hyper-of:", 0) == 0; }
  std::size_t compare_size() const { return compare_universe_size.value_or(2 * truncation.universe_size); }

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.family == b.family && a.metric == b.metric && a.truncation.universe_size == b.truncation.universe_size &&
           a.truncation.radius_budget == b.truncation.radius_budget &&
           a.truncation.witness_horizon == b.truncation.witness_horizon &&
           a.compare_universe_size == b.compare_universe_size && a.extra_radii == b.extra_radii &&
           a.output == b.output && a.checks == b.checks;
  }
};

// --- Check catalog ----------------------------------------------------------

enum class ParamType { radius, element, elements, natural, finset, word };

inline std::string_view to_string(ParamType t) {
  switch (t) {
    case ParamType::radius: return "radius";
    case ParamType::element: return "element";
    case ParamType::elements: return "elements";
    case ParamType::natural: return "natural";
    case ParamType::finset: return "finset";
    case ParamType::word: return "word";
  }
  return "?";
}

/// Which families a check accepts.
enum class Applies { any, hyper, hyper_of_f, cube };

struct ParamSpec {
  std::string name;
  ParamType type;
  bool required;
  std::vector<std::string> choices = {};  // for word parameters
};

struct CheckInfo {
  std::string name;
  Applies applies;
  std::vector<ParamSpec> params;
  std::string summary;

  const ParamSpec* param(const std::string& key) const {
    for (const auto& p : params) {
      if (p.name == key) return &p;
    }
    return nullptr;
  }
};

inline const std::vector<CheckInfo>& check_catalog() {
  static const std::vector<CheckInfo> catalog = {
      {"are_close", Applies::any, {{"left", ParamType::elements, true}, {"right", ParamType::elements, true}},
       "search a radius making two sets mutually close"},
      {"asymorphism", Applies::hyper_of_f,
       {{"map", ParamType::word, true, {"chi", "mn_to_q"}}, {"n", ParamType::natural, false}},
       "certify chi on {H : 0 in H} or mn_to_q on M_n against the macrocube"},
      {"bounded_geometry", Applies::any, {}, "search a discreteness radius with stable bounds across two sizes"},
      {"check_axioms", Applies::any, {}, "reflexivity, composition and connectivity at the truncation"},
      {"embedding_identity", Applies::cube, {{"K", ParamType::finset, true}, {"n", ParamType::natural, true}},
       "compare the embedded hyperball with the S-part of the cube ball"},
      {"find_isolated_balls", Applies::any,
       {{"alpha", ParamType::radius, true},
        {"beyond", ParamType::elements, false},
        {"expect", ParamType::word, false, {"any", "empty", "nonempty"}}},
       "list elements whose ball is a singleton"},
      {"hyperball", Applies::hyper, {{"center", ParamType::element, true}, {"radius", ParamType::radius, true}},
       "enumerate one hyperball"},
      {"is_alpha_discrete", Applies::any, {{"set", ParamType::elements, true}, {"alpha", ParamType::radius, true}},
       "decide alpha-discreteness of a set"},
      {"is_bounded", Applies::any, {{"set", ParamType::elements, true}}, "search a ball covering a set"},
      {"is_large", Applies::any, {{"set", ParamType::elements, true}}, "search a radius whose neighbourhood is everything"},
      {"kn_scatter", Applies::hyper_of_f,
       {{"n", ParamType::natural, true}, {"beta", ParamType::finset, true}, {"set", ParamType::elements, false}},
       "produce and replay a scatteredness witness for a family of n-sets"},
      {"max_discrete_in_ball", Applies::any,
       {{"center", ParamType::element, true}, {"beta", ParamType::radius, true}, {"alpha", ParamType::radius, true}},
       "largest alpha-discrete subset of one ball"},
      {"scattered_witness", Applies::any,
       {{"set", ParamType::elements, true},
        {"alpha", ParamType::radius, true},
        {"beta", ParamType::radius, true},
        {"y", ParamType::element, true}},
       "evaluate the annulus condition at one member"},
      {"ulf_profile", Applies::any, {{"centers", ParamType::elements, false}},
       "per-radius maximum ball size; compared across sizes when compare_universe_size is set"},
  };
  return catalog;
}

inline const CheckInfo* find_check(std::string_view name) {
  for (const auto& c : check_catalog()) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

inline std::string_view to_string(Applies a) {
  switch (a) {
    case Applies::any: return "any family";
    case Applies::hyper: return "hyper-of:* families";
    case Applies::hyper_of_f: return "hyper-of:f_ballean";
    case Applies::cube: return "q_ballean";
  }
  return "?";
}

inline bool family_accepts(Applies a, const Scenario& s) {
  switch (a) {
    case Applies::any: return true;
    case Applies::hyper: return s.is_hyper();
    case Applies::hyper_of_f: return s.family == "hyper-of:f_ballean";
    case Applies::cube: return s.family == "q_ballean";
  }
  return false;
}

inline const std::vector<std::string>& known_base_families() {
  static const std::vector<std::string> names = {"f_ballean", "q_ballean", "metric", "doubled"};
  return names;
}

inline const std::vector<std::string>& known_metrics() {
  static const std::vector<std::string> names = {"line", "pow2"};
  return names;
}

// --- Parser -------------------------------------------------------------------

namespace detail {

class LineLexer {
 public:
  LineLexer(std::string_view text, std::size_t line, std::size_t column)
      : text_(text), line_(line), base_column_(column) {}

  Position here() const { return {line_, base_column_ + pos_}; }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }

  Value value() {
    skip_space();
    if (pos_ >= text_.size()) fail("expected a value");
    const char c = text_[pos_];
    if (c == '{') return set();
    if (c == '[') {
      ++pos_;
      return Value::of_list(sequence(']'));
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      auto w = word();
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        ++pos_;
        return Value::of_word(std::move(w), sequence(')'), true);
      }
      return Value::of_word(std::move(w));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string word() {
    skip_space();
    const auto start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' || c == '.') {
        ++pos_;
      } else {
        break;
      }
    }
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ScenarioError(here(), msg); }

 private:
  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  std::int64_t integer() {
    skip_space();
    const auto start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    const auto digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (digits == pos_) fail("expected an integer");
    try {
      return std::stoll(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      pos_ = start;
      fail("integer out of range");
    }
  }

  Value number() {
    const auto num = integer();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      const auto at = here();
      const auto den = integer();
      if (den <= 0) throw ScenarioError(at, "denominator must be positive");
      return Value::of_rational(Rational(num, den));
    }
    return Value::of_integer(num);
  }

  Value set() {
    ++pos_;
    std::vector<std::int64_t> ms;
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '}') {
      ++pos_;
      return Value::of_set({});
    }
    while (true) {
      const auto at = here();
      const auto m = integer();
      if (m < 0) throw ScenarioError(at, "set members must be non-negative");
      ms.push_back(m);
      skip_space();
      if (pos_ >= text_.size()) fail("unterminated set");
      if (text_[pos_] == '}') {
        ++pos_;
        return Value::of_set(std::move(ms));
      }
      if (text_[pos_] != ',') fail("expected ',' or '}' in set");
      ++pos_;
    }
  }

  std::vector<Value> sequence(char close) {
    std::vector<Value> out;
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == close) {
      ++pos_;
      return out;
    }
    while (true) {
      out.push_back(value());
      skip_space();
      if (pos_ >= text_.size()) fail(std::string("expected '") + close + "'");
      if (text_[pos_] == close) {
        ++pos_;
        return out;
      }
      if (text_[pos_] != ',') fail(std::string("expected ',' or '") + close + "'");
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t base_column_;
  std::size_t pos_ = 0;
};

inline std::size_t require_natural(const Value& v, Position at, const std::string& key) {
  if (v.kind != Value::Kind::integer || v.integer < 0) throw ScenarioError(at, key + " must be a non-negative integer");
  return static_cast<std::size_t>(v.integer);
}

inline void check_param_type(const ParamSpec& p, const Value& v, Position at) {
  auto bad = [&](const std::string& want) { throw ScenarioError(at, p.name + " must be " + want); };
  switch (p.type) {
    case ParamType::natural:
      if (v.kind != Value::Kind::integer || v.integer < 0) bad("a non-negative integer");
      break;
    case ParamType::finset:
      if (v.kind != Value::Kind::set) bad("a set {a,b,...}");
      break;
    case ParamType::radius:
      if (v.kind == Value::Kind::set) break;
      if (!v.is_number() || v.rational < Rational(0)) bad("a set or a non-negative number");
      break;
    case ParamType::element:
      if (v.kind == Value::Kind::word) bad("an element literal");
      break;
    case ParamType::elements:
      if (v.kind != Value::Kind::list && v.kind != Value::Kind::word) bad("a list [..] or a generator");
      break;
    case ParamType::word:
      if (v.kind != Value::Kind::word || v.call) bad("one of its listed words");
      if (std::find(p.choices.begin(), p.choices.end(), v.word) == p.choices.end()) {
        std::string all;
        for (const auto& c : p.choices) all += (all.empty() ? "" : ", ") + c;
        bad("one of: " + all);
      }
      break;
  }
}

}  // namespace detail

/// Parses and validates a scenario. Every error carries the 1-based line
/// and column of the offending token.
inline Scenario parse_scenario(std::string_view text) {
  Scenario s;
  std::optional<std::size_t> universe, budget, horizon;
  Position family_at{1, 1};
  bool seen_family = false;
  std::map<std::string, Position> seen_top;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    const std::size_t next = end + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::size_t indent = 0;
    while (indent < raw.size() && (raw[indent] == ' ' || raw[indent] == '\t')) ++indent;
    std::string_view body = raw.substr(indent);
    while (!body.empty() && (body.back() == ' ' || body.back() == '\t')) body.remove_suffix(1);
    if (body.empty()) {
      start = next;
      if (end == text.size()) break;
      continue;
    }
    const Position at{line_no, indent + 1};

    if (body.rfind("check", 0) == 0 && (body.size() == 5 || body[5] == ' ' || body[5] == '\t')) {
      detail::LineLexer lex(body.substr(5), line_no, indent + 6);
      if (lex.done()) lex.fail("check needs a name");
      const auto name_at = lex.here();
      CheckSpec c;
      c.name = lex.word();
      c.position = name_at;
      if (!lex.done()) lex.fail("unexpected text after check name");
      if (!find_check(c.name)) throw ScenarioError(name_at, "unknown check '" + c.name + "'");
      s.checks.push_back(std::move(c));
    } else {
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) throw ScenarioError(at, "expected 'key = value' or 'check <name>'");
      std::string_view key = body.substr(0, eq);
      while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.remove_suffix(1);
      if (key.empty()) throw ScenarioError(at, "missing key before '='");
      for (char ch : key) {
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') throw ScenarioError(at, "malformed key");
      }
      const std::string k(key);
      const std::size_t value_col = indent + eq + 2;
      detail::LineLexer lex(body.substr(eq + 1), line_no, value_col);
      if (lex.done()) lex.fail("missing value for " + k);
      const Position vat = lex.here();

      if (!s.checks.empty()) {
        auto& c = s.checks.back();
        const auto* info = find_check(c.name);
        const auto* param_spec = info->param(k);
        if (!param_spec) throw ScenarioError(at, "check " + c.name + " has no parameter '" + k + "'");
        if (c.params.count(k)) throw ScenarioError(at, "duplicate parameter '" + k + "'");
        Value v = lex.value();
        if (!lex.done()) lex.fail("unexpected text after value");
        detail::check_param_type(*param_spec, v, vat);
        c.params.emplace(k, std::move(v));
        c.param_positions.emplace(k, vat);
      } else {
        if (seen_top.count(k)) throw ScenarioError(at, "duplicate key '" + k + "'");
        seen_top.emplace(k, vat);
        if (k == "output") {
          std::string_view rest = body.substr(eq + 1);
          while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
          s.output = std::string(rest);
        } else if (k == "family") {
          s.family = lex.word();
          if (!lex.done()) lex.fail("unexpected text after family");
          family_at = vat;
          seen_family = true;
        } else if (k == "metric") {
          s.metric = lex.word();
          if (!lex.done()) lex.fail("unexpected text after metric");
        } else if (k == "universe_size" || k == "radius_budget" || k == "witness_horizon" ||
                   k == "compare_universe_size") {
          const Value v = lex.value();
          if (!lex.done()) lex.fail("unexpected text after value");
          const auto n = detail::require_natural(v, vat, k);
          if (k == "universe_size") universe = n;
          if (k == "radius_budget") budget = n;
          if (k == "witness_horizon") horizon = n;
          if (k == "compare_universe_size") s.compare_universe_size = n;
        } else if (k == "extra_radii") {
          const Value v = lex.value();
          if (!lex.done()) lex.fail("unexpected text after value");
          if (v.kind != Value::Kind::list) throw ScenarioError(vat, "extra_radii must be a list");
          for (const auto& item : v.items) {
            if (!item.is_number() || item.rational < Rational(0)) {
              throw ScenarioError(vat, "extra_radii members must be non-negative numbers");
            }
            s.extra_radii.push_back(item.rational);
          }
          std::sort(s.extra_radii.begin(), s.extra_radii.end());
          s.extra_radii.erase(std::unique(s.extra_radii.begin(), s.extra_radii.end()), s.extra_radii.end());
        } else {
          throw ScenarioError(at, "unknown key '" + k + "'");
        }
      }
    }
    start = next;
    if (end == text.size()) break;
  }

  // Whole-scenario validation.
  if (!seen_family) throw ScenarioError({1, 1}, "missing 'family'");
  {
    const auto base = s.base_family();
    const auto& fams = known_base_families();
    if (std::find(fams.begin(), fams.end(), base) == fams.end()) {
      throw ScenarioError(family_at, "unknown family '" + s.family + "'");
    }
    if (base == "metric") {
      if (!s.metric) throw ScenarioError(family_at, "metric families need 'metric = line|pow2'");
      const auto& ms = known_metrics();
      if (std::find(ms.begin(), ms.end(), *s.metric) == ms.end()) {
        throw ScenarioError(seen_top.at("metric"), "unknown metric '" + *s.metric + "'");
      }
    } else {
      if (s.metric) throw ScenarioError(seen_top.at("metric"), "'metric' only applies to metric families");
      if (!s.extra_radii.empty()) {
        throw ScenarioError(seen_top.at("extra_radii"), "'extra_radii' only applies to metric families");
      }
    }
  }
  if (!universe) throw ScenarioError({line_no, 1}, "missing 'universe_size'");
  if (*universe == 0) throw ScenarioError(seen_top.at("universe_size"), "universe_size must be at least 1");
  s.truncation.universe_size = *universe;
  s.truncation.radius_budget = budget.value_or(0);
  s.truncation.witness_horizon = horizon.value_or(s.truncation.radius_budget);
  if (s.truncation.witness_horizon < s.truncation.radius_budget) {
    throw ScenarioError(seen_top.count("witness_horizon") ? seen_top.at("witness_horizon") : seen_top.at("radius_budget"),
                        "witness_horizon must be at least radius_budget");
  }
  if (s.compare_universe_size && *s.compare_universe_size == 0) {
    throw ScenarioError(seen_top.at("compare_universe_size"), "compare_universe_size must be at least 1");
  }
  for (const auto& c : s.checks) {
    const auto* info = find_check(c.name);
    if (!family_accepts(info->applies, s)) {
      throw ScenarioError(c.position, "check " + c.name + " needs " + std::string(to_string(info->applies)));
    }
    for (const auto& p : info->params) {
      if (p.required && !c.params.count(p.name)) {
        throw ScenarioError(c.position, "check " + c.name + " is missing parameter '" + p.name + "'");
      }
    }
    if (c.name == "asymorphism" && c.param("map")->is_word("mn_to_q") && !c.param("n")) {
      throw ScenarioError(c.position, "asymorphism with map = mn_to_q needs 'n'");
    }
  }
  return s;
}

/// Canonical text of a scenario; parse_scenario(format_scenario(s)) == s.
inline std::string format_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "family = " << s.family << "\n";
  if (s.metric) out << "metric = " << *s.metric << "\n";
  out << "universe_size = " << s.truncation.universe_size << "\n";
  out << "radius_budget = " << s.truncation.radius_budget << "\n";
  out << "witness_horizon = " << s.truncation.witness_horizon << "\n";
  if (s.compare_universe_size) out << "compare_universe_size = " << *s.compare_universe_size << "\n";
  if (!s.extra_radii.empty()) {
    out << "extra_radii = [";
    for (std::size_t i = 0; i < s.extra_radii.size(); ++i) out << (i ? ", " : "") << to_string(s.extra_radii[i]);
    out << "]\n";
  }
  if (s.output) out << "output = " << *s.output << "\n";
  for (const auto& c : s.checks) {
    out << "\ncheck " << c.name << "\n";
    for (const auto& [k, v] : c.params) out << "  " << k << " = " << format_value(v) << "\n";
  }
  return out.str();
}

inline nlohmann::json scenario_json(const Scenario& s) {
  nlohmann::json j;
  j["family"] = s.family;
  if (s.metric) j["metric"] = *s.metric;
  j["truncation"] = s.truncation;
  j["compare_universe_size"] = s.compare_size();
  auto extra = nlohmann::json::array();
  for (const auto& r : s.extra_radii) extra.push_back(r);
  j["extra_radii"] = extra;
  auto checks = nlohmann::json::array();
  for (const auto& c : s.checks) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : c.params) params[k] = format_value(v);
    checks.push_back({{"name", c.name}, {"params", params}});
  }
  j["checks"] = checks;
  j["text"] = format_scenario(s);
  return j;
}

}  // namespace ballean
