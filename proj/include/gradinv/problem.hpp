#pragma once

// Problem files: one JSON document describing the ring, the Lie algebra, the action and
// optionally a module and Γ/Φ selectors.
//
//   {
//     "variables": [{"name": "x", "degree": 1}, ...],
//     "lie": {"basis": ["H", "E"], "brackets": [["H", "E", ["E", 2]]]},
//     "action": {"H": {"x": "x", "y": "-y"}, "E": {"y": "x"}},
//     "module": {"generators": [{"name": "e", "degree": 0}], "twist": {"H": {"e": "e"}}},
//     "gamma": {"kind": "zero"},
//     "phi": {"kind": "explicit", "chars": [[1, 0]]}
//   }
//
// Bracket entries are [left, right, [k, coeff], ...] with basis labels or indices; missing
// brackets and action entries are zero. Coefficients are integers or rational strings ("-1/2").
// Syntax errors carry the byte offset; semantic errors name the JSON path.

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gradinv/action.hpp"
#include "gradinv/errors.hpp"
#include "gradinv/gmodule.hpp"
#include "gradinv/liealg.hpp"
#include "gradinv/poly.hpp"
#include "gradinv/weights.hpp"

namespace gradinv {

using Json = nlohmann::json;

struct Problem {
  SignaturePtr sig;
  std::shared_ptr<const LieAlgebra> lie;
  std::shared_ptr<const DerivationAction> action;
  std::optional<GradedModule> module;
  std::optional<GammaSelector> gamma;
  std::optional<PhiSelector> phi;
};

namespace detail {

[[noreturn]] inline void bad(const std::string& path, const std::string& what) {
  throw ParseError(0, path + ": " + what);
}

inline const Json& field(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(path, std::string("missing field '") + key + "'");
  return *it;
}

inline void only_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  if (!obj.is_object()) bad(path, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (auto key : keys) known = known || k == key;
    if (!known) bad(path, "unknown field '" + k + "'");
  }
}

inline Rational json_rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      bad(path, e.what());
    }
  }
  bad(path, "expected an integer or a rational string");
}

inline long json_integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<long>();
}

inline std::string json_string(const Json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

inline std::size_t lie_index(const LieAlgebra& L, const Json& j, const std::string& path) {
  if (j.is_number_integer()) {
    long i = j.get<long>();
    if (i < 0 || static_cast<std::size_t>(i) >= L.dim()) bad(path, "basis index " + std::to_string(i) + " out of range");
    return static_cast<std::size_t>(i);
  }
  auto label = json_string(j, path);
  auto i = L.index_of(label);
  if (!i) bad(path, "unknown Lie basis label '" + label + "'");
  return *i;
}

/// Re-raises a polynomial parse error with its JSON path prefixed, keeping the offset.
template <class F>
auto with_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(e.position(), path + ": " + e.message());
  }
}

}  // namespace detail

inline CharacterSelector parse_selector(const Json& j, std::size_t lie_dim, const std::string& path) {
  using detail::bad;
  if (!j.is_object()) bad(path, "expected a selector object");
  auto kind = detail::json_string(detail::field(j, "kind", path), path + "/kind");
  auto character = [&](const Json& c, const std::string& p) {
    if (!c.is_array() || c.size() != lie_dim) bad(p, "expected " + std::to_string(lie_dim) + " character values");
    Character chi;
    for (std::size_t k = 0; k < c.size(); ++k) chi.values.push_back(detail::json_rational(c[k], p + "/" + std::to_string(k)));
    return chi;
  };
  if (kind == "zero") {
    detail::only_keys(j, {"kind"}, path);
    return CharacterSelector::zero();
  }
  if (kind == "explicit") {
    detail::only_keys(j, {"kind", "chars"}, path);
    const auto& chars = detail::field(j, "chars", path);
    if (!chars.is_array()) bad(path + "/chars", "expected an array");
    std::vector<Character> out;
    for (std::size_t i = 0; i < chars.size(); ++i) out.push_back(character(chars[i], path + "/chars/" + std::to_string(i)));
    return CharacterSelector::explicit_set(std::move(out));
  }
  if (kind == "rule") {
    detail::only_keys(j, {"kind", "functional", "relation", "modulus"}, path);
    auto u = character(detail::field(j, "functional", path), path + "/functional").values;
    auto rel = detail::json_string(detail::field(j, "relation", path), path + "/relation");
    if (rel == "eq0") return CharacterSelector::rule(std::move(u), CharacterSelector::Relation::Eq0);
    if (rel == "ge0") return CharacterSelector::rule(std::move(u), CharacterSelector::Relation::Ge0);
    if (rel == "mod") {
      long m = detail::json_integer(detail::field(j, "modulus", path), path + "/modulus");
      if (m <= 0) bad(path + "/modulus", "modulus must be positive");
      return CharacterSelector::rule(std::move(u), CharacterSelector::Relation::Mod, Integer(m));
    }
    bad(path + "/relation", "expected \"eq0\", \"ge0\" or \"mod\"");
  }
  bad(path + "/kind", "unknown selector kind '" + kind + "'");
}

inline Json selector_to_json(const CharacterSelector& s) {
  auto chars = [](const Vector& v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(to_string(q));
    return a;
  };
  switch (s.kind()) {
    case CharacterSelector::Kind::Zero:
      return {{"kind", "zero"}};
    case CharacterSelector::Kind::Explicit: {
      Json list = Json::array();
      for (const auto& c : s.chars()) list.push_back(chars(c.values));
      return {{"kind", "explicit"}, {"chars", list}};
    }
    case CharacterSelector::Kind::Rule: {
      Json j{{"kind", "rule"}, {"functional", chars(s.functional())}};
      switch (s.relation()) {
        case CharacterSelector::Relation::Eq0: j["relation"] = "eq0"; break;
        case CharacterSelector::Relation::Ge0: j["relation"] = "ge0"; break;
        case CharacterSelector::Relation::Mod:
          j["relation"] = "mod";
          j["modulus"] = s.modulus().get_si();
          break;
      }
      return j;
    }
  }
  return {};
}

inline Problem parse_problem_json(const Json& root) {
  using detail::bad;
  detail::only_keys(root, {"name", "description", "variables", "lie", "action", "module", "gamma", "phi"}, "");

  const auto& vars = detail::field(root, "variables", "");
  if (!vars.is_array()) bad("/variables", "expected an array");
  if (vars.empty()) bad("/variables", "at least one variable is required (S = k is degenerate)");
  std::vector<std::string> names;
  std::vector<int> degrees;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string p = "/variables/" + std::to_string(i);
    detail::only_keys(vars[i], {"name", "degree"}, p);
    names.push_back(detail::json_string(detail::field(vars[i], "name", p), p + "/name"));
    degrees.push_back(static_cast<int>(detail::json_integer(detail::field(vars[i], "degree", p), p + "/degree")));
  }
  Problem pr;
  pr.sig = detail::with_path("/variables", [&] { return make_signature(names, degrees); });

  const auto& lie = detail::field(root, "lie", "");
  detail::only_keys(lie, {"basis", "brackets"}, "/lie");
  const auto& basis = detail::field(lie, "basis", "/lie");
  if (!basis.is_array()) bad("/lie/basis", "expected an array of labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto l = detail::json_string(basis[i], "/lie/basis/" + std::to_string(i));
    if (!AlgebraSignature::valid_identifier(l)) bad("/lie/basis/" + std::to_string(i), "invalid label '" + l + "'");
    if (std::find(labels.begin(), labels.end(), l) != labels.end())
      bad("/lie/basis/" + std::to_string(i), "duplicate label '" + l + "'");
    labels.push_back(l);
  }
  LieAlgebra shape(labels);
  std::vector<LieAlgebra::Bracket> brackets;
  if (lie.contains("brackets")) {
    const auto& bs = lie["brackets"];
    if (!bs.is_array()) bad("/lie/brackets", "expected an array");
    for (std::size_t b = 0; b < bs.size(); ++b) {
      const std::string p = "/lie/brackets/" + std::to_string(b);
      const auto& e = bs[b];
      if (!e.is_array() || e.size() < 2) bad(p, "expected [left, right, [k, coeff], ...]");
      LieAlgebra::Bracket br{detail::lie_index(shape, e[0], p + "/0"), detail::lie_index(shape, e[1], p + "/1"),
                             Vector(labels.size())};
      for (std::size_t t = 2; t < e.size(); ++t) {
        const std::string q = p + "/" + std::to_string(t);
        if (!e[t].is_array() || e[t].size() != 2) bad(q, "expected [k, coeff]");
        br.value[detail::lie_index(shape, e[t][0], q + "/0")] += detail::json_rational(e[t][1], q + "/1");
      }
      for (const auto& prev : brackets)
        if (prev.left == br.left && prev.right == br.right) bad(p, "bracket listed twice");
      brackets.push_back(std::move(br));
    }
  }
  auto L = std::make_shared<const LieAlgebra>(LieAlgebra::from_brackets(labels, brackets));
  pr.lie = L;

  std::vector<std::vector<Polynomial>> images(L->dim(), std::vector<Polynomial>(pr.sig->size(), Polynomial(pr.sig)));
  if (root.contains("action")) {
    const auto& act = root["action"];
    if (!act.is_object()) bad("/action", "expected an object keyed by Lie basis labels");
    for (const auto& [label, row] : act.items()) {
      const std::string p = "/action/" + label;
      auto j = L->index_of(label);
      if (!j) bad(p, "unknown Lie basis label '" + label + "'");
      if (!row.is_object()) bad(p, "expected an object keyed by variable names");
      for (const auto& [var, text] : row.items()) {
        auto v = pr.sig->index_of(var);
        if (!v) bad(p + "/" + var, "unknown variable '" + var + "'");
        auto s = detail::json_string(text, p + "/" + var);
        images[*j][*v] = detail::with_path(p + "/" + var, [&] { return parse_poly(s, pr.sig); });
      }
    }
  }
  pr.action = std::make_shared<const DerivationAction>(pr.sig, L, std::move(images));

  if (root.contains("module")) {
    const auto& m = root["module"];
    detail::only_keys(m, {"generators", "twist"}, "/module");
    const auto& gens = detail::field(m, "generators", "/module");
    if (!gens.is_array() || gens.empty()) bad("/module/generators", "expected a non-empty array");
    std::vector<std::string> gnames;
    std::vector<long> gdeg;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::string p = "/module/generators/" + std::to_string(i);
      detail::only_keys(gens[i], {"name", "degree"}, p);
      gnames.push_back(detail::json_string(detail::field(gens[i], "name", p), p + "/name"));
      gdeg.push_back(detail::json_integer(detail::field(gens[i], "degree", p), p + "/degree"));
    }
    ModuleElement zero{std::vector<Polynomial>(gnames.size(), Polynomial(pr.sig))};
    std::vector<std::vector<ModuleElement>> twist(L->dim(), std::vector<ModuleElement>(gnames.size(), zero));
    if (m.contains("twist")) {
      const auto& tw = m["twist"];
      if (!tw.is_object()) bad("/module/twist", "expected an object keyed by Lie basis labels");
      for (const auto& [label, row] : tw.items()) {
        const std::string p = "/module/twist/" + label;
        auto j = L->index_of(label);
        if (!j) bad(p, "unknown Lie basis label '" + label + "'");
        if (!row.is_object()) bad(p, "expected an object keyed by module generator names");
        for (const auto& [gen, text] : row.items()) {
          auto it = std::find(gnames.begin(), gnames.end(), gen);
          if (it == gnames.end()) bad(p + "/" + gen, "unknown module generator '" + gen + "'");
          auto s = detail::json_string(text, p + "/" + gen);
          twist[*j][static_cast<std::size_t>(it - gnames.begin())] =
              detail::with_path(p + "/" + gen, [&] { return parse_module_element(s, pr.sig, gnames); });
        }
      }
    }
    pr.module.emplace(detail::with_path("/module", [&] {
      return GradedModule(pr.action, gnames, gdeg, std::move(twist));
    }));
  }
  if (root.contains("gamma")) pr.gamma = parse_selector(root["gamma"], L->dim(), "/gamma");
  if (root.contains("phi")) pr.phi = parse_selector(root["phi"], L->dim(), "/phi");
  return pr;
}

inline Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(e.byte, std::string("malformed JSON: ") + e.what());
  }
}

inline Problem parse_problem(std::string_view text) { return parse_problem_json(parse_json_text(text)); }

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Problem load_problem_file(const std::string& path) { return parse_problem(read_text_file(path)); }

}  // namespace gradinv
