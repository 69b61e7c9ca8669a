#pragma once

// Command runners behind the CLI. Each command turns a Problem into a JSON report plus an
// exit status; reports hold no timestamps or paths beyond the given source label, and
// nlohmann::json keeps object keys sorted, so equal inputs give byte-identical output.

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gradinv/errors.hpp"
#include "gradinv/gmodule.hpp"
#include "gradinv/invariants.hpp"
#include "gradinv/problem.hpp"
#include "gradinv/weights.hpp"

namespace gradinv {

inline constexpr long kDefaultMaxDegree = 8;

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;         // bad arguments, unreadable file, missing problem block
inline constexpr int parse = 2;         // malformed problem file
inline constexpr int axiom = 3;         // Lie / action / module axioms violated
inline constexpr int precondition = 4;  // NotSemisimple, NotSolvable, NotSplit, Gamma/Phi violations
inline constexpr int internal = 5;      // split failure
}  // namespace exit_code

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage: return exit_code::usage;
    case ErrorKind::Parse: return exit_code::parse;
    case ErrorKind::Axiom: return exit_code::axiom;
    case ErrorKind::Precondition: return exit_code::precondition;
    case ErrorKind::Internal: return exit_code::internal;
  }
  return exit_code::internal;
}

struct Request {
  std::string command;     // check, invariants, generators, weights, gamma, module
  std::string subcommand;  // module: invariants, weights, phi
  long max_degree = kDefaultMaxDegree;
  std::string source;      // echoed verbatim, e.g. "fixture:torus"
  std::optional<GammaSelector> gamma;  // override the problem file's selectors
  std::optional<PhiSelector> phi;
};

struct Outcome {
  int exit_code = exit_code::ok;
  Json report;
};

namespace detail {

inline std::string command_name(const Request& r) {
  return r.subcommand.empty() ? r.command : r.command + " " + r.subcommand;
}

inline Json character_json(const Character& c) {
  Json a = Json::array();
  for (const auto& q : c.values) a.push_back(to_string(q));
  return a;
}

inline Json support_json(const SupportTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json chars = Json::array();
    for (const auto& e : r.entries) chars.push_back({{"character", character_json(e.chi)}, {"dim", e.dim}});
    rows.push_back({{"degree", r.degree}, {"characters", chars}, {"total_dim", r.total_dim()}});
  }
  return rows;
}

template <class E, class Print>
Json generator_json(const GeneratorSet<E>& g, Print&& print) {
  Json list = Json::array();
  for (const auto& x : g.generators) list.push_back({{"degree", x.degree}, {"element", print(x.element)}});
  return list;
}

template <class E>
Json dimensions_json(const GeneratorSet<E>& g) {
  Json list = Json::array();
  for (std::size_t k = 0; k < g.dims.size(); ++k)
    list.push_back({{"degree", g.min_degree + static_cast<long>(k)}, {"dim", g.dims[k]}});
  return list;
}

template <class E>
Json stabilization_json(const GeneratorSet<E>& g) {
  const long from = g.max_degree - g.stabilization_window() + 1;
  std::string range = "degrees " + std::to_string(from) + ".." + std::to_string(g.max_degree);
  return {{"stabilized", g.stabilized()},
          {"window", {from, g.max_degree}},
          {"note", (g.stabilized() ? "no new generators in " : "new generators still appear in ") + range +
                       "; a heuristic signal only, not a proof of finite generation"}};
}

inline Json lie_check_json(const LieAlgebra& L, const LieCheck& c) {
  if (c.ok) return {{"ok", true}};
  Json where = c.kind == "jacobi" ? Json{L.label(c.i), L.label(c.j), L.label(c.k)} : Json{L.label(c.i), L.label(c.j)};
  return {{"ok", false}, {"kind", c.kind}, {"where", where}, {"residual", format_lie_element(L, c.residual)},
          {"message", c.message}};
}

inline Json action_check_json(const Problem& p, const ActionCheck& c) {
  if (c.ok) return {{"ok", true}};
  Json where = c.kind == "bracket" ? Json{p.lie->label(c.i), p.lie->label(c.j), p.sig->name(c.variable)}
                                   : Json{p.lie->label(c.i), p.sig->name(c.variable)};
  return {{"ok", false}, {"kind", c.kind}, {"where", where}, {"residual", c.residual}, {"message", c.message}};
}

inline Json module_check_json(const Problem& p, const ModuleCheck& c) {
  if (c.ok) return {{"ok", true}};
  const auto& M = *p.module;
  Json where = c.kind == "bracket" ? Json{p.lie->label(c.i), p.lie->label(c.j), M.names()[c.generator]}
                                   : Json{p.lie->label(c.i), M.names()[c.generator]};
  return {{"ok", false}, {"kind", c.kind}, {"where", where}, {"message", c.message}};
}

/// Axiom verdicts; `all_ok` is false when any of them fails.
inline Json axiom_json(const Problem& p, bool& all_ok) {
  auto lc = verify_lie(*p.lie);
  Json j{{"lie", lie_check_json(*p.lie, lc)}};
  all_ok = lc.ok;
  if (lc.ok) {
    auto ac = verify_action(*p.action);
    j["action"] = action_check_json(p, ac);
    all_ok = ac.ok;
    if (ac.ok && p.module) {
      auto mc = verify_module(*p.module);
      j["module"] = module_check_json(p, mc);
      all_ok = mc.ok;
    }
  }
  return j;
}

inline const GradedModule& require_module(const Problem& p) {
  if (!p.module) throw InvalidArgument("the problem has no \"module\" block");
  return *p.module;
}

inline const GammaSelector& require_selector(const std::optional<CharacterSelector>& override_sel,
                                             const std::optional<CharacterSelector>& file_sel, const char* what) {
  if (override_sel) return *override_sel;
  if (file_sel) return *file_sel;
  throw InvalidArgument(std::string("no ") + what + " selector given (problem file block or command-line option)");
}

inline Json gamma_check_json(const GammaCheck& c) {
  if (c.ok) return {{"ok", true}};
  return {{"ok", false}, {"kind", c.kind}, {"pair", {character_json(c.left), character_json(c.right)}},
          {"message", c.message}};
}

inline Json phi_check_json(const PhiCheck& c) {
  auto one = [](bool ok, const std::string& v) { return ok ? Json{{"ok", true}} : Json{{"ok", false}, {"violation", v}}; };
  return {{"a", one(c.a_ok, c.a_violation)}, {"b", one(c.b_ok, c.b_violation)}};
}

inline void run_command(const Problem& p, const Request& r, Json& result, Json& report, int& code) {
  const long D = r.max_degree;
  const auto poly = [](const Polynomial& f) { return to_string(f); };
  if (r.command == "invariants") {
    Json dims = Json::array();
    for (long d = 0; d <= D; ++d) {
      auto inv = invariants_degree(*p.action, d);
      Json basis = Json::array();
      for (const auto& f : subspace_polynomials(p.sig, d, inv)) basis.push_back(to_string(primitive_part(f)));
      dims.push_back({{"degree", d}, {"dim", inv.dim()}, {"ambient_dim", inv.ambient()}, {"basis", basis}});
    }
    result["dimensions"] = dims;
  } else if (r.command == "generators") {
    auto g = invariant_generators(*p.action, D);
    result["generators"] = generator_json(g, poly);
    result["dimensions"] = dimensions_json(g);
    report["stabilization"] = stabilization_json(g);
  } else if (r.command == "weights") {
    auto s = support_semigroup(*p.action, D);
    result["lie_basis"] = p.lie->labels();
    result["support"] = support_json(s.table);
    result["semigroup"] = s.closed ? Json{{"closed", true}} : Json{{"closed", false}, {"violation", s.violation}};
  } else if (r.command == "gamma") {
    const auto& gamma = require_selector(r.gamma, p.gamma, "gamma");
    gamma.check_arity(p.lie->dim());
    detail::require_solvable(*p.lie);
    result["lie_basis"] = p.lie->labels();
    result["gamma"] = selector_to_json(gamma);
    auto check = check_gamma(gamma, support_table(*p.action, D), *p.lie);
    result["check"] = gamma_check_json(check);
    if (!check.ok) {
      report["status"] = "violation";
      report["error"] = {{"code", "GammaViolation"}, {"message", check.message}};
      code = exit_code::precondition;
      return;
    }
    auto g = gamma_generators(*p.action, gamma, D);
    result["generators"] = generator_json(g, poly);
    result["dimensions"] = dimensions_json(g);
    report["stabilization"] = stabilization_json(g);
  } else if (r.command == "module") {
    const auto& M = require_module(p);
    const auto elem = [&](const ModuleElement& m) { return to_string(m, M); };
    result["module_generators"] = M.names();
    if (r.subcommand == "invariants") {
      auto ring = invariant_generators(*p.action, ring_degree_needed(M, D));
      auto g = module_invariant_generators(M, ring, D);
      result["ring_generators"] = generator_json(ring, poly);
      result["generators"] = generator_json(g, elem);
      result["dimensions"] = dimensions_json(g);
      report["stabilization"] = stabilization_json(g);
    } else if (r.subcommand == "weights") {
      result["lie_basis"] = p.lie->labels();
      result["support"] = support_json(module_support_table(M, D));
      auto c = c_action_check(M, D);
      result["c_action"] = {{"ok", c.ok}, {"products_checked", c.products_checked}};
      if (!c.ok) throw SplitFailure(c.message);
    } else if (r.subcommand == "phi") {
      const auto& gamma = require_selector(r.gamma, p.gamma, "gamma");
      const auto& phi = require_selector(r.phi, p.phi, "phi");
      gamma.check_arity(p.lie->dim());
      phi.check_arity(p.lie->dim());
      detail::require_solvable(*p.lie);
      result["lie_basis"] = p.lie->labels();
      result["gamma"] = selector_to_json(gamma);
      result["phi"] = selector_to_json(phi);
      const long Dr = ring_degree_needed(M, D);
      auto gcheck = check_gamma(gamma, support_table(*p.action, Dr), *p.lie);
      result["gamma_check"] = gamma_check_json(gcheck);
      if (!gcheck.ok) {
        report["status"] = "violation";
        report["error"] = {{"code", "GammaViolation"}, {"message", gcheck.message}};
        code = exit_code::precondition;
        return;
      }
      auto pcheck = check_phi(gamma, phi, support_table(*p.action, Dr), module_support_table(M, D), *p.lie);
      result["phi_check"] = phi_check_json(pcheck);
      if (!pcheck.a_ok) {
        report["status"] = "violation";
        report["error"] = {{"code", "PhiViolation"}, {"message", pcheck.a_violation}};
        code = exit_code::precondition;
        return;
      }
      auto out = phi_generators(M, gamma, phi, D);
      result["finite_type_certified"] = out.finite_type_certified();
      result["ring_generators"] = generator_json(out.ring, poly);
      result["generators"] = generator_json(out.generators, elem);
      result["dimensions"] = dimensions_json(out.generators);
      report["stabilization"] = stabilization_json(out.generators);
    } else {
      throw InvalidArgument("module subcommand must be invariants, weights or phi");
    }
  } else {
    throw InvalidArgument("unknown command '" + r.command + "'");
  }
}

}  // namespace detail

inline Json error_json(const Error& e) {
  Json j{{"code", e.code()}, {"message", e.what()}};
  if (auto* ns = dynamic_cast<const NotSplitOverBaseField*>(&e); ns && !ns->factor().empty()) j["factor"] = ns->factor();
  return j;
}

/// Runs one command. Library errors become an "error" report with the mapped exit status.
inline Outcome run(const Problem& p, const Request& r) {
  Outcome out;
  Json& rep = out.report;
  rep["command"] = detail::command_name(r);
  rep["source"] = r.source;
  rep["max_degree"] = r.max_degree;
  rep["exact_arithmetic"] = "all values are exact rationals (GMP); no floating point is used";
  rep["status"] = "ok";
  Json result = Json::object();
  try {
    if (r.max_degree < 1) throw InvalidArgument("--max-degree must be >= 1");
    bool axioms_ok = true;
    result["axioms"] = detail::axiom_json(p, axioms_ok);
    if (r.command == "check" && axioms_ok) {
      result["solvable"] = is_solvable(*p.lie);
      result["semisimple"] = is_semisimple(*p.lie);
    }
    // Nothing else is meaningful on an invalid action.
    if (!axioms_ok) {
      rep["status"] = "violation";
      rep["error"] = {{"code", "AxiomViolation"}, {"message", "axiom verification failed"}};
      out.exit_code = exit_code::axiom;
    } else if (r.command != "check") {
      detail::run_command(p, r, result, rep, out.exit_code);
    }
  } catch (const Error& e) {
    rep["status"] = "error";
    rep["error"] = error_json(e);
    out.exit_code = exit_code_for(e.kind());
  }
  rep["result"] = result;
  rep["exit_code"] = out.exit_code;
  return out;
}

/// Loads the problem through `load` (which may fill request fields that depend on it, such as
/// selector overrides) and runs; load failures produce an error report too.
inline Outcome run_loaded(const std::function<Problem(Request&)>& load, Request r) {
  try {
    Problem p = load(r);
    return run(p, r);
  } catch (const Error& e) {
    Outcome out;
    out.exit_code = exit_code_for(e.kind());
    out.report = {{"command", detail::command_name(r)}, {"source", r.source}, {"max_degree", r.max_degree},
                  {"exact_arithmetic", "all values are exact rationals (GMP); no floating point is used"},
                  {"status", "error"}, {"error", error_json(e)}, {"result", Json::object()},
                  {"exit_code", out.exit_code}};
    return out;
  }
}

/// Canonical machine form: sorted keys, two-space indent, trailing newline.
inline std::string render_machine(const Json& report) { return report.dump(2) + "\n"; }

namespace detail {

inline std::string join(const Json& arr, const char* sep) {
  std::string s;
  for (const auto& v : arr) s += (s.empty() ? "" : sep) + (v.is_string() ? v.get<std::string>() : v.dump());
  return s;
}

inline void human_generators(std::ostringstream& o, const Json& list, const char* title) {
  o << title << ":\n";
  if (list.empty()) o << "  (none)\n";
  for (const auto& g : list) o << "  deg " << g["degree"].get<long>() << ": " << g["element"].get<std::string>() << "\n";
}

inline void human_check(std::ostringstream& o, const char* what, const Json& c) {
  o << "  " << what << ": " << (c["ok"].get<bool>() ? "ok" : "VIOLATION");
  if (c.contains("message")) o << " -- " << c["message"].get<std::string>();
  if (c.contains("violation")) o << " -- " << c["violation"].get<std::string>();
  o << "\n";
}

}  // namespace detail

/// Table-style rendering of a report for people.
inline std::string render_human(const Json& rep) {
  std::ostringstream o;
  o << "gradinv " << rep["command"].get<std::string>() << " [" << rep["source"].get<std::string>()
    << "] max degree " << rep["max_degree"].get<long>() << "\n";
  o << "status: " << rep["status"].get<std::string>() << " (exit " << rep["exit_code"].get<int>() << ")\n";
  if (rep.contains("error")) {
    o << "error: " << rep["error"]["code"].get<std::string>() << ": " << rep["error"]["message"].get<std::string>() << "\n";
    if (rep["error"].contains("factor")) o << "  non-split factor: " << rep["error"]["factor"].get<std::string>() << "\n";
  }
  const Json& r = rep["result"];
  if (r.contains("axioms")) {
    o << "axioms:\n";
    for (const char* k : {"lie", "action", "module"})
      if (r["axioms"].contains(k)) detail::human_check(o, k, r["axioms"][k]);
  }
  if (r.contains("solvable"))
    o << "solvable: " << (r["solvable"].get<bool>() ? "yes" : "no") << ", semisimple: "
      << (r["semisimple"].get<bool>() ? "yes" : "no") << "\n";
  if (r.contains("gamma")) o << "gamma: " << r["gamma"].dump() << "\n";
  if (r.contains("phi")) o << "phi: " << r["phi"].dump() << "\n";
  if (r.contains("check")) detail::human_check(o, "gamma conditions", r["check"]);
  if (r.contains("gamma_check")) detail::human_check(o, "gamma conditions", r["gamma_check"]);
  if (r.contains("phi_check")) {
    detail::human_check(o, "phi condition (a)", r["phi_check"]["a"]);
    detail::human_check(o, "phi condition (b)", r["phi_check"]["b"]);
  }
  if (r.contains("finite_type_certified"))
    o << "finite type over S_Gamma certified: " << (r["finite_type_certified"].get<bool>() ? "yes" : "no") << "\n";
  if (r.contains("ring_generators")) detail::human_generators(o, r["ring_generators"], "ring generators");
  if (r.contains("generators")) detail::human_generators(o, r["generators"], "generators");
  if (r.contains("dimensions")) {
    o << "dimensions:\n";
    for (const auto& d : r["dimensions"]) {
      o << "  d=" << d["degree"].get<long>() << ": " << d["dim"].get<std::size_t>();
      if (d.contains("basis") && !d["basis"].empty()) o << "  [" << detail::join(d["basis"], ", ") << "]";
      o << "\n";
    }
  }
  if (r.contains("support")) {
    o << "support (characters on " << detail::join(r["lie_basis"], ", ") << "):\n";
    for (const auto& row : r["support"]) {
      o << "  d=" << row["degree"].get<long>() << ":";
      for (const auto& c : row["characters"])
        o << " (" << detail::join(c["character"], ", ") << ")x" << c["dim"].get<std::size_t>();
      o << "\n";
    }
  }
  if (r.contains("semigroup"))
    o << "truncated semigroup closure: " << (r["semigroup"]["closed"].get<bool>() ? "ok" : "VIOLATION") << "\n";
  if (r.contains("c_action"))
    o << "C-action check: " << (r["c_action"]["ok"].get<bool>() ? "ok" : "VIOLATION") << " ("
      << r["c_action"]["products_checked"].get<std::size_t>() << " sampled products)\n";
  if (rep.contains("stabilization")) o << "stabilization: " << rep["stabilization"]["note"].get<std::string>() << "\n";
  o << rep["exact_arithmetic"].get<std::string>() << "\n";
  return o.str();
}

}  // namespace gradinv
