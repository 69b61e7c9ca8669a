// gradinv: command-line front end over the header-only library.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gradinv/fixtures.hpp"
#include "gradinv/report.hpp"

namespace {

struct Options {
  long max_degree = gradinv::kDefaultMaxDegree;
  std::string format = "human";
  std::string fixture;
  std::string file;
  std::string gamma_json;
  std::string phi_json;
};

void add_common(CLI::App* cmd, Options& o, bool selectors) {
  cmd->add_option("file", o.file, "problem file (JSON)");
  cmd->add_option("--fixture", o.fixture, "use a bundled problem instead of a file");
  cmd->add_option("--max-degree,-D", o.max_degree, "truncation degree D (>= 1)")->capture_default_str();
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"human", "machine"}))->capture_default_str();
  if (selectors) {
    cmd->add_option("--gamma", o.gamma_json, "selector JSON overriding the file's gamma block");
    cmd->add_option("--phi", o.phi_json, "selector JSON overriding the file's phi block");
  }
}

gradinv::Outcome execute(const Options& o, const gradinv::Request& req) {
  using namespace gradinv;
  return run_loaded(
      [&](Request& r) -> Problem {
        if (o.file.empty() == o.fixture.empty())
          throw InvalidArgument("give exactly one of a problem file or --fixture NAME");
        Problem p = o.fixture.empty() ? load_problem_file(o.file) : load_fixture(o.fixture);
        // Override selectors need the Lie dimension, so they are parsed once the problem is known.
        if (!o.gamma_json.empty()) r.gamma = parse_selector(parse_json_text(o.gamma_json), p.lie->dim(), "--gamma");
        if (!o.phi_json.empty()) r.phi = parse_selector(parse_json_text(o.phi_json), p.lie->dim(), "--phi");
        return p;
      },
      req);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariants, weight spaces and generators for graded derivation actions"};
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "verify Lie, action and module axioms");
  auto* inv = app.add_subcommand("invariants", "bases of the invariant spaces per degree");
  auto* gens = app.add_subcommand("generators", "minimal homogeneous generators of the invariant ring");
  auto* weights = app.add_subcommand("weights", "weight support table of a solvable action");
  auto* gamma = app.add_subcommand("gamma", "generators of the Gamma-subalgebra");
  auto* module = app.add_subcommand("module", "graded module commands");
  auto* fixtures = app.add_subcommand("fixtures", "list or print the bundled problem files");
  for (auto* c : {check, inv, gens, weights}) add_common(c, o, false);
  add_common(gamma, o, true);

  module->require_subcommand(1);
  auto* m_inv = module->add_subcommand("invariants", "generators of the invariant submodule");
  auto* m_weights = module->add_subcommand("weights", "weight support table of the module");
  auto* m_phi = module->add_subcommand("phi", "generators of the Phi-submodule over the Gamma-subalgebra");
  for (auto* c : {m_inv, m_weights}) add_common(c, o, false);
  add_common(m_phi, o, true);

  std::string print_name;
  fixtures->add_option("--print", print_name, "print the named fixture's JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : gradinv::exit_code::usage;
  }

  if (fixtures->parsed()) {
    try {
      if (!print_name.empty()) {
        std::cout << gradinv::fixture_text(print_name);
        return gradinv::exit_code::ok;
      }
    } catch (const gradinv::Error& e) {
      std::cerr << "gradinv: " << e.what() << "\n";
      return gradinv::exit_code::usage;
    }
    for (const auto& f : gradinv::kFixtures) std::cout << f.name << "\n";
    return gradinv::exit_code::ok;
  }

  gradinv::Request req;
  req.max_degree = o.max_degree;
  req.source = o.fixture.empty() ? o.file : "fixture:" + o.fixture;
  for (auto* c : {check, inv, gens, weights, gamma})
    if (c->parsed()) req.command = c->get_name();
  if (module->parsed()) {
    req.command = "module";
    for (auto* c : {m_inv, m_weights, m_phi})
      if (c->parsed()) req.subcommand = c->get_name();
  }

  auto out = execute(o, req);
  if (o.format == "machine")
    std::cout << gradinv::render_machine(out.report);
  else
    std::cout << gradinv::render_human(out.report);
  return out.exit_code;
}
