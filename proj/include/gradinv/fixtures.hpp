#pragma once

// Bundled problem files. fixtures/*.json in the source tree hold the same documents.

#include <array>
#include <string>
#include <string_view>

#include "gradinv/errors.hpp"
#include "gradinv/problem.hpp"

namespace gradinv {

struct Fixture {
  std::string_view name;
  std::string_view json;
};

inline constexpr std::array<Fixture, 8> kFixtures{{
    {"torus", R"json({
  "name": "torus",
  "description": "One-dimensional torus acting on k[x,y] with weights +1 and -1.",
  "variables": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}],
  "lie": {"basis": ["X"], "brackets": []},
  "action": {"X": {"x": "x", "y": "-y"}},
  "gamma": {"kind": "rule", "functional": [1], "relation": "mod", "modulus": 2}
}
)json"},
    {"weitzenbock", R"json({
  "name": "weitzenbock",
  "description": "Basic Weitzenboeck derivation x -> 0, y -> x.",
  "variables": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}],
  "lie": {"basis": ["X"], "brackets": []},
  "action": {"X": {"x": "0", "y": "x"}},
  "gamma": {"kind": "zero"}
}
)json"},
    {"borel", R"json({
  "name": "borel",
  "description": "Two-dimensional Borel subalgebra of sl2, [H,E] = 2E, acting on k[x,y].",
  "variables": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}],
  "lie": {"basis": ["H", "E"], "brackets": [["H", "E", ["E", 2]]]},
  "action": {"H": {"x": "x", "y": "-y"}, "E": {"x": "0", "y": "x"}},
  "gamma": {"kind": "zero"}
}
)json"},
    {"sl2quad", R"json({
  "name": "sl2quad",
  "description": "sl2 acting on binary quadratic forms a*X^2 + b*X*Y + c*Y^2 through the coefficients.",
  "variables": [{"name": "a", "degree": 1}, {"name": "b", "degree": 1}, {"name": "c", "degree": 1}],
  "lie": {
    "basis": ["e", "f", "h"],
    "brackets": [["h", "e", ["e", 2]], ["h", "f", ["f", -2]], ["e", "f", ["h", 1]]]
  },
  "action": {
    "e": {"a": "0", "b": "2*a", "c": "b"},
    "f": {"a": "b", "b": "2*c", "c": "0"},
    "h": {"a": "2*a", "b": "0", "c": "-2*c"}
  }
}
)json"},
    {"torus-module", R"json({
  "name": "torus-module",
  "description": "Free module S*e_plus + S*e_minus over the torus fixture, X(e_plus) = e_plus, X(e_minus) = -e_minus.",
  "variables": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}],
  "lie": {"basis": ["X"], "brackets": []},
  "action": {"X": {"x": "x", "y": "-y"}},
  "module": {
    "generators": [{"name": "e_plus", "degree": 0}, {"name": "e_minus", "degree": 0}],
    "twist": {"X": {"e_plus": "e_plus", "e_minus": "-e_minus"}}
  },
  "gamma": {"kind": "zero"},
  "phi": {"kind": "explicit", "chars": [[1]]}
}
)json"},
    {"rotation", R"json({
  "name": "rotation",
  "description": "Infinitesimal rotation x -> -y, y -> x; its eigenvalues are not rational.",
  "variables": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}],
  "lie": {"basis": ["X"], "brackets": []},
  "action": {"X": {"x": "-y", "y": "x"}}
}
)json"},
    {"sl2-jacobi", R"json({
  "name": "sl2-jacobi",
  "description": "sl2 constants with [e,f] = h + e: antisymmetric, but the Jacobi identity fails on (e,f,h).",
  "variables": [{"name": "a", "degree": 1}, {"name": "b", "degree": 1}, {"name": "c", "degree": 1}],
  "lie": {
    "basis": ["e", "f", "h"],
    "brackets": [["h", "e", ["e", 2]], ["h", "f", ["f", -2]], ["e", "f", ["h", 1], ["e", 1]]]
  },
  "action": {
    "e": {"a": "0", "b": "2*a", "c": "b"},
    "f": {"a": "b", "b": "2*c", "c": "0"},
    "h": {"a": "2*a", "b": "0", "c": "-2*c"}
  }
}
)json"},
    {"sl2-perturbed", R"json({
  "name": "sl2-perturbed",
  "description": "sl2 constants with only c[e][f][h] changed to 2, so [e,f] + [f,e] = h.",
  "variables": [{"name": "a", "degree": 1}, {"name": "b", "degree": 1}, {"name": "c", "degree": 1}],
  "lie": {
    "basis": ["e", "f", "h"],
    "brackets": [["h", "e", ["e", 2]], ["h", "f", ["f", -2]], ["e", "f", ["h", 2]], ["f", "e", ["h", -1]]]
  },
  "action": {
    "e": {"a": "0", "b": "2*a", "c": "b"},
    "f": {"a": "b", "b": "2*c", "c": "0"},
    "h": {"a": "2*a", "b": "0", "c": "-2*c"}
  }
}
)json"},
}};

inline std::string_view fixture_text(std::string_view name) {
  for (const auto& f : kFixtures)
    if (f.name == name) return f.json;
  std::string known;
  for (const auto& f : kFixtures) known += (known.empty() ? "" : ", ") + std::string(f.name);
  throw InvalidArgument("unknown fixture '" + std::string(name) + "' (known: " + known + ")");
}

inline Problem load_fixture(std::string_view name) { return parse_problem(fixture_text(name)); }

}  // namespace gradinv
