#pragma once

// Everything: polynomials, linear algebra, Lie algebras, actions, invariants, weights,
// graded modules, problem files and reports.

#include "gradinv/action.hpp"
#include "gradinv/errors.hpp"
#include "gradinv/fixtures.hpp"
#include "gradinv/gmodule.hpp"
#include "gradinv/invariants.hpp"
#include "gradinv/liealg.hpp"
#include "gradinv/linalg.hpp"
#include "gradinv/poly.hpp"
#include "gradinv/problem.hpp"
#include "gradinv/rational.hpp"
#include "gradinv/report.hpp"
#include "gradinv/univariate.hpp"
#include "gradinv/weights.hpp"
