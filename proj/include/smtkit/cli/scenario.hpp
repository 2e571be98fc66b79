#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "smtkit/nevanlinna/expression.hpp"
#include "smtkit/smt/margins.hpp"
#include "smtkit/weights/weights.hpp"

namespace smtkit {

/// Line-oriented scenario file:
///
///   # comment
///   [variety]        n = INT; generator = POLY (repeatable)
///   [hypersurfaces]  poly = POLY [; degree = INT] (repeatable)
///   [curve]          component = EXPR (repeatable, n+1 of them)
///   [params]         N = INT; epsilon = RATIONAL;
///                    r_grid = R R ...  or  r_range = FROM TO POINTS [log|linear];
///                    truncation = auto | INT; seed = INT; precision = BITS; degree_cap = INT
///   [weights]        c = INT INT ...; m = INT; chow_form = BRACKETS; subset = INT ... (1-based)
///   [filtration]     d = INT; u = INT; P = POLY (repeatable)
///
/// POLY uses the variables x0..xn; EXPR the curve grammar in z.
struct WeightsSection {
  WeightVector c;
  std::optional<int> m;
  std::optional<std::string> chow_form;
  std::vector<int> subset;  // 0-based
};

struct FiltrationSection {
  int d = 1;
  int u = 0;
  std::vector<HomogeneousPolynomial> P;
};

struct ScenarioFile {
  int n = 0;
  std::vector<HomogeneousPolynomial> generators;
  std::vector<HomogeneousPolynomial> hypersurfaces;
  std::vector<ExpPoly> curve;
  std::optional<int> N;
  std::optional<Rational> epsilon;
  std::vector<double> r_grid;
  std::optional<long> truncation;  // empty for auto
  std::uint64_t seed = 0;
  unsigned precision = 128;
  int degree_cap = 0;
  std::optional<WeightsSection> weights;
  std::optional<FiltrationSection> filtration;

  VarietyDescriptor variety() const { return VarietyDescriptor(n, generators); }
  /// Requires the curve, N, epsilon and a grid.
  SmtScenario smt_scenario() const;
};

/// Throws InputError with "line L[, column C]: ..." messages.
ScenarioFile parse_scenario(std::istream& in);
ScenarioFile load_scenario(const std::string& path);

}  // namespace smtkit
