#pragma once

#include <optional>
#include <string>
#include <vector>

#include "smtkit/nevanlinna/nevanlinna.hpp"
#include "smtkit/smt/calculators.hpp"
#include "smtkit/variety/variety.hpp"

namespace smtkit {

/// Which second-main-theorem bound to test: hypersurfaces in N-subgeneral
/// position on a k-dimensional V (coefficient q - (N-k+1)(k+1) - eps), or
/// the projective-space bound (coefficient q - (N-n+1)(n+1) - eps).
enum class SmtVariant { Subgeneral, Projective };

/// "1.1" / "1.3", the labels used on the command line.
std::string to_string(SmtVariant v);
SmtVariant parse_smt_variant(const std::string& label);

struct SmtScenario {
  VarietyDescriptor V;
  std::vector<HomogeneousPolynomial> Q;
  int N = 0;
  Rational epsilon;
  EntireCurve f;
  std::vector<double> r_grid;
};

/// Facts derived once from a scenario.
struct ScenarioFacts {
  int k = 0;        // dim V
  long degV = 0;
  long d = 0;       // lcm of the degrees
  long q = 0;
  int N_used = 0;   // N for the subgeneral bound, max(N, n) for the projective one
  PositionReport position;
};

/// Checks the scenario against the hypotheses of the chosen bound: the curve
/// lands in V (every generator composes to the zero expression), q >= N+1,
/// N >= k, and position at the level used. Throws PreconditionError for
/// violated hypotheses other than position; the position verdict is returned.
ScenarioFacts analyze_scenario(const SmtScenario& s, SmtVariant variant, int degree_cap = 0);

/// Thrown when the hypersurfaces fail the position requirement.
class PositionFailure : public PreconditionError {
 public:
  PositionFailure(const std::string& what, std::vector<int> witness)
      : PreconditionError(what), witness_(std::move(witness)) {}
  const std::vector<int>& witness() const { return witness_; }

 private:
  std::vector<int> witness_;
};

struct SmtRow {
  double r = 0;
  double radius = 0;
  double T = 0;
  double N_truncated_sum = 0;  // sum of N^[M]_{Q_i(f)}(r)
  double lhs = 0;              // coefficient * T
  double rhs = 0;              // sum of N^[M]_{Q_i(f)}(r) / d_i
  double margin = 0;           // rhs - lhs
  std::vector<std::string> flags;
};

struct SmtTable {
  SmtVariant variant = SmtVariant::Subgeneral;
  ScenarioFacts facts;
  Rational coefficient;
  bool vacuous = false;
  Integer M;
  bool M_from_calculator = true;
  std::optional<TruncationResult> truncation;
  std::vector<SmtRow> rows;
};

struct SmtOptions {
  std::optional<Integer> M;  // overrides the calculator
  bool proof_version = false;
  int degree_cap = 0;
  QuadratureConfig quadrature;
};

/// Per-radius margins sum_i N^[M]_{Q_i(f)}(r)/d_i - coefficient * T_f(r).
/// Throws PositionFailure when the position check fails and
/// InconclusiveError when it cannot be certified.
SmtTable smt_margins(const SmtScenario& s, SmtVariant variant, const SmtOptions& options = {});

}  // namespace smtkit
