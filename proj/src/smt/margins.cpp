#include "smtkit/smt/margins.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace smtkit {

std::string to_string(SmtVariant v) { return v == SmtVariant::Subgeneral ? "1.1" : "1.3"; }

SmtVariant parse_smt_variant(const std::string& label) {
  if (label == "1.1") return SmtVariant::Subgeneral;
  if (label == "1.3") return SmtVariant::Projective;
  throw InputError("unknown theorem variant '" + label + "' (expected 1.1 or 1.3)");
}

ScenarioFacts analyze_scenario(const SmtScenario& s, SmtVariant variant, int degree_cap) {
  ScenarioFacts facts;
  const int n = s.V.n();
  if (s.f.n() != n) throw PreconditionError("curve and variety live in different projective spaces");
  if (s.Q.empty()) throw PreconditionError("no hypersurfaces");
  for (const auto& q : s.Q) {
    if (q.n_vars() != n + 1) throw PreconditionError("hypersurface in the wrong number of variables");
    if (q.is_zero() || q.degree() < 1) throw PreconditionError("hypersurfaces must be nonzero of positive degree");
  }
  if (!(s.epsilon > 0)) throw PreconditionError("epsilon must be positive");
  for (std::size_t i = 0; i < s.V.generators().size(); ++i)
    if (!s.f.compose(s.V.generators()[i]).is_zero())
      throw PreconditionError("curve does not lie in V: generator " + std::to_string(i + 1) + " does not vanish on it");

  facts.q = static_cast<long>(s.Q.size());
  facts.d = 1;
  for (const auto& q : s.Q) facts.d = std::lcm(facts.d, static_cast<long>(q.degree()));

  if (s.V.generators().empty()) {
    facts.k = n;
    facts.degV = 1;
  } else {
    const auto dim = estimate_dimension(s.V, 0, degree_cap);
    if (dim.kind == DimensionEstimate::Kind::Empty) throw PreconditionError("V is empty");
    facts.k = dim.value();
    facts.degV = variety_degree(s.V, 0, degree_cap);
  }
  if (facts.k < 1) throw PreconditionError("V must have positive dimension");

  const bool projective = variant == SmtVariant::Projective;
  facts.N_used = projective ? std::max(s.N, n) : s.N;
  const int k_used = projective ? n : facts.k;
  if (facts.N_used < k_used) throw PreconditionError("N must be at least dim V");
  if (facts.q < facts.N_used + 1) throw PreconditionError("need at least N+1 hypersurfaces");
  const VarietyDescriptor ambient = projective ? VarietyDescriptor::projective_space(n) : s.V;
  facts.position = check_position(ambient, s.Q, facts.N_used, degree_cap);
  return facts;
}

SmtTable smt_margins(const SmtScenario& s, SmtVariant variant, const SmtOptions& options) {
  for (double r : s.r_grid)
    if (!(r >= 1)) throw PreconditionError("grid radii must be at least 1");
  SmtTable table;
  table.variant = variant;
  table.facts = analyze_scenario(s, variant, options.degree_cap);
  const auto& facts = table.facts;
  if (facts.position.verdict == PositionReport::Verdict::Fails) {
    std::vector<int> witness = facts.position.witness.value_or(std::vector<int>{});
    throw PositionFailure("hypersurfaces are not in " + std::to_string(facts.N_used) + "-subgeneral position",
                          witness);
  }
  if (facts.position.verdict == PositionReport::Verdict::Inconclusive)
    throw InconclusiveError("position of the hypersurfaces could not be certified");

  const int n = s.V.n();
  if (variant == SmtVariant::Subgeneral) {
    table.coefficient = Rational(facts.q) - Rational((s.N - facts.k + 1) * (facts.k + 1)) - s.epsilon;
    table.truncation =
        truncation_level_subgeneral(facts.degV, facts.k, s.N, facts.d, facts.q, s.epsilon, options.proof_version);
  } else {
    table.coefficient = Rational(facts.q) - Rational((facts.N_used - n + 1) * (n + 1)) - s.epsilon;
    table.truncation = truncation_level_projective(n, facts.N_used, facts.d, s.epsilon);
  }
  table.vacuous = table.coefficient <= 0;
  table.M_from_calculator = !options.M.has_value();
  table.M = options.M.value_or(table.truncation->M0);
  if (table.M < 1) throw PreconditionError("truncation level must be positive");
  const long M = table.M > std::numeric_limits<long>::max() ? kNoTruncation : table.M.convert_to<long>();

  const auto& q = options.quadrature;
  const double r_max = s.r_grid.empty() ? 1 : *std::max_element(s.r_grid.begin(), s.r_grid.end());
  std::vector<std::vector<Zero>> zeros;
  std::vector<Zero> all;
  for (std::size_t i = 0; i < s.Q.size(); ++i) {
    const ExpPoly g = s.f.compose(s.Q[i]);
    if (g.is_zero()) throw PreconditionError("curve lies in hypersurface " + std::to_string(i + 1));
    zeros.push_back(zeros_in_disk(g, r_max * (1 + 10 * q.singularity_shift) + 1, q).entries);
    all.insert(all.end(), zeros.back().begin(), zeros.back().end());
  }
  const double coefficient = table.coefficient.convert_to<double>();
  for (double r : s.r_grid) {
    SmtRow row;
    row.r = r;
    row.radius = nudged_radius(all, r, q.singularity_shift);
    row.T = characteristic_T(s.f, row.radius, q).value;
    for (std::size_t i = 0; i < s.Q.size(); ++i) {
      const double Ni = counting_from_zeros(zeros[i], row.radius, M);
      row.N_truncated_sum += Ni;
      row.rhs += Ni / s.Q[i].degree();
    }
    row.lhs = coefficient * row.T;
    row.margin = row.rhs - row.lhs;
    if (table.vacuous) row.flags.push_back("vacuous");
    if (row.radius != r) row.flags.push_back("nudged");
    if (row.margin < 0) row.flags.push_back("violation");
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace smtkit
