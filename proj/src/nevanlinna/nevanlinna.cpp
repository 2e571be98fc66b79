#include "smtkit/nevanlinna/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "smtkit/algebra/linalg.hpp"

namespace smtkit {

EntireCurve::EntireCurve(std::vector<ExpPoly> components) : components_(std::move(components)) {
  if (components_.size() < 2) throw PreconditionError("an entire curve needs at least two components");
  if (std::all_of(components_.begin(), components_.end(), [](const ExpPoly& e) { return e.is_zero(); }))
    throw PreconditionError("all components are identically zero");
  if (is_polynomial()) {
    UPoly g;
    for (const auto& c : components_) g = gcd(g, c.as_polynomial());
    if (g.degree() > 0)
      throw PreconditionError("components share the factor " + g.to_string() + "; not a reduced representation");
    reduced_verified_ = true;
  } else {
    // A term c*exp(q) never vanishes, so no common zero is possible.
    for (const auto& c : components_)
      if (c.terms().size() == 1 && c.terms().begin()->second.degree() == 0) reduced_verified_ = true;
  }
}

EntireCurve EntireCurve::parse(const std::vector<std::string>& components) {
  std::vector<ExpPoly> parsed;
  for (const auto& text : components) parsed.push_back(parse_curve_expression(text));
  return EntireCurve(std::move(parsed));
}

bool EntireCurve::is_polynomial() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const ExpPoly& e) { return e.is_zero() || e.is_polynomial(); });
}

ExpPoly EntireCurve::compose(const HomogeneousPolynomial& Q) const {
  if (Q.n_vars() != n() + 1) throw PreconditionError("form and curve live in different projective spaces");
  std::vector<std::vector<ExpPoly>> powers(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) {
    powers[i].push_back(ExpPoly(GaussRational(1)));
    for (int e = 1; e <= Q.degree(); ++e) powers[i].push_back(powers[i].back() * components_[i]);
  }
  ExpPoly out;
  for (const auto& [mono, coeff] : Q.terms()) {
    ExpPoly term{GaussRational(coeff)};
    for (int i = 0; i < Q.n_vars(); ++i)
      if (mono[i] > 0) term *= powers[i][mono[i]];
    out += term;
  }
  return out;
}

MeanResult periodic_mean(const std::function<Real(const Real&)>& F, const QuadratureConfig& q,
                         bool allow_unconverged) {
  q.validate();
  const Real two_pi = 2 * pi_constant<Real>();
  // Rotated nodes never land on zeros at rational multiples of pi.
  const Real phase = sqrt(Real(2)) / 1000;
  int n = q.nodes;
  Real sum = 0;
  for (int j = 0; j < n; ++j) sum += F(phase + two_pi * j / n);
  Real estimate = sum / n;
  while (true) {
    if (2 * n > q.max_nodes) {
      if (allow_unconverged) return {estimate, Real(-1), n, false};
      throw ConvergenceError("quadrature did not converge at " + std::to_string(n) + " nodes");
    }
    Real odd = 0;
    for (int j = 0; j < n; ++j) odd += F(phase + two_pi * (2 * j + 1) / (2 * n));
    sum += odd;
    n *= 2;
    Real next = sum / n;
    Real diff = abs(next - estimate);
    if (diff <= Real(q.rel_tol) * max(Real(1), abs(next))) return {next, diff, n, true};
    if (2 * n > q.max_nodes && !allow_unconverged) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "quadrature did not converge at " << n << " nodes; last estimates "
          << estimate.convert_to<double>() << " and " << next.convert_to<double>();
      throw ConvergenceError(msg.str());
    }
    if (2 * n > q.max_nodes) return {next, diff, n, false};
    estimate = next;
  }
}

namespace {

// Zeros of g with |a| <= R; every zero for polynomials.
std::vector<Zero> zeros_up_to(const ExpPoly& g, double R, const QuadratureConfig& q) {
  if (g.is_zero()) throw PreconditionError("the composed function vanishes identically");
  if (g.is_polynomial()) return polynomial_zeros(g.as_polynomial(), q.precision);
  return zeros_in_disk(g, R, q).entries;
}

double singular_band(double r) { return std::min(0.25 * r, 1.0); }

MeanResult mean_log_norm(const EntireCurve& f, double r, const QuadratureConfig& q) {
  std::vector<CompiledExpPoly> comps;
  for (const auto& c : f.components()) comps.emplace_back(c);
  const Real radius(r);
  auto F = [&](const Real& theta) -> Real {
    const ComplexValue z = polar(radius, theta);
    Real s = 0;
    for (const auto& c : comps)
      if (!c.empty()) s += norm_sq(c(z));
    return log(s) / 2;
  };
  return periodic_mean(F, q);
}

}  // namespace

MeanResult mean_log_abs(const ExpPoly& g, const std::vector<Zero>& zeros, double r, const QuadratureConfig& q) {
  PrecisionScope scope(q.precision);
  const CompiledExpPoly cg(g);
  const Real radius(r);
  const double band = singular_band(r);
  std::vector<const Zero*> near;
  Real exact = 0;
  for (const auto& z : zeros) {
    const Real a = abs(z.location);
    if (abs(a - radius) < Real(band)) {
      near.push_back(&z);
      exact += z.multiplicity * log(max(radius, a));
    }
  }
  auto F = [&](const Real& theta) -> Real {
    const ComplexValue z = polar(radius, theta);
    Real v = log_abs(cg(z));
    for (const Zero* a : near) v -= a->multiplicity * log_abs(z - a->location);
    return v;
  };
  MeanResult m = periodic_mean(F, q);
  m.value += exact;
  return m;
}

double nudged_radius(const std::vector<Zero>& zeros, double r, double shift) {
  if (r == 1) return r;
  bool moved = true;
  while (moved) {
    moved = false;
    for (const auto& z : zeros)
      if (std::abs(abs(z.location).convert_to<double>() - r) < shift) {
        r *= 1 + 10 * shift;
        moved = true;
      }
  }
  return r;
}

QuadratureResult characteristic_T(const EntireCurve& f, double r, const QuadratureConfig& q) {
  if (!(r >= 1)) throw PreconditionError("radius must be at least 1");
  PrecisionScope scope(q.precision);
  const MeanResult at_r = mean_log_norm(f, r, q);
  const MeanResult at_1 = mean_log_norm(f, 1, q);
  return {(at_r.value - at_1.value).convert_to<double>(), (at_r.error + at_1.error).convert_to<double>(),
          std::max(at_r.nodes, at_1.nodes), r, false};
}

double counting_from_zeros(const std::vector<Zero>& zeros, double r, long M) {
  if (M < 1) throw PreconditionError("truncation level must be positive");
  double total = 0;
  for (const auto& z : zeros) {
    const double a = abs(z.location).convert_to<double>();
    if (a <= r) total += static_cast<double>(std::min<long>(z.multiplicity, M)) * std::log(r / std::max(a, 1.0));
  }
  return total;
}

double counting_N(const EntireCurve& f, const HomogeneousPolynomial& Q, double r, long M, const QuadratureConfig& q) {
  if (!(r >= 1)) throw PreconditionError("radius must be at least 1");
  return counting_from_zeros(zeros_up_to(f.compose(Q), r, q), r, M);
}

QuadratureResult proximity_m(const EntireCurve& f, const HomogeneousPolynomial& Q, double r,
                             const QuadratureConfig& q) {
  if (!(r >= 1)) throw PreconditionError("radius must be at least 1");
  PrecisionScope scope(q.precision);
  const ExpPoly g = f.compose(Q);
  const auto zeros = zeros_up_to(g, r * (1 + 10 * q.singularity_shift) + 1, q);
  const double reff = nudged_radius(zeros, r, q.singularity_shift);
  const MeanResult norm_r = mean_log_norm(f, reff, q);
  const MeanResult norm_1 = mean_log_norm(f, 1, q);
  const MeanResult g_r = mean_log_abs(g, zeros, reff, q);
  const MeanResult g_1 = mean_log_abs(g, zeros, 1, q);
  const Real d(Q.degree());
  const Real value = d * (norm_r.value - norm_1.value) - (g_r.value - g_1.value);
  const Real error = d * (norm_r.error + norm_1.error) + g_r.error + g_1.error;
  return {value.convert_to<double>(), error.convert_to<double>(),
          std::max({norm_r.nodes, norm_1.nodes, g_r.nodes, g_1.nodes}), reff, reff != r};
}

FmtTable fmt_residual(const EntireCurve& f, const HomogeneousPolynomial& Q, const std::vector<double>& r_grid,
                      const QuadratureConfig& q) {
  FmtTable table;
  if (r_grid.empty()) return table;
  for (double r : r_grid)
    if (!(r >= 1)) throw PreconditionError("grid radii must be at least 1");
  PrecisionScope scope(q.precision);
  const ExpPoly g = f.compose(Q);
  const double r_max = *std::max_element(r_grid.begin(), r_grid.end());
  const auto zeros = zeros_up_to(g, r_max * (1 + 10 * q.singularity_shift) + 1, q);
  const MeanResult norm_1 = mean_log_norm(f, 1, q);
  const MeanResult g_1 = mean_log_abs(g, zeros, 1, q);
  const Real d(Q.degree());
  for (double r : r_grid) {
    const double reff = nudged_radius(zeros, r, q.singularity_shift);
    const MeanResult norm_r = mean_log_norm(f, reff, q);
    const MeanResult g_r = mean_log_abs(g, zeros, reff, q);
    const Real T = norm_r.value - norm_1.value;
    const Real m = d * T - (g_r.value - g_1.value);
    const Real N(counting_from_zeros(zeros, reff));
    FmtRow row;
    row.r = r;
    row.radius = reff;
    row.T = T.convert_to<double>();
    row.m = m.convert_to<double>();
    row.N = N.convert_to<double>();
    row.residual = (d * T - m - N).convert_to<double>();
    row.error = (d * (norm_r.error + norm_1.error) + g_r.error + g_1.error).convert_to<double>();
    table.rows.push_back(row);
  }
  auto [lo, hi] = std::minmax_element(table.rows.begin(), table.rows.end(),
                                      [](const FmtRow& a, const FmtRow& b) { return a.residual < b.residual; });
  table.max_deviation = hi->residual - lo->residual;
  return table;
}

ExpPoly wronskian(const EntireCurve& f) {
  const int size = f.n() + 1;
  std::vector<std::vector<ExpPoly>> rows(size);
  rows[0] = f.components();
  for (int i = 1; i < size; ++i)
    for (const auto& e : rows[i - 1]) rows[i].push_back(e.derivative());
  std::vector<int> perm(size);
  for (int i = 0; i < size; ++i) perm[i] = i;
  ExpPoly det;
  do {
    int inversions = 0;
    for (int a = 0; a < size; ++a)
      for (int b = a + 1; b < size; ++b)
        if (perm[a] > perm[b]) ++inversions;
    ExpPoly term(GaussRational(inversions % 2 ? -1 : 1));
    for (int i = 0; i < size && !term.is_zero(); ++i) term *= rows[i][perm[i]];
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

namespace {

RationalMatrix hyperplane_matrix(const std::vector<HomogeneousPolynomial>& H, const std::vector<int>& rows) {
  const int cols = H.front().n_vars();
  RationalMatrix m = RationalMatrix::Zero(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [mono, coeff] : H[rows[i]].terms())
      for (int j = 0; j < cols; ++j)
        if (mono[j] == 1) m(static_cast<Eigen::Index>(i), j) = coeff;
  return m;
}

}  // namespace

std::vector<std::vector<int>> independent_bases(const std::vector<HomogeneousPolynomial>& H) {
  if (H.empty()) throw PreconditionError("no hyperplanes");
  for (const auto& h : H) {
    if (h.degree() != 1 || h.is_zero()) throw PreconditionError("hyperplanes must be nonzero linear forms");
    if (h.n_vars() != H.front().n_vars()) throw PreconditionError("hyperplanes in different spaces");
  }
  const int count = static_cast<int>(H.size());
  std::vector<int> all(count);
  for (int i = 0; i < count; ++i) all[i] = i;
  const int rank = rational_rank(hyperplane_matrix(H, all)).rank;
  std::vector<std::vector<int>> out;
  // Lexicographic enumeration of rank-sized subsets.
  std::vector<int> pick(rank);
  for (int i = 0; i < rank; ++i) pick[i] = i;
  while (true) {
    if (rational_rank(hyperplane_matrix(H, pick)).rank == rank) out.push_back(pick);
    int i = rank - 1;
    while (i >= 0 && pick[i] == count - rank + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < rank; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

std::vector<GeneralSmtRow> hyperplane_smt_margins(const EntireCurve& f, const std::vector<HomogeneousPolynomial>& H,
                                                  double eps, const std::vector<double>& r_grid,
                                                  const QuadratureConfig& q) {
  if (!(eps > 0)) throw PreconditionError("epsilon must be positive");
  const auto bases = independent_bases(H);
  if (bases.empty()) throw PreconditionError("no linearly independent subsets");
  for (const auto& h : H)
    if (h.n_vars() != f.n() + 1) throw PreconditionError("hyperplanes and curve live in different spaces");
  const ExpPoly W = wronskian(f);
  if (W.is_zero()) throw PreconditionError("curve is linearly degenerate (Wronskian vanishes)");
  for (double r : r_grid)
    if (!(r >= 1)) throw PreconditionError("grid radii must be at least 1");

  QuadratureConfig qi = q;
  qi.rel_tol = std::max(q.rel_tol, 1e-8);
  PrecisionScope scope(q.precision);
  const double r_max = r_grid.empty() ? 1 : *std::max_element(r_grid.begin(), r_grid.end());
  const double reach = r_max * (1 + 10 * q.singularity_shift) + 1;

  std::vector<ExpPoly> composed;
  std::vector<CompiledExpPoly> hf;
  std::vector<Real> log_norm_h;
  std::vector<Zero> singular;
  for (const auto& h : H) {
    composed.push_back(f.compose(h));
    if (composed.back().is_zero()) throw PreconditionError("curve lies in one of the hyperplanes");
    hf.emplace_back(composed.back());
    Real s = 0;
    for (const auto& [mono, coeff] : h.terms()) s += Real(Rational(coeff * coeff));
    log_norm_h.push_back(log(s) / 2);
    for (auto& z : zeros_up_to(composed.back(), reach, q)) singular.push_back(std::move(z));
  }
  const auto w_zeros = zeros_up_to(W, reach, q);
  std::vector<CompiledExpPoly> comps;
  for (const auto& c : f.components()) comps.emplace_back(c);

  std::vector<GeneralSmtRow> rows;
  for (double r : r_grid) {
    const double reff = nudged_radius(singular, r, q.singularity_shift);
    const Real radius(reff);
    auto F = [&](const Real& theta) -> Real {
      const ComplexValue z = polar(radius, theta);
      Real s = 0;
      for (const auto& c : comps)
        if (!c.empty()) s += norm_sq(c(z));
      const Real log_f = log(s) / 2;
      std::vector<Real> L(H.size());
      for (std::size_t i = 0; i < H.size(); ++i) L[i] = log_f + log_norm_h[i] - log_abs(hf[i](z));
      Real best;
      for (std::size_t b = 0; b < bases.size(); ++b) {
        Real total = 0;
        for (int i : bases[b]) total += L[i];
        if (b == 0 || total > best) best = total;
      }
      return best;
    };
    const MeanResult integral = periodic_mean(F, qi, true);
    const QuadratureResult T = characteristic_T(f, reff, q);
    GeneralSmtRow row;
    row.r = r;
    row.radius = reff;
    row.integral = integral.value.convert_to<double>();
    row.N_W = counting_from_zeros(w_zeros, reff);
    row.T = T.value;
    row.rhs = (f.n() + 1 + eps) * T.value;
    row.margin = row.rhs - row.integral - row.N_W;
    row.error = integral.error.convert_to<double>() + T.error;
    row.converged = integral.converged;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace smtkit
