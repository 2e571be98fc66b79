#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "smtkit/algebra/polynomial.hpp"
#include "smtkit/nevanlinna/expression.hpp"
#include "smtkit/nevanlinna/zeros.hpp"

namespace smtkit {

/// Entire curve f = (f_0 : ... : f_n) into P^n given by expressions in z.
/// Construction rejects the all-zero tuple and, for polynomial components,
/// tuples with a nonconstant common factor (not a reduced representation).
class EntireCurve {
 public:
  explicit EntireCurve(std::vector<ExpPoly> components);
  static EntireCurve parse(const std::vector<std::string>& components);

  int n() const { return static_cast<int>(components_.size()) - 1; }
  const std::vector<ExpPoly>& components() const { return components_; }
  bool is_polynomial() const;
  /// True when reducedness was verified (always for polynomial curves; for
  /// exponential ones only when some component has no zeros).
  bool reduced_verified() const { return reduced_verified_; }

  /// Q(f_0, ..., f_n) for a form in n+1 variables.
  ExpPoly compose(const HomogeneousPolynomial& Q) const;

 private:
  std::vector<ExpPoly> components_;
  bool reduced_verified_ = false;
};

inline constexpr long kNoTruncation = std::numeric_limits<long>::max();

struct QuadratureResult {
  double value = 0;
  double error = 0;  // |I_2N - I_N| summed over the circles involved
  int nodes = 0;     // largest node count used
  double radius = 0;  // radius actually used
  bool nudged = false;
};

/// Periodic trapezoidal mean of F(theta) over [0, 2 pi) with node doubling
/// until successive estimates agree to rel_tol (relative, floored at 1) or
/// max_nodes is reached. Throws ConvergenceError at the cap unless
/// allow_unconverged is set.
struct MeanResult {
  Real value;
  Real error;
  int nodes = 0;
  bool converged = false;
};
MeanResult periodic_mean(const std::function<Real(const Real&)>& F, const QuadratureConfig& q,
                         bool allow_unconverged = false);

/// Circle mean of log|g| at radius r. Zeros within min(r/4, 1) of the circle
/// are divided out and their exact contribution log max(r, |a|) added back.
MeanResult mean_log_abs(const ExpPoly& g, const std::vector<Zero>& zeros, double r, const QuadratureConfig& q);

/// T_f(r): mean of log ||f|| on |z| = r minus the mean on |z| = 1.
QuadratureResult characteristic_T(const EntireCurve& f, double r, const QuadratureConfig& q = {});

/// Truncated counting function sum_{|a| <= r} min(mult, M) log(r / max(|a|, 1)).
double counting_from_zeros(const std::vector<Zero>& zeros, double r, long M = kNoTruncation);
double counting_N(const EntireCurve& f, const HomogeneousPolynomial& Q, double r, long M = kNoTruncation,
                  const QuadratureConfig& q = {});

/// m_f(r, Q): mean of log(||f||^d / |Q(f)|) on |z| = r minus the mean on |z| = 1.
QuadratureResult proximity_m(const EntireCurve& f, const HomogeneousPolynomial& Q, double r,
                             const QuadratureConfig& q = {});

/// Replaces r by r (1 + 10 shift) while some zero lies within shift of |z| = r.
/// The base radius 1 is never moved: m(1) = T(1) = 0 must hold exactly, and
/// zeros on the unit circle are handled by the singularity subtraction.
double nudged_radius(const std::vector<Zero>& zeros, double r, double shift);

struct FmtRow {
  double r = 0;
  double radius = 0;  // radius actually used (after a nudge)
  double T = 0;
  double m = 0;
  double N = 0;
  double residual = 0;  // d T - m - N
  double error = 0;     // quadrature error estimate
};

struct FmtTable {
  std::vector<FmtRow> rows;
  double max_deviation = 0;  // max residual - min residual
};

/// First-main-theorem residuals d T(r) - m(r) - N(r) over a grid.
FmtTable fmt_residual(const EntireCurve& f, const HomogeneousPolynomial& Q, const std::vector<double>& r_grid,
                      const QuadratureConfig& q = {});

/// Determinant of the matrix (f_j^{(i)}), i, j = 0..n.
ExpPoly wronskian(const EntireCurve& f);

/// Maximal linearly independent subsets of the hyperplanes' coefficient
/// vectors, in lexicographic order.
std::vector<std::vector<int>> independent_bases(const std::vector<HomogeneousPolynomial>& H);

struct GeneralSmtRow {
  double r = 0;
  double radius = 0;
  double integral = 0;  // mean over |z| = r of max_K sum_{i in K} log(||f|| ||H_i|| / |H_i(f)|)
  double N_W = 0;
  double T = 0;
  double rhs = 0;  // (n + 1 + eps) T
  double margin = 0;  // rhs - integral - N_W
  double error = 0;
  bool converged = true;
};

/// Margins of the second main theorem for hyperplanes on a grid of radii.
/// The integrand has kinks where the maximizing subset changes, so the
/// quadrature is run to its node cap if needed and the error estimate is
/// reported with each row.
std::vector<GeneralSmtRow> hyperplane_smt_margins(const EntireCurve& f, const std::vector<HomogeneousPolynomial>& H,
                                                  double eps, const std::vector<double>& r_grid,
                                                  const QuadratureConfig& q = {});

}  // namespace smtkit
