#include "smtkit/smt/calculators.hpp"

#include <mpfr.h>

namespace smtkit {

namespace {

Integer factorial(long n) {
  Integer f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

Rational rational_power(const Rational& x, long e) {
  Rational out = 1;
  for (long i = 0; i < e; ++i) out *= x;
  return out;
}

std::size_t bit_length(const Integer& v) { return mpz_sizeinbase(v.backend().data(), 2); }

// floor(a * e^k + b) with enough precision that the fractional part is
// resolved; a > 0, b an integer offset.
std::pair<Integer, Real> floor_times_exp(const Rational& a, int k, long b) {
  unsigned bits = 256 + static_cast<unsigned>(bit_length(numerator(a)) + 2 * static_cast<std::size_t>(k));
  for (int attempt = 0; attempt < 8; ++attempt, bits *= 2) {
    PrecisionScope scope(bits);
    const Real raw = Real(a) * exp(Real(k)) + b;
    const Real fl = floor(raw);
    const Real frac = raw - fl;
    const Real guard = ldexp(Real(1), -64);
    if (frac > guard && frac < 1 - guard) {
      Integer result;
      mpfr_get_z(result.backend().data(), fl.backend().data(), MPFR_RNDD);
      return {result, raw};
    }
  }
  throw InconclusiveError("could not resolve the integer part of the truncation level");
}

std::string str(const Integer& v) { return v.str(); }

}  // namespace

TruncationResult truncation_level_subgeneral(long degV, int k, int N, long d, long q, const Rational& eps,
                                             bool proof_version) {
  if (!(eps > 0)) throw PreconditionError("epsilon must be positive");
  if (k < 1 || k > N) throw PreconditionError("need 1 <= k <= N");
  if (d < 1 || q < 1 || degV < 1) throw PreconditionError("degrees and counts must be positive");
  const long p = N - k + 1;
  const Integer l = (k + 1) * factorial(q);
  Rational a = rational_power(Rational(degV), k + 1) * rational_power(Rational(d), static_cast<long>(k) * k + k) *
               rational_power(Rational(p), k) * rational_power(Rational(2 * k + 4), k) / rational_power(eps, k);
  a *= proof_version ? rational_power(Rational(N - k + 1), k) : rational_power(Rational(l), k);
  auto [M0, raw] = floor_times_exp(a, k, 0);
  TruncationResult out{M0, raw, "", {}};
  out.formula = proof_version ? "deg(V)^(k+1) e^k d^(k^2+k) (N-k+1)^k (2k+4)^k p^k eps^-k"
                              : "deg(V)^(k+1) e^k d^(k^2+k) p^k (2k+4)^k l^k eps^-k";
  out.echo = {{"degV", std::to_string(degV)}, {"k", std::to_string(k)},  {"N", std::to_string(N)},
              {"d", std::to_string(d)},       {"q", std::to_string(q)},  {"eps", to_string(eps)},
              {"p", std::to_string(p)},       {"l", str(l)},             {"variant", proof_version ? "proof" : "statement"}};
  const FiltrationDegree u = filtration_degree_subgeneral(N, k, p, degV, eps);
  out.echo.emplace_back("u", str(u.u));
  out.echo.emplace_back("eps_prime", to_string(u.eps_prime));
  if (l < 1000000 && u.u < 10000) out.echo.emplace_back("l_u", str(l_u(l, u.u.convert_to<long>())));
  return out;
}

TruncationResult truncation_level_projective(int n, int N, long d, const Rational& eps) {
  if (!(eps > 0)) throw PreconditionError("epsilon must be positive");
  if (n < 1 || N < n) throw PreconditionError("need N >= n >= 1");
  if (d < 1) throw PreconditionError("degree must be positive");
  const long p = N - n + 1;
  const Integer I = ceil_rational(1 / eps);
  const Rational base = Rational(Integer(d) * p * (n + 1) * (n + 1) * I);
  auto [M0, raw] = floor_times_exp(4 * rational_power(base, n), n, -1);
  TruncationResult out{M0, raw, "4 (e d p (n+1)^2 ceil(1/eps))^n - 1", {}};
  out.echo = {{"n", std::to_string(n)}, {"N", std::to_string(N)}, {"d", std::to_string(d)},
              {"eps", to_string(eps)},  {"p", std::to_string(p)}, {"ceil(1/eps)", str(I)}};
  return out;
}

FiltrationDegree filtration_degree_subgeneral(int N, int k, long p, long Delta, const Rational& eps) {
  if (!(eps > 0) || N < 1 || k < 1 || p < 1 || Delta < 1 || N < k)
    throw PreconditionError("filtration degree inputs must be positive with N >= k");
  const Integer C = Integer(N - k + 1) * (2 * k + 1) * (k + 1) * p * Delta;
  const Integer u = floor_rational(Rational(C) / eps) + 1;
  return {u, eps - Rational(C) / Rational(u), C};
}

ProjectiveFiltrationDegree filtration_degree_projective(int n, long d, long p, const Rational& eps) {
  if (!(eps > 0) || n < 1 || d < 1 || p < 1) throw PreconditionError("filtration degree inputs must be positive");
  const Integer n1 = n + 1;
  const Integer u = n1 * d + p * n1 * n1 * n1 * ceil_rational(1 / eps) * d;
  const Rational ratio = Rational(n1 * d) / Rational(u - n1 * d);
  if (ratio > Rational(1) / Rational(n1 * n1)) throw std::logic_error("filtration degree ratio bound violated");
  return {u, ratio};
}

bool power_bound_holds(int n, const Rational& x) {
  if (n < 1) throw PreconditionError("n must be positive");
  if (!(x > 0) || x > Rational(1, (n + 1) * (n + 1))) throw PreconditionError("x must lie in (0, 1/(n+1)^2]");
  return rational_power(1 + x, n) <= 1 + (n + 1) * x;
}

Integer l_u(const Integer& l, long u) {
  if (l < 1 || u < 0) throw PreconditionError("l_u needs l >= 1 and u >= 0");
  Integer result = 1;
  const Integer top = l + u - 1;
  for (long i = 1; i <= u; ++i) {
    result *= top - u + i;
    result /= i;
  }
  return result - 1;
}

HilbertCountBound hilbert_count_bound(long H_u, long Delta, int k, long u) {
  HilbertCountBound out;
  out.lhs = H_u - 1;
  out.rhs = Delta * binomial(k + u, k);
  out.holds = out.lhs <= out.rhs;
  return out;
}

}  // namespace smtkit
