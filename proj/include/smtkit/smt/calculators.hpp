#pragma once

#include <string>
#include <utility>
#include <vector>

#include "smtkit/algebra/numeric.hpp"

namespace smtkit {

struct TruncationResult {
  Integer M0;  // floor(raw)
  Real raw;
  std::string formula;
  std::vector<std::pair<std::string, std::string>> echo;  // inputs and derived quantities
};

/// Truncation level for hypersurfaces in N-subgeneral position on a
/// k-dimensional V:
///   floor(deg(V)^(k+1) e^k d^(k^2+k) p^k (2k+4)^k l^k eps^-k),
/// p = N - k + 1, l = (k + 1) q!. With proof_version the factor l^k is
/// replaced by (N - k + 1)^k, the bound reached at the end of the argument.
TruncationResult truncation_level_subgeneral(long degV, int k, int N, long d, long q, const Rational& eps,
                                             bool proof_version = false);

/// Truncation level on projective space: floor(4 (e d p (n+1)^2 ceil(1/eps))^n - 1), p = N - n + 1.
TruncationResult truncation_level_projective(int n, int N, long d, const Rational& eps);

struct FiltrationDegree {
  Integer u;
  Rational eps_prime;  // eps - C/u, in (0, eps)
  Integer C;           // (N-k+1)(2k+1)(k+1) p Delta
};

/// Smallest integer u > C/eps, so that eps' = eps - C/u is positive.
FiltrationDegree filtration_degree_subgeneral(int N, int k, long p, long Delta, const Rational& eps);

struct ProjectiveFiltrationDegree {
  Integer u;      // (n+1) d + p (n+1)^3 ceil(1/eps) d
  Rational ratio;  // (n+1) d / (u - (n+1) d), at most 1/(n+1)^2
};

ProjectiveFiltrationDegree filtration_degree_projective(int n, long d, long p, const Rational& eps);

/// (1 + x)^n <= 1 + (n + 1) x, exactly, for 0 < x <= 1/(n+1)^2.
bool power_bound_holds(int n, const Rational& x);

/// binom(l + u - 1, u) - 1.
Integer l_u(const Integer& l, long u);

struct HilbertCountBound {
  long lhs = 0;     // H(u) - 1
  Integer rhs;      // Delta binom(k + u, k)
  bool holds = false;
};

HilbertCountBound hilbert_count_bound(long H_u, long Delta, int k, long u);

}  // namespace smtkit
