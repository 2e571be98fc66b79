#pragma once

#include <cstdint>
#include <vector>

#include "smtkit/algebra/polynomial.hpp"

namespace smtkit {

/// n forms P_1..P_n of common degree d in n+1 variables, and a degree u
/// divisible by d.
struct FiltrationParams {
  int n = 0;
  int d = 1;
  int u = 0;
  std::vector<HomogeneousPolynomial> P;
};

/// Shape checks, plus: P_1..P_n together with a random linear form have no
/// common zero (so the P_j meet in finitely many points). Throws
/// PreconditionError otherwise.
void validate_filtration_params(const FiltrationParams& params, std::uint64_t seed = 0);

/// Multi-indices (i) in N_0^n with d * sigma(i) <= u in lexicographic order,
/// the dimensions of
///   W_(i) = sum over (j) >= (i) of P_1^{j_1} ... P_n^{j_n} * C[x]_{u - d sigma(j)}
/// inside C[x]_u, and the successive quotient dimensions m_(i).
struct FiltrationTable {
  int n = 0;
  int d = 1;
  int u = 0;
  std::vector<std::vector<int>> indices;
  std::vector<long> dims;
  std::vector<long> m;  // dims[s] - dims[s+1]; the last entry is dims.back()

  long K() const { return static_cast<long>(indices.size()); }
};

FiltrationTable filtration_dims(const FiltrationParams& params);

/// All multi-indices of N_0^n with sigma <= total, in lexicographic order.
std::vector<std::vector<int>> bounded_indices(int n, int total);

/// Indices with d sigma(i) < u - n d whose quotient dimension is not d^n.
std::vector<std::vector<int>> quotient_dimension_violations(const FiltrationTable& table);

struct BValues {
  std::vector<Rational> b;        // b_j = sum_(i) m_(i) i_j, j = 1..n
  Rational bound;                 // d^n (u - n d) / ((n+1) d) * C(u/d, n)
  std::vector<Rational> margins;  // b_j - bound
};

BValues compute_b(const FiltrationTable& table);

/// K = C(u/d + n, n).
Integer count_K(int u, int d, int n);

}  // namespace smtkit
