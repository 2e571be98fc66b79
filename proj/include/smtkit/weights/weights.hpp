#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smtkit/algebra/polynomial.hpp"
#include "smtkit/variety/variety.hpp"

namespace smtkit {

/// Non-negative integer weights c_0..c_n.
using WeightVector = std::vector<long>;

void validate_weights(const WeightVector& c, int n);

/// One term coeff * [J_1]...[J_s]; brackets are sorted index sets, kept as a
/// sorted multiset.
struct BracketTerm {
  Rational coefficient;
  std::vector<std::vector<int>> brackets;
};

/// Polynomial in the brackets [J] = det(u_{i, j_t}), i, t = 0..k, for index
/// sets J of size k+1 in {0..n}. Every term has the same number of brackets.
class BracketPolynomial {
 public:
  BracketPolynomial(int n, int k) : n_(n), k_(k) {}
  BracketPolynomial(int n, int k, std::vector<BracketTerm> terms);

  int n() const { return n_; }
  int k() const { return k_; }
  /// Number of brackets per term (the degree in each block of u).
  int degree() const;
  const std::vector<BracketTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Same polynomial with identical bracket monomials merged and zero terms dropped.
  BracketPolynomial merged() const;

  std::string to_string() const;

 private:
  int n_;
  int k_;
  std::vector<BracketTerm> terms_;
};

/// Text form: terms like "3/2 * [0,1][1,2]" or "[0,2]^2" joined by + and -.
BracketPolynomial parse_bracket_polynomial(std::string_view text, int n);

/// The bracket [J]: Chow form of the coordinate plane {x_j = 0 for j not in J}.
BracketPolynomial coordinate_subspace_chow_form(std::vector<int> J, int n);

/// Index of u_{i,j} among the (k+1)(n+1) block variables.
inline int block_variable(int n, int i, int j) { return i * (n + 1) + j; }

/// Expansion into a form of degree (k+1)*degree in the variables u_{i,j}.
HomogeneousPolynomial expand_brackets(const BracketPolynomial& F);

/// Weight sum_{j in J} c_j of one bracket, and of a bracket monomial.
long bracket_weight(const std::vector<int>& J, const WeightVector& c);
long bracket_weight(const BracketTerm& term, const WeightVector& c);

struct ChowWeightResult {
  long value = 0;                     // leading t-exponent from substitution
  std::optional<long> combinatorial;  // top non-cancelling bracket weight, when expanded
  bool agree = true;
  int rounds = 0;  // substitution rounds used
};

struct ChowWeightOptions {
  std::uint64_t seed = 0;
  int max_rounds = 12;
  std::size_t expansion_limit = 200000;  // skip the combinatorial path above this many expanded terms
};

/// Leading exponent e_0 of F(t^{c_j} u_{ij}). Computed by substituting random
/// rationals for u and reading the top surviving weight (two samples per
/// round must agree), and cross-checked against the top-weight group of
/// bracket monomials whose expanded sum does not cancel.
ChowWeightResult chow_weight(const BracketPolynomial& F, const WeightVector& c, const ChowWeightOptions& options = {});

struct HilbertWeightResult {
  Rational S;
  std::vector<Monomial> basis;
  long h = 0;                   // H(m) = basis size
  int ideal_rank = 0;           // dim I_m
  std::vector<int> basis_columns;  // positions in monomial_basis(n+1, m)
};

/// Maximum of sum a_i . c over monomial bases of C[x]_m / I_m, by matroid
/// greedy: monomials sorted by a . c descending, ties by the global order.
HilbertWeightResult hilbert_weight(const VarietyDescriptor& v, int m, const WeightVector& c);

struct WeightMargin {
  Rational margin;
  Rational lhs;
  Rational rhs;
};

/// S/(m H(m)) - [ e/((n+1) Delta) - (2n+1) Delta max c / m ]; needs m > Delta.
/// Delta is the bracket degree of F, which must match the degree of V.
WeightMargin hilbert_chow_margin(const VarietyDescriptor& v, const BracketPolynomial& F, int m,
                                 const WeightVector& c, std::uint64_t seed = 0);

/// e_Y(c) - (sum_{i in subset} c_i) Delta, for a subset whose coordinate
/// zero locus misses Y (certified first).
WeightMargin chow_subset_margin(const VarietyDescriptor& y, const BracketPolynomial& F, const WeightVector& c,
                                const std::vector<int>& subset, std::uint64_t seed = 0);

}  // namespace smtkit
