#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smtkit/algebra/complex.hpp"
#include "smtkit/algebra/numeric.hpp"

namespace smtkit {

/// Exponent vector of x_0^{a_0} ... x_n^{a_n}.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents);
  static Monomial unit(int n_vars) { return Monomial(std::vector<int>(n_vars, 0)); }

  int n_vars() const { return static_cast<int>(exponents_.size()); }
  int degree() const { return degree_; }
  int operator[](int i) const { return exponents_[i]; }
  std::span<const int> exponents() const { return exponents_; }

  Monomial operator*(const Monomial& other) const;

  /// Weighted degree a . c.
  template <typename Weight>
  Weight dot(std::span<const Weight> c) const {
    Weight sum{0};
    for (int i = 0; i < n_vars(); ++i) sum += c[i] * exponents_[i];
    return sum;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string to_string() const;

 private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

/// Graded-lex order with x0 heaviest: true when a comes strictly before b in
/// the canonical (descending) listing.
bool monomial_before(const Monomial& a, const Monomial& b);

struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const { return monomial_before(a, b); }
};

/// All degree-m monomials in n_vars variables, in the canonical descending
/// graded-lex order (first element x0^m).
std::vector<Monomial> monomial_basis(int n_vars, int m);

/// Index lookup for the monomials of one degree, consistent with monomial_basis.
class MonomialIndex {
 public:
  MonomialIndex(int n_vars, int m);
  int n_vars() const { return n_vars_; }
  int degree() const { return degree_; }
  const std::vector<Monomial>& basis() const { return basis_; }
  int size() const { return static_cast<int>(basis_.size()); }
  int index_of(const Monomial& mono) const;

 private:
  int n_vars_;
  int degree_;
  std::vector<Monomial> basis_;
  std::map<std::vector<int>, int> lookup_;
};

/// Homogeneous polynomial with exact rational coefficients. The zero
/// polynomial keeps its declared degree.
class HomogeneousPolynomial {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  HomogeneousPolynomial(int n_vars, int degree);
  HomogeneousPolynomial(int n_vars, int degree, TermMap terms);

  static HomogeneousPolynomial constant(int n_vars, const Rational& value);
  static HomogeneousPolynomial variable(int n_vars, int index);
  static HomogeneousPolynomial monomial(const Monomial& mono, const Rational& coeff = 1);

  int n_vars() const { return n_vars_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  Rational coefficient(const Monomial& mono) const;

  HomogeneousPolynomial& operator+=(const HomogeneousPolynomial& other);
  HomogeneousPolynomial& operator-=(const HomogeneousPolynomial& other);
  HomogeneousPolynomial& operator*=(const Rational& scalar);
  HomogeneousPolynomial operator-() const;

  friend HomogeneousPolynomial operator+(HomogeneousPolynomial a, const HomogeneousPolynomial& b) {
    return a += b;
  }
  friend HomogeneousPolynomial operator-(HomogeneousPolynomial a, const HomogeneousPolynomial& b) {
    return a -= b;
  }
  friend HomogeneousPolynomial operator*(HomogeneousPolynomial a, const Rational& s) { return a *= s; }
  friend HomogeneousPolynomial operator*(const Rational& s, HomogeneousPolynomial a) { return a *= s; }
  friend bool operator==(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
    return a.n_vars_ == b.n_vars_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// Multiplies every term by a monomial.
  HomogeneousPolynomial shifted(const Monomial& mono) const;

  /// Canonical text form accepted by parse_polynomial.
  std::string to_string() const;

 private:
  void add_term(const Monomial& mono, const Rational& coeff);

  int n_vars_;
  int degree_;
  TermMap terms_;
};

HomogeneousPolynomial poly_product(const HomogeneousPolynomial& p, const HomogeneousPolynomial& q);
HomogeneousPolynomial poly_power(const HomogeneousPolynomial& p, int exponent);

inline HomogeneousPolynomial operator*(const HomogeneousPolynomial& p, const HomogeneousPolynomial& q) {
  return poly_product(p, q);
}

/// Parses the polynomial grammar
///   expr := ['+'|'-'] term (('+'|'-') term)*
///   term := coeff ('*' factor)* | factor ('*' factor)*
///   factor := 'x' nat ('^' nat)?      coeff := int ('/' nat)?
/// Throws InputError (with position) on syntax errors, unknown variables and
/// non-homogeneous input. A text that reduces to zero gets the degree of its
/// terms, or zero_degree when it has none.
HomogeneousPolynomial parse_polynomial(std::string_view text, int n_vars, int zero_degree = 0);

/// Guard bits used by eval_poly: ceil(log2(term count)) + 4.
int eval_guard_bits(std::size_t term_count);

/// Evaluates P at a complex point. The working precision is
/// precision + eval_guard_bits(term count); the result is rounded to precision.
ComplexValue eval_poly(const HomogeneousPolynomial& p, std::span<const ComplexValue> point,
                       unsigned precision = 128);

/// Evaluation at the ambient precision, for any complex scalar type.
template <typename Scalar>
Complex<Scalar> evaluate(const HomogeneousPolynomial& p, std::span<const Complex<Scalar>> point) {
  Complex<Scalar> sum;
  std::vector<std::vector<Complex<Scalar>>> powers(p.n_vars());
  for (int i = 0; i < p.n_vars(); ++i) {
    powers[i].push_back(Complex<Scalar>(Scalar(1)));
    for (int e = 1; e <= p.degree(); ++e) powers[i].push_back(powers[i].back() * point[i]);
  }
  for (const auto& [mono, coeff] : p.terms()) {
    Complex<Scalar> term(static_cast<Scalar>(coeff));
    for (int i = 0; i < p.n_vars(); ++i)
      if (mono[i] > 0) term *= powers[i][mono[i]];
    sum += term;
  }
  return sum;
}

}  // namespace smtkit
