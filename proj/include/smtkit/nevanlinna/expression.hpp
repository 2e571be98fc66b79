#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "smtkit/algebra/complex.hpp"
#include "smtkit/algebra/numeric.hpp"

namespace smtkit {

/// Exact element a + b i of Q(i).
struct GaussRational {
  Rational re{0};
  Rational im{0};

  GaussRational() = default;
  GaussRational(Rational r) : re(std::move(r)) {}  // NOLINT(implicit)
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussRational(long r) : re(r) {}  // NOLINT(implicit)

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);
  GaussRational operator-() const { return {-re, -im}; }
  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }

  ComplexValue to_complex() const;
  std::string to_string() const;
};

/// Polynomial in z over Q(i); coefficient i belongs to z^i, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  UPoly(GaussRational constant);  // NOLINT(implicit)
  explicit UPoly(std::vector<GaussRational> coefficients);
  static UPoly z() { return UPoly(std::vector<GaussRational>{0, 1}); }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<GaussRational>& coefficients() const { return c_; }
  GaussRational coefficient(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : GaussRational(); }
  GaussRational leading() const { return c_.empty() ? GaussRational() : c_.back(); }

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const UPoly& o);
  UPoly operator-() const;
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(UPoly a, const UPoly& b) { return a *= b; }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator<(const UPoly& a, const UPoly& b);

  UPoly derivative() const;
  /// Quotient and remainder of Euclidean division; divisor nonzero.
  std::pair<UPoly, UPoly> divmod(const UPoly& divisor) const;
  UPoly monic() const;
  /// Largest power of z dividing the polynomial (0 for the zero polynomial).
  int order_at_zero() const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<GaussRational> c_;
};

/// Monic gcd.
UPoly gcd(UPoly a, UPoly b);

/// Square-free decomposition: g = lead * prod_i factors[i]^(i+1), factors monic
/// and pairwise coprime (Yun's algorithm).
std::vector<UPoly> square_free_decomposition(const UPoly& g);

/// Finite sum of p_i(z) exp(q_i(z)) with distinct exponents q_i and nonzero
/// p_i. Such a sum is the zero function only when it has no terms, so
/// equality and zero tests are exact.
class ExpPoly {
 public:
  using TermMap = std::map<UPoly, UPoly>;  // exponent -> coefficient polynomial

  ExpPoly() = default;
  ExpPoly(UPoly p);  // NOLINT(implicit)
  ExpPoly(GaussRational c) : ExpPoly(UPoly(std::move(c))) {}  // NOLINT(implicit)
  static ExpPoly exp_of(const UPoly& q);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when the only exponent is 0 (an ordinary polynomial).
  bool is_polynomial() const;
  /// The polynomial, for is_polynomial() expressions.
  UPoly as_polynomial() const;

  ExpPoly& operator+=(const ExpPoly& o);
  ExpPoly& operator-=(const ExpPoly& o);
  ExpPoly& operator*=(const ExpPoly& o);
  ExpPoly operator-() const;
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  friend ExpPoly operator*(ExpPoly a, const ExpPoly& b) { return a *= b; }
  friend bool operator==(const ExpPoly& a, const ExpPoly& b) { return a.terms_ == b.terms_; }

  ExpPoly derivative() const;

  /// Text accepted by parse_curve_expression.
  std::string to_string() const;

 private:
  TermMap terms_;
};

ExpPoly power(const ExpPoly& base, int exponent);

/// Coefficients converted once to the working precision for fast evaluation.
class CompiledExpPoly {
 public:
  CompiledExpPoly() = default;
  explicit CompiledExpPoly(const ExpPoly& e);

  ComplexValue operator()(const ComplexValue& z) const;
  bool empty() const { return terms_.empty(); }

 private:
  struct Term {
    std::vector<ComplexValue> p;
    std::vector<ComplexValue> q;  // empty for exponent 0
  };
  std::vector<Term> terms_;
};

/// Grammar: expr := ['-'] term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
/// factor := atom ['^' nat]; atom := number ['i'] | 'i' | 'z' | '(' expr ')' | 'exp' '(' expr ')'.
/// Numbers are integers or decimals; division only by nonzero constants;
/// exp takes a polynomial argument.
ExpPoly parse_curve_expression(std::string_view text);

}  // namespace smtkit
