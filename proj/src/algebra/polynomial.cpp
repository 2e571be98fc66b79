#include "smtkit/algebra/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace smtkit {

Monomial::Monomial(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw PreconditionError("negative exponent in monomial");
    degree_ += e;
  }
}

Monomial Monomial::operator*(const Monomial& other) const {
  if (other.n_vars() != n_vars()) throw PreconditionError("monomial variable count mismatch");
  std::vector<int> e(exponents_);
  for (int i = 0; i < n_vars(); ++i) e[i] += other.exponents_[i];
  return Monomial(std::move(e));
}

std::string Monomial::to_string() const {
  std::string out;
  for (int i = 0; i < n_vars(); ++i) {
    if (exponents_[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(i);
    if (exponents_[i] > 1) out += '^' + std::to_string(exponents_[i]);
  }
  return out.empty() ? "1" : out;
}

bool monomial_before(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  auto ea = a.exponents();
  auto eb = b.exponents();
  return std::lexicographical_compare(eb.begin(), eb.end(), ea.begin(), ea.end());
}

namespace {

void enumerate(int var, int remaining, std::vector<int>& current, std::vector<Monomial>& out) {
  const int n = static_cast<int>(current.size());
  if (var == n - 1) {
    current[var] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[var] = e;
    enumerate(var + 1, remaining - e, current, out);
  }
  current[var] = 0;
}

}  // namespace

std::vector<Monomial> monomial_basis(int n_vars, int m) {
  if (n_vars < 1) throw PreconditionError("monomial_basis needs at least one variable");
  if (m < 0) throw PreconditionError("monomial_basis needs a non-negative degree");
  std::vector<Monomial> out;
  out.reserve(binomial_long(m + n_vars - 1, n_vars - 1));
  std::vector<int> current(n_vars, 0);
  enumerate(0, m, current, out);
  return out;
}

MonomialIndex::MonomialIndex(int n_vars, int m)
    : n_vars_(n_vars), degree_(m), basis_(monomial_basis(n_vars, m)) {
  for (int i = 0; i < size(); ++i) {
    auto e = basis_[i].exponents();
    lookup_.emplace(std::vector<int>(e.begin(), e.end()), i);
  }
}

int MonomialIndex::index_of(const Monomial& mono) const {
  auto e = mono.exponents();
  auto it = lookup_.find(std::vector<int>(e.begin(), e.end()));
  if (it == lookup_.end()) throw PreconditionError("monomial outside the indexed degree");
  return it->second;
}

HomogeneousPolynomial::HomogeneousPolynomial(int n_vars, int degree) : n_vars_(n_vars), degree_(degree) {
  if (n_vars < 1) throw PreconditionError("polynomial needs at least one variable");
  if (degree < 0) throw PreconditionError("polynomial degree must be non-negative");
}

HomogeneousPolynomial::HomogeneousPolynomial(int n_vars, int degree, TermMap terms)
    : HomogeneousPolynomial(n_vars, degree) {
  for (auto& [mono, coeff] : terms) add_term(mono, coeff);
}

HomogeneousPolynomial HomogeneousPolynomial::constant(int n_vars, const Rational& value) {
  HomogeneousPolynomial p(n_vars, 0);
  p.add_term(Monomial::unit(n_vars), value);
  return p;
}

HomogeneousPolynomial HomogeneousPolynomial::variable(int n_vars, int index) {
  if (index < 0 || index >= n_vars) throw PreconditionError("variable index out of range");
  std::vector<int> e(n_vars, 0);
  e[index] = 1;
  return monomial(Monomial(std::move(e)));
}

HomogeneousPolynomial HomogeneousPolynomial::monomial(const Monomial& mono, const Rational& coeff) {
  HomogeneousPolynomial p(mono.n_vars(), mono.degree());
  p.add_term(mono, coeff);
  return p;
}

Rational HomogeneousPolynomial::coefficient(const Monomial& mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? Rational(0) : it->second;
}

void HomogeneousPolynomial::add_term(const Monomial& mono, const Rational& coeff) {
  if (mono.n_vars() != n_vars_) throw PreconditionError("monomial variable count mismatch");
  if (mono.degree() != degree_) throw PreconditionError("term degree differs from polynomial degree");
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(mono, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

HomogeneousPolynomial& HomogeneousPolynomial::operator+=(const HomogeneousPolynomial& other) {
  if (other.n_vars_ != n_vars_) throw PreconditionError("mismatched n_vars in polynomial sum");
  if (other.is_zero()) return *this;
  if (is_zero()) {
    degree_ = other.degree_;
  } else if (other.degree_ != degree_) {
    throw PreconditionError("sum of homogeneous polynomials of different degrees");
  }
  for (const auto& [mono, coeff] : other.terms_) add_term(mono, coeff);
  return *this;
}

HomogeneousPolynomial& HomogeneousPolynomial::operator-=(const HomogeneousPolynomial& other) {
  return *this += -other;
}

HomogeneousPolynomial& HomogeneousPolynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, coeff] : terms_) coeff *= scalar;
  return *this;
}

HomogeneousPolynomial HomogeneousPolynomial::operator-() const {
  HomogeneousPolynomial out(*this);
  for (auto& [mono, coeff] : out.terms_) coeff = -coeff;
  return out;
}

HomogeneousPolynomial HomogeneousPolynomial::shifted(const Monomial& mono) const {
  HomogeneousPolynomial out(n_vars_, degree_ + mono.degree());
  for (const auto& [m, coeff] : terms_) out.terms_.emplace(m * mono, coeff);
  return out;
}

std::string HomogeneousPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, coeff] : terms_) {
    Rational mag = coeff < 0 ? Rational(-coeff) : coeff;
    if (first) {
      if (coeff < 0) os << '-';
    } else {
      os << (coeff < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit_mono = mono.degree() == 0;
    if (mag != 1 || unit_mono) {
      os << mag.str();
      if (!unit_mono) os << '*';
    }
    if (!unit_mono) os << mono.to_string();
  }
  return os.str();
}

HomogeneousPolynomial poly_product(const HomogeneousPolynomial& p, const HomogeneousPolynomial& q) {
  if (p.n_vars() != q.n_vars()) throw PreconditionError("mismatched n_vars in polynomial product");
  HomogeneousPolynomial::TermMap terms;
  for (const auto& [ma, ca] : p.terms())
    for (const auto& [mb, cb] : q.terms()) {
      Rational c = ca * cb;
      auto [it, inserted] = terms.try_emplace(ma * mb, c);
      if (!inserted) it->second += c;
    }
  std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
  return HomogeneousPolynomial(p.n_vars(), p.degree() + q.degree(), std::move(terms));
}

HomogeneousPolynomial poly_power(const HomogeneousPolynomial& p, int exponent) {
  if (exponent < 0) throw PreconditionError("negative polynomial power");
  HomogeneousPolynomial result = HomogeneousPolynomial::constant(p.n_vars(), 1);
  HomogeneousPolynomial base = p;
  while (exponent > 0) {
    if (exponent & 1) result = poly_product(result, base);
    exponent >>= 1;
    if (exponent > 0) base = poly_product(base, base);
  }
  return result;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, int n_vars) : text_(text), n_vars_(n_vars) {}

  HomogeneousPolynomial parse(int zero_degree) {
    skip_ws();
    if (at_end()) fail("empty polynomial");
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
    }
    parse_term(sign);
    while (true) {
      skip_ws();
      if (at_end()) break;
      char op = peek();
      if (op != '+' && op != '-') fail(std::string("unexpected character '") + op + "'");
      ++pos_;
      parse_term(op == '-' ? -1 : 1);
    }
    std::erase_if(terms_, [](const auto& t) { return t.second == 0; });
    int degree = terms_.empty() ? zero_degree : terms_.front().first.degree();
    HomogeneousPolynomial out(n_vars_, degree);
    for (auto& [mono, coeff] : terms_) {
      if (mono.degree() != degree)
        throw InputError("non-homogeneous polynomial: degrees " + std::to_string(degree) + " and " +
                             std::to_string(mono.degree()) + " mixed",
                         0);
      out += HomogeneousPolynomial::monomial(mono, coeff);
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("syntax error at position " + std::to_string(pos_) + ": " + msg,
                     static_cast<std::ptrdiff_t>(pos_));
  }

  Integer parse_nat() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  void parse_factor(std::vector<int>& exps) {
    skip_ws();
    if (at_end() || peek() != 'x') fail("expected a variable x<index>");
    std::size_t var_pos = pos_;
    ++pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a variable index");
    Integer index = parse_nat();
    if (index >= n_vars_)
      throw InputError("unknown variable x" + index.str() + " at position " + std::to_string(var_pos) +
                           " (polynomial has " + std::to_string(n_vars_) + " variables)",
                       static_cast<std::ptrdiff_t>(var_pos));
    int power = 1;
    skip_ws();
    if (!at_end() && peek() == '^') {
      ++pos_;
      Integer e = parse_nat();
      if (e > 1000) fail("exponent too large");
      power = e.convert_to<int>();
    }
    exps[index.convert_to<int>()] += power;
  }

  void parse_term(int sign) {
    skip_ws();
    if (at_end()) fail("expected a term");
    Rational coeff = sign;
    std::vector<int> exps(n_vars_, 0);
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      Integer num = parse_nat();
      Integer den = 1;
      skip_ws();
      if (!at_end() && peek() == '/') {
        ++pos_;
        den = parse_nat();
        if (den == 0) fail("zero denominator");
      }
      coeff *= Rational(num, den);
    } else {
      parse_factor(exps);
    }
    while (true) {
      skip_ws();
      if (at_end() || peek() != '*') break;
      ++pos_;
      parse_factor(exps);
    }
    terms_.emplace_back(Monomial(std::move(exps)), coeff);
  }

  std::string_view text_;
  int n_vars_;
  std::size_t pos_ = 0;
  std::vector<std::pair<Monomial, Rational>> terms_;
};

}  // namespace

HomogeneousPolynomial parse_polynomial(std::string_view text, int n_vars, int zero_degree) {
  if (n_vars < 1) throw PreconditionError("parse_polynomial needs at least one variable");
  return PolyParser(text, n_vars).parse(zero_degree);
}

int eval_guard_bits(std::size_t term_count) {
  int bits = 0;
  while ((std::size_t{1} << bits) < std::max<std::size_t>(term_count, 1)) ++bits;
  return bits + 4;
}

ComplexValue eval_poly(const HomogeneousPolynomial& p, std::span<const ComplexValue> point, unsigned precision) {
  if (static_cast<int>(point.size()) != p.n_vars())
    throw PreconditionError("evaluation point has wrong length");
  ComplexValue working;
  {
    PrecisionScope scope(precision + eval_guard_bits(p.term_count()));
    std::vector<ComplexValue> z;
    z.reserve(point.size());
    for (const auto& v : point) z.push_back({Real(v.re), Real(v.im)});
    working = evaluate<Real>(p, z);
  }
  const unsigned digits = bits_to_digits10(precision);
  return {Real(working.re, digits), Real(working.im, digits)};
}

}  // namespace smtkit
