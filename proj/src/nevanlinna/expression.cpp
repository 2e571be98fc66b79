#include "smtkit/nevanlinna/expression.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace smtkit {

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  Rational r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  const Rational n = o.norm();
  if (n == 0) throw PreconditionError("division by zero in Q(i)");
  *this *= o.conj();
  re /= n;
  im /= n;
  return *this;
}

ComplexValue GaussRational::to_complex() const { return {Real(re), Real(im)}; }

std::string GaussRational::to_string() const {
  if (im == 0) return smtkit::to_string(re);
  if (re == 0) {
    if (im == 1) return "i";
    if (im == -1) return "-i";
    return smtkit::to_string(im) + "*i";
  }
  return "(" + smtkit::to_string(re) + (im < 0 ? " - " : " + ") + smtkit::to_string(im < 0 ? Rational(-im) : im) +
         "*i)";
}

UPoly::UPoly(GaussRational constant) {
  if (!constant.is_zero()) c_.push_back(std::move(constant));
}

UPoly::UPoly(std::vector<GaussRational> coefficients) : c_(std::move(coefficients)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const UPoly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<GaussRational> out(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(out);
  trim();
  return *this;
}

UPoly UPoly::operator-() const {
  UPoly out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

bool operator<(const UPoly& a, const UPoly& b) {
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    if (a.c_[i].re != b.c_[i].re) return a.c_[i].re < b.c_[i].re;
    if (a.c_[i].im != b.c_[i].im) return a.c_[i].im < b.c_[i].im;
  }
  return false;
}

UPoly UPoly::derivative() const {
  std::vector<GaussRational> out;
  for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * GaussRational(static_cast<long>(i)));
  return UPoly(std::move(out));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& divisor) const {
  if (divisor.is_zero()) throw PreconditionError("polynomial division by zero");
  UPoly rem = *this;
  std::vector<GaussRational> quot(std::max(0, degree() - divisor.degree() + 1));
  const GaussRational lead = divisor.leading();
  while (!rem.is_zero() && rem.degree() >= divisor.degree()) {
    const int shift = rem.degree() - divisor.degree();
    const GaussRational f = rem.leading() / lead;
    quot[shift] = f;
    for (int i = 0; i <= divisor.degree(); ++i) rem.c_[i + shift] -= f * divisor.c_[i];
    rem.c_.pop_back();
    rem.trim();
  }
  return {UPoly(std::move(quot)), rem};
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  UPoly out = *this;
  const GaussRational lead = leading();
  for (auto& c : out.c_) c /= lead;
  return out;
}

int UPoly::order_at_zero() const {
  int k = 0;
  while (k < static_cast<int>(c_.size()) && c_[k].is_zero()) ++k;
  return is_zero() ? 0 : k;
}

std::string UPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    const bool unit = c_[i] == GaussRational(1);
    if (i == 0 || !unit) {
      const std::string text = c_[i].to_string();
      out << (text.front() == '-' ? "(" + text + ")" : text);
    }
    if (i > 0) {
      if (!unit) out << "*";
      out << "z";
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::vector<UPoly> square_free_decomposition(const UPoly& g) {
  if (g.is_zero()) throw PreconditionError("square-free decomposition of zero");
  std::vector<UPoly> factors;
  if (g.degree() == 0) return factors;
  const UPoly f = g.monic();
  const UPoly df = f.derivative();
  UPoly a = gcd(f, df);
  UPoly b = f.divmod(a).first;
  UPoly c = df.divmod(a).first;
  UPoly d = c - b.derivative();
  while (b.degree() > 0) {
    UPoly next = gcd(b, d);
    factors.push_back(next);
    b = b.divmod(next).first;
    c = d.divmod(next).first;
    d = c - b.derivative();
  }
  while (!factors.empty() && factors.back().degree() == 0) factors.pop_back();
  return factors;
}

ExpPoly::ExpPoly(UPoly p) {
  if (!p.is_zero()) terms_.emplace(UPoly(), std::move(p));
}

ExpPoly ExpPoly::exp_of(const UPoly& q) {
  ExpPoly out;
  out.terms_.emplace(q, UPoly(GaussRational(1)));
  return out;
}

bool ExpPoly::is_polynomial() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
}

UPoly ExpPoly::as_polynomial() const {
  if (!is_polynomial()) throw PreconditionError("expression is not a polynomial");
  return terms_.empty() ? UPoly() : terms_.begin()->second;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
  for (const auto& [q, p] : o.terms_) {
    auto it = terms_.find(q);
    if (it == terms_.end()) {
      terms_.emplace(q, p);
    } else {
      it->second += p;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o) { return *this += -o; }

ExpPoly& ExpPoly::operator*=(const ExpPoly& o) {
  ExpPoly out;
  for (const auto& [qa, pa] : terms_)
    for (const auto& [qb, pb] : o.terms_) {
      ExpPoly t;
      t.terms_.emplace(qa + qb, pa * pb);
      out += t;
    }
  *this = std::move(out);
  return *this;
}

ExpPoly ExpPoly::operator-() const {
  ExpPoly out = *this;
  for (auto& [q, p] : out.terms_) p = -p;
  return out;
}

ExpPoly ExpPoly::derivative() const {
  ExpPoly out;
  for (const auto& [q, p] : terms_) {
    ExpPoly t;
    UPoly dp = p.derivative() + p * q.derivative();
    if (!dp.is_zero()) t.terms_.emplace(q, dp);
    out += t;
  }
  return out;
}

std::string ExpPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [q, p] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + p.to_string() + ")";
    if (!q.is_zero()) out += "*exp(" + q.to_string() + ")";
  }
  return out;
}

ExpPoly power(const ExpPoly& base, int exponent) {
  if (exponent < 0) throw PreconditionError("negative exponent");
  ExpPoly out(UPoly(GaussRational(1)));
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

CompiledExpPoly::CompiledExpPoly(const ExpPoly& e) {
  for (const auto& [q, p] : e.terms()) {
    Term t;
    for (const auto& c : p.coefficients()) t.p.push_back(c.to_complex());
    for (const auto& c : q.coefficients()) t.q.push_back(c.to_complex());
    terms_.push_back(std::move(t));
  }
}

namespace {

ComplexValue horner(const std::vector<ComplexValue>& c, const ComplexValue& z) {
  ComplexValue acc;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

}  // namespace

ComplexValue CompiledExpPoly::operator()(const ComplexValue& z) const {
  ComplexValue sum;
  for (const auto& t : terms_) {
    ComplexValue v = horner(t.p, z);
    if (!t.q.empty()) v *= exp(horner(t.q, z));
    sum += v;
  }
  return sum;
}

namespace {

class CurveParser {
 public:
  explicit CurveParser(std::string_view text) : text_(text) {}

  ExpPoly parse() {
    skip();
    if (at_end()) fail("empty expression");
    ExpPoly e = expr();
    if (!at_end()) fail("unexpected character");
    return e;
  }

 private:
  ExpPoly expr() {
    ExpPoly acc;
    if (peek() == '-') {
      advance();
      acc = -term();
    } else {
      if (peek() == '+') advance();
      acc = term();
    }
    while (peek() == '+' || peek() == '-') {
      const char op = peek();
      advance();
      if (op == '+')
        acc += term();
      else
        acc -= term();
    }
    return acc;
  }

  ExpPoly term() {
    ExpPoly acc = factor();
    while (peek() == '*' || peek() == '/') {
      const char op = peek();
      const std::size_t at = pos_;
      advance();
      ExpPoly rhs = factor();
      if (op == '*') {
        acc *= rhs;
      } else {
        if (!rhs.is_polynomial() || rhs.as_polynomial().degree() != 0)
          throw InputError("division only by nonzero constants (position " + std::to_string(at) + ")", at);
        const GaussRational inv = GaussRational(1) / rhs.as_polynomial().leading();
        acc *= ExpPoly(inv);
      }
    }
    return acc;
  }

  ExpPoly factor() {
    ExpPoly base = atom();
    if (peek() == '^') {
      advance();
      const long e = natural();
      if (e > 64) fail("exponent too large");
      base = power(base, static_cast<int>(e));
    }
    return base;
  }

  ExpPoly atom() {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      Rational value = number();
      if (peek_raw() == 'i') {
        advance();
        return ExpPoly(GaussRational(0, value));
      }
      skip();
      return ExpPoly(GaussRational(value));
    }
    if (c == '(') {
      advance();
      ExpPoly e = expr();
      expect(')');
      return e;
    }
    if (text_.substr(pos_, 3) == "exp") {
      pos_ += 3;
      skip();
      const std::size_t at = pos_;
      expect('(');
      ExpPoly arg = expr();
      expect(')');
      if (!arg.is_polynomial())
        throw InputError("exp argument must be a polynomial (position " + std::to_string(at) + ")", at);
      return ExpPoly::exp_of(arg.as_polynomial());
    }
    if (c == 'z') {
      advance();
      return ExpPoly(UPoly::z());
    }
    if (c == 'i') {
      advance();
      return ExpPoly(GaussRational(0, 1));
    }
    fail("expected a number, z, i, exp or '('");
  }

  Rational number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    std::string literal(text_.substr(start, pos_ - start));
    try {
      return parse_rational(literal);
    } catch (const InputError&) {
      throw InputError("syntax error at position " + std::to_string(start) + ": bad number", start);
    }
  }

  long natural() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent");
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1000) fail("exponent too large");
      ++pos_;
    }
    skip();
    return value;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }
  char peek_raw() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char peek() const { return peek_raw(); }
  bool at_end() const { return pos_ >= text_.size(); }
  void advance() {
    ++pos_;
    skip();
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("syntax error at position " + std::to_string(pos_) + ": " + what, pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ExpPoly parse_curve_expression(std::string_view text) { return CurveParser(text).parse(); }

}  // namespace smtkit
