#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace smtkit {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

/// Bad user input (parse failures, malformed scenario data).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, std::ptrdiff_t position = -1)
      : std::runtime_error(what), position_(position) {}
  std::ptrdiff_t position() const { return position_; }

 private:
  std::ptrdiff_t position_;
};

/// An operation was called outside its documented domain.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A certificate could not be produced within the configured caps.
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical iteration did not reach its stopping criterion.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

/// Sets the default mpfr precision for the lifetime of the scope. The
/// default precision is thread-local state, so a scope must not be shared
/// between threads.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits) : saved_(Real::default_precision()) {
    if (bits < 53) throw PreconditionError("precision must be at least 53 bits");
    Real::default_precision(bits_to_digits10(bits));
  }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

inline Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer result = 1;
  k = std::min(k, n - k);
  for (long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

inline long binomial_long(long n, long k) { return binomial(n, k).convert_to<long>(); }

inline Integer floor_rational(const Rational& q) {
  Integer num = boost::multiprecision::numerator(q);
  Integer den = boost::multiprecision::denominator(q);
  Integer quot = num / den;
  if (num % den != 0 && num < 0) quot -= 1;
  return quot;
}

inline Integer ceil_rational(const Rational& q) { return -floor_rational(-q); }

/// Parses "3", "-3/4" or a decimal such as "0.25" into an exact rational.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);

}  // namespace smtkit
