#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "smtkit/algebra/linalg.hpp"
#include "smtkit/algebra/polynomial.hpp"

using namespace smtkit;

namespace {

HomogeneousPolynomial random_form(std::mt19937& rng, int n_vars, int degree, int max_terms) {
  auto basis = monomial_basis(n_vars, degree);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(basis.size()) - 1);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  HomogeneousPolynomial p(n_vars, degree);
  std::uniform_int_distribution<int> terms(1, max_terms);
  for (int t = terms(rng); t > 0; --t) p += HomogeneousPolynomial::monomial(basis[pick(rng)], Rational(num(rng), den(rng)));
  return p;
}

}  // namespace

TEST_CASE("parse_polynomial reads the documented grammar") {
  auto p = parse_polynomial("x0^2 + 2*x0*x1", 3);
  CHECK(p.degree() == 2);
  CHECK(p.term_count() == 2);
  CHECK(p.coefficient(Monomial({1, 1, 0})) == 2);

  auto q = parse_polynomial("3/2*x0*x1*x2", 3);
  CHECK(q.degree() == 3);
  CHECK(q.term_count() == 1);
  CHECK(q.coefficient(Monomial({1, 1, 1})) == Rational(3, 2));

  auto r = parse_polynomial("  - x0 *x1 +x1^2 ", 2);
  CHECK(r.coefficient(Monomial({1, 1})) == -1);
}

TEST_CASE("parse_polynomial errors") {
  CHECK_THROWS_AS(parse_polynomial("x0 + x1^2", 2), InputError);
  CHECK_THROWS_AS(parse_polynomial("x0 + x3", 3), InputError);
  try {
    parse_polynomial("x0 + * x1", 2);
    FAIL("expected a syntax error");
  } catch (const InputError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(parse_polynomial("x0 x1", 2), InputError);
  CHECK_THROWS_AS(parse_polynomial("", 2), InputError);
  CHECK_THROWS_AS(parse_polynomial("1/0*x0", 2), InputError);
}

TEST_CASE("parse_polynomial keeps the degree of a cancelled polynomial") {
  auto z = parse_polynomial("x0*x1 - x1*x0", 2);
  CHECK(z.is_zero());
  CHECK(z.degree() == 2);
  CHECK(parse_polynomial("0", 3, 4).degree() == 4);
}

TEST_CASE("poly_product") {
  auto a = parse_polynomial("x0 + x1", 2);
  auto b = parse_polynomial("x0 - x1", 2);
  CHECK(poly_product(a, b) == parse_polynomial("x0^2 - x1^2", 2));
  CHECK(poly_product(a, HomogeneousPolynomial::constant(2, 1)) == a);
  auto s = parse_polynomial("x0 + x1 + x2", 3);
  CHECK(poly_product(s, s).term_count() == 6);
  CHECK_THROWS_AS(poly_product(a, s), PreconditionError);
}

TEST_CASE("homogeneity closure on random products") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    int da = trial % 4, db = (trial / 4) % 3;
    auto p = random_form(rng, 3, da, 5);
    auto q = random_form(rng, 3, db, 5);
    auto pq = p * q;
    CHECK(pq.degree() == da + db);
    for (const auto& [mono, c] : pq.terms()) CHECK(mono.degree() == da + db);
  }
}

TEST_CASE("eval_poly examples") {
  PrecisionScope scope(128);
  auto p = parse_polynomial("x0^2 + x1^2", 2);
  std::vector<ComplexValue> pt1{{Real(1), Real(0)}, {Real(0), Real(1)}};
  auto v1 = eval_poly(p, pt1);
  CHECK(static_cast<double>(abs(v1)) == doctest::Approx(0.0));
  std::vector<ComplexValue> pt2{{Real(3), Real(0)}, {Real(4), Real(0)}};
  CHECK(static_cast<double>(eval_poly(p, pt2).re) == 25.0);
  auto q = parse_polynomial("x0*x1", 2);
  std::vector<ComplexValue> pt3{{Real(2), Real(0)}, {Real(1) / 2, Real(0)}};
  CHECK(static_cast<double>(eval_poly(q, pt3).re) == 1.0);
  CHECK(eval_guard_bits(1) == 4);
  CHECK(eval_guard_bits(5) == 7);
}

TEST_CASE("eval_poly respects the requested precision") {
  auto p = parse_polynomial("x0^3 - 3*x0*x1^2", 2);
  std::vector<ComplexValue> pt;
  {
    PrecisionScope scope(400);
    pt = {{Real(1) / 3, Real(2) / 7}, {Real(5) / 11, Real(-1) / 13}};
  }
  ComplexValue hi, lo;
  {
    PrecisionScope scope(400);
    hi = eval_poly(p, pt, 400);
  }
  lo = eval_poly(p, pt, 128);
  PrecisionScope scope(400);
  Real err = abs(ComplexValue{hi.re - lo.re, hi.im - lo.im});
  Real bound = pow(Real(2), -128 + eval_guard_bits(p.term_count()));
  CHECK(err <= bound);
}

TEST_CASE("evaluation homogeneity") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  PrecisionScope scope(128);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_form(rng, 3, 1 + trial % 4, 6);
    std::vector<ComplexValue> z, lz;
    ComplexValue lambda{Real(u(rng)), Real(u(rng))};
    for (int i = 0; i < 3; ++i) {
      z.push_back({Real(u(rng)), Real(u(rng))});
      lz.push_back(lambda * z.back());
    }
    ComplexValue lhs = eval_poly(p, lz);
    ComplexValue rhs = eval_poly(p, z);
    for (int i = 0; i < p.degree(); ++i) rhs *= lambda;
    Real scale = abs(rhs) + 1;
    CHECK(static_cast<double>(abs(lhs - rhs) / scale) < 1e-30);
  }
}

TEST_CASE("rational_rank examples") {
  RationalMatrix id = RationalMatrix::Identity(3, 3);
  auto r = rational_rank(id);
  CHECK(r.rank == 3);
  CHECK(r.pivot_columns == std::vector<int>{0, 1, 2});
  CHECK(rational_rank(RationalMatrix::Zero(2, 3)).rank == 0);
  CHECK(rational_rank(RationalMatrix::Zero(2, 3)).pivot_columns.empty());
  RationalMatrix m(2, 2);
  m << 1, 2, 2, 4;
  auto p = rational_rank(m);
  CHECK(p.rank == 1);
  CHECK(p.pivot_columns == std::vector<int>{0});
}

TEST_CASE("rank invariant under row permutation and scaling, and agrees with the oracle") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> val(-3, 3);
  std::uniform_int_distribution<int> den(1, 4);
  for (int trial = 0; trial < 40; ++trial) {
    int rows = 2 + trial % 5, cols = 2 + (trial / 5) % 5;
    RationalMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = (trial % 3 == 0 && j % 2) ? Rational(0) : Rational(val(rng), den(rng));
    if (rows > 2) m.row(rows - 1) = m.row(0) * Rational(2, 3) + m.row(1);
    auto base = rational_rank(m);

    std::vector<std::vector<Rational>> dense(rows, std::vector<Rational>(cols));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) dense[i][j] = m(i, j);
    CHECK(base.rank == oracle::rank(dense));

    RationalMatrix shuffled = m;
    std::vector<int> perm(rows);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < rows; ++i) shuffled.row(i) = m.row(perm[i]) * Rational(i + 1, 7);
    auto other = rational_rank(shuffled);
    CHECK(other.rank == base.rank);
    CHECK(other.pivot_columns == base.pivot_columns);

    RowSpace space(cols);
    for (int i = 0; i < rows; ++i) {
      SparseRow row;
      for (int j = 0; j < cols; ++j) {
        Rational v = m(i, j) * 360;  // all denominators divide 360
        if (v != 0) row.emplace_back(j, numerator(v));
      }
      space.insert(row);
    }
    CHECK(space.rank() == base.rank);
    CHECK(space.pivot_columns() == base.pivot_columns);
  }
}

TEST_CASE("monomial_basis order and size") {
  CHECK(monomial_basis(3, 2).size() == 6);
  CHECK(monomial_basis(2, 3).size() == 4);
  for (int m = 0; m < 5; ++m) CHECK(monomial_basis(3, m).front() == Monomial({m, 0, 0}));
  auto b = monomial_basis(3, 2);
  std::vector<std::string> names;
  for (const auto& mono : b) names.push_back(mono.to_string());
  CHECK(names == std::vector<std::string>{"x0^2", "x0*x1", "x0*x2", "x1^2", "x1*x2", "x2^2"});
  for (std::size_t i = 0; i + 1 < b.size(); ++i) CHECK(monomial_before(b[i], b[i + 1]));
  CHECK(monomial_basis(4, 5).size() == static_cast<std::size_t>(binomial_long(8, 3)));
}

TEST_CASE("parse(print(P)) round trip") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    int n_vars = 1 + trial % 4;
    auto p = random_form(rng, n_vars, trial % 5, 6);
    if (p.is_zero()) continue;
    CHECK(parse_polynomial(p.to_string(), n_vars) == p);
  }
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("0.5") == Rational(1, 2));
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("12") == 12);
  CHECK(parse_rational(".25") == Rational(1, 4));
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
}
