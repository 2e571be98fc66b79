#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "smtkit/filtration/filtration.hpp"

using namespace smtkit;

namespace {

FiltrationParams params(int n, int d, int u, std::initializer_list<const char*> forms) {
  FiltrationParams p{n, d, u, {}};
  for (const char* f : forms) p.P.push_back(parse_polynomial(f, n + 1));
  return p;
}

// dim W_(i) by dense elimination of every spanning product, index by index.
std::vector<long> oracle_dims(const FiltrationParams& p) {
  auto indices = bounded_indices(p.n, p.u / p.d);
  auto basis = monomial_basis(p.n + 1, p.u);
  std::vector<long> dims;
  for (std::size_t s = 0; s < indices.size(); ++s) {
    std::vector<std::vector<Rational>> rows;
    for (std::size_t t = s; t < indices.size(); ++t) {
      HomogeneousPolynomial prod = HomogeneousPolynomial::constant(p.n + 1, 1);
      int sigma = 0;
      for (int j = 0; j < p.n; ++j)
        for (int e = 0; e < indices[t][j]; ++e, ++sigma) prod = prod * p.P[j];
      for (const auto& shift : monomial_basis(p.n + 1, p.u - p.d * sigma))
        rows.push_back(oracle::dense(prod.shifted(shift), basis));
    }
    dims.push_back(oracle::rank(rows));
  }
  return dims;
}

long sum(const std::vector<long>& v) {
  long s = 0;
  for (long x : v) s += x;
  return s;
}

}  // namespace

TEST_CASE("filtration_dims examples") {
  auto p = params(1, 1, 4, {"x0"});
  validate_filtration_params(p);
  auto t = filtration_dims(p);
  CHECK(t.dims == std::vector<long>{5, 4, 3, 2, 1});
  CHECK(t.m == std::vector<long>{1, 1, 1, 1, 1});

  auto q = params(2, 1, 2, {"x0", "x1"});
  auto tq = filtration_dims(q);
  CHECK(tq.indices == std::vector<std::vector<int>>{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}});
  CHECK(sum(tq.m) == 6);
  CHECK(tq.dims == oracle_dims(q));
  CHECK(tq.dims.front() == 6);

  auto r = params(1, 2, 8, {"x0^2"});
  auto tr = filtration_dims(r);
  CHECK(tr.m == std::vector<long>{2, 2, 2, 2, 1});
  CHECK(tr.dims == oracle_dims(r));

  CHECK_THROWS_AS(filtration_dims(params(1, 2, 7, {"x0^2"})), PreconditionError);
}

TEST_CASE("quotient dimension check") {
  CHECK(quotient_dimension_violations(filtration_dims(params(1, 1, 4, {"x0"}))).empty());
  CHECK(quotient_dimension_violations(filtration_dims(params(1, 2, 8, {"x0^2"}))).empty());
  // Exempt indices may take any value: the last index of the first table has m = 1 = d^n anyway,
  // while for d = 2 the exempt tail has m = 2 and m = 1.
  FiltrationTable fake = filtration_dims(params(1, 2, 8, {"x0^2"}));
  fake.m[3] = 7;
  CHECK(quotient_dimension_violations(fake).empty());
  fake.m[2] = 7;
  CHECK(quotient_dimension_violations(fake) == std::vector<std::vector<int>>{{2}});
}

TEST_CASE("compute_b examples") {
  auto b = compute_b(filtration_dims(params(1, 1, 4, {"x0"})));
  CHECK(b.b == std::vector<Rational>{10});
  CHECK(b.bound == 6);
  CHECK(b.margins == std::vector<Rational>{4});

  auto c = compute_b(filtration_dims(params(1, 2, 8, {"x0^2"})));
  CHECK(c.b == std::vector<Rational>{16});
  CHECK(c.bound == 12);

  auto t = filtration_dims(params(1, 3, 3, {"x0^2*x1 + x1^3"}));
  CHECK(t.K() == 2);
  CHECK(compute_b(t).b.front() == t.m[1]);
}

TEST_CASE("count_K") {
  CHECK(count_K(4, 1, 1) == 5);
  CHECK(count_K(6, 2, 2) == 10);
  for (int n = 1; n <= 4; ++n)
    for (int d = 1; d <= 3; ++d) CHECK(count_K(d, d, n) == n + 1);
  CHECK_THROWS_AS(count_K(5, 2, 1), PreconditionError);
}

TEST_CASE("filtration invariants on general-position configurations") {
  std::vector<FiltrationParams> configs{
      params(2, 1, 4, {"x0", "x1"}),
      params(2, 1, 5, {"x0 + x2", "x1 - 2*x2"}),
      params(2, 2, 6, {"x0^2 + x1^2", "x0*x1"}),
      params(2, 2, 6, {"x0^2 - x2^2", "x1^2 - x0*x2"}),
      params(1, 2, 8, {"x0^2 + x0*x1"}),
      params(3, 1, 4, {"x0", "x1", "x2 + x3"}),
  };
  std::mt19937 rng(43);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 3; ++trial) {
    FiltrationParams p{2, 2, 6, {}};
    for (int j = 0; j < 2; ++j) {
      HomogeneousPolynomial f(3, 2);
      for (const auto& mono : monomial_basis(3, 2)) f += HomogeneousPolynomial::monomial(mono, coef(rng));
      p.P.push_back(f);
    }
    configs.push_back(p);
  }
  for (const auto& p : configs) {
    CAPTURE(p.P.front().to_string());
    validate_filtration_params(p);
    auto t = filtration_dims(p);
    CHECK(sum(t.m) == binomial_long(p.u + p.n, p.n));
    CHECK(t.K() == count_K(p.u, p.d, p.n));
    for (std::size_t s = 0; s + 1 < t.dims.size(); ++s) CHECK(t.dims[s] > t.dims[s + 1]);
    CHECK(t.dims.back() == 1);
    CHECK(quotient_dimension_violations(t).empty());
    for (const auto& margin : compute_b(t).margins) CHECK(margin >= 0);
    if (p.u <= 5) CHECK(t.dims == oracle_dims(p));
  }
}

TEST_CASE("swapping the coordinates of a symmetric configuration swaps b") {
  auto t = filtration_dims(params(2, 1, 4, {"x0", "x1"}));
  auto b = compute_b(t);
  CHECK(b.b[0] == b.b[1]);
  auto s = compute_b(filtration_dims(params(2, 2, 6, {"x0^2 + x1^2", "x0*x1"})));
  auto swapped = compute_b(filtration_dims(params(2, 2, 6, {"x0*x1", "x0^2 + x1^2"})));
  CHECK(s.b[0] == swapped.b[1]);
  CHECK(s.b[1] == swapped.b[0]);
}

TEST_CASE("validate_filtration_params rejects bad input") {
  CHECK_THROWS_AS(validate_filtration_params(params(2, 1, 4, {"x0", "2*x0"})), PreconditionError);
  CHECK_THROWS_AS(validate_filtration_params(params(2, 1, 4, {"x0"})), PreconditionError);
  CHECK_THROWS_AS(validate_filtration_params(params(2, 2, 5, {"x0^2", "x1^2"})), PreconditionError);
  CHECK_THROWS_AS(validate_filtration_params(params(2, 2, 4, {"x0^2", "x1"})), PreconditionError);
}
