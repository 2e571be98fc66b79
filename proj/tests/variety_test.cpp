#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "smtkit/variety/variety.hpp"

using namespace smtkit;

namespace {

std::vector<HomogeneousPolynomial> polys(std::initializer_list<const char*> texts, int n_vars) {
  std::vector<HomogeneousPolynomial> out;
  for (const char* t : texts) out.push_back(parse_polynomial(t, n_vars));
  return out;
}

VarietyDescriptor conic() { return VarietyDescriptor(2, polys({"x0*x2 - x1^2"}, 3)); }

}  // namespace

TEST_CASE("ideal_graded_dim examples") {
  auto g = polys({"x0*x2 - x1^2"}, 3);
  CHECK(ideal_graded_dim(g, 3, 2) == 1);
  // Oracle: dense elimination of the three multiples x_i * g.
  CHECK(ideal_graded_dim(g, 3, 3) == 10 - oracle::hilbert(g, 3, 3));
  CHECK(ideal_graded_dim(g, 3, 3) == 3);
  CHECK(ideal_graded_dim({}, 3, 4) == 0);
}

TEST_CASE("hilbert_function examples") {
  CHECK(hilbert_function(VarietyDescriptor::projective_space(2), 3) == 10);
  CHECK(hilbert_function(conic(), 3) == 7);
  CHECK(hilbert_function(VarietyDescriptor(2, polys({"x0", "x1", "x2"}, 3)), 2) == 0);
}

TEST_CASE("hilbert matches dense elimination on random ideals") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int trial = 0; trial < 12; ++trial) {
    int n_vars = 3 + trial % 2;
    std::vector<HomogeneousPolynomial> gens;
    for (int g = 0; g < 1 + trial % 3; ++g) {
      int d = 1 + (trial + g) % 2;
      HomogeneousPolynomial p(n_vars, d);
      for (const auto& mono : monomial_basis(n_vars, d))
        if (rng() % 3 == 0) p += HomogeneousPolynomial::monomial(mono, c(rng));
      if (!p.is_zero()) gens.push_back(p);
    }
    VarietyDescriptor v(n_vars - 1, gens);
    for (int m = 0; m <= 4; ++m) CHECK(v.hilbert(m) == oracle::hilbert(gens, n_vars, m));
  }
}

TEST_CASE("Hilbert cache properties") {
  VarietyDescriptor v(2, polys({"x0^2", "x1^2", "x2^2"}, 3));
  for (int m = 0; m <= 7; ++m) {
    long h = v.hilbert(m);
    CHECK(h <= binomial_long(m + 2, 2));
    CHECK(h == oracle::standard_monomials({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}, 3, m));
  }
  auto cached = v.cached_values();
  bool vanished = false;
  for (const auto& [m, h] : cached) {
    if (vanished) CHECK(h == 0);
    vanished = vanished || h == 0;
  }
  CHECK(vanished);
  // Generator degrees above m leave the full space.
  VarietyDescriptor cubic(2, polys({"x0^3"}, 3));
  CHECK(cubic.hilbert(2) == 6);
  CHECK(cubic.hilbert(3) == 9);
}

TEST_CASE("certify_empty examples") {
  {
    std::vector<std::vector<HomogeneousPolynomial>> sets{polys({"x0", "x1", "x2"}, 3)};
    auto v = certify_empty(2, sets);
    CHECK(v.kind == EmptinessKind::CertifiedEmpty);
    CHECK(v.certificate_degree == 1);
  }
  {
    std::vector<std::vector<HomogeneousPolynomial>> sets{polys({"x0", "x1"}, 3)};
    auto v = certify_empty(2, sets);
    CHECK(v.kind == EmptinessKind::NonemptyLikely);
  }
  {
    std::vector<std::vector<HomogeneousPolynomial>> sets{polys({"x0^2", "x1^2", "x2^2"}, 3)};
    auto v = certify_empty(2, sets);
    CHECK(v.kind == EmptinessKind::CertifiedEmpty);
    CHECK(v.certificate_degree == 4);
    CHECK(oracle::standard_monomials({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}, 3, 3) == 1);
    CHECK(oracle::standard_monomials({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}, 3, 4) == 0);
  }
  {
    // Split across several generator lists.
    std::vector<std::vector<HomogeneousPolynomial>> sets{polys({"x0*x2 - x1^2"}, 3), polys({"x0", "x2"}, 3)};
    CHECK(certify_empty(2, sets).empty());
  }
}

TEST_CASE("estimate_dimension and variety_degree") {
  auto p2 = VarietyDescriptor::projective_space(2);
  CHECK(estimate_dimension(p2).value() == 2);
  CHECK(variety_degree(p2) == 1);
  CHECK(estimate_dimension(VarietyDescriptor(2, polys({"x0"}, 3))).value() == 1);
  auto c = conic();
  CHECK(estimate_dimension(c).value() == 1);
  CHECK(variety_degree(c) == 2);
  for (int m = 1; m < 8; ++m) CHECK(c.hilbert(m) == 2 * m + 1);
  CHECK(variety_degree(VarietyDescriptor(2, polys({"x0*x1"}, 3))) == 2);
  for (int n = 1; n <= 4; ++n) CHECK(variety_degree(VarietyDescriptor::projective_space(n)) == 1);
  CHECK(estimate_dimension(VarietyDescriptor(2, polys({"x0", "x1", "x2"}, 3))).kind ==
        DimensionEstimate::Kind::Empty);
  CHECK_THROWS_AS(variety_degree(VarietyDescriptor(2, polys({"x0", "x1", "x2"}, 3))), PreconditionError);
  CHECK_THROWS_AS(estimate_dimension(p2, 3), PreconditionError);
  // Twisted cubic in P^3: dimension 1, degree 3.
  VarietyDescriptor cubic(3, polys({"x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"}, 4));
  CHECK(estimate_dimension(cubic).value() == 1);
  CHECK(variety_degree(cubic) == 3);
}

TEST_CASE("check_position examples") {
  auto p2 = VarietyDescriptor::projective_space(2);
  auto four = polys({"x0", "x1", "x2", "x0 + x1 + x2"}, 3);
  auto r = check_position(p2, four, 2);
  CHECK(r.verdict == PositionReport::Verdict::Holds);
  CHECK(r.certificates.size() == 4);
  for (const auto& cert : r.certificates) CHECK(cert.verdict.empty());
  CHECK(check_position(p2, four, 3).verdict == PositionReport::Verdict::Holds);

  auto three = polys({"x0", "x1", "x0 + x1"}, 3);
  auto f = check_position(p2, three, 2);
  CHECK(f.verdict == PositionReport::Verdict::Fails);
  REQUIRE(f.witness.has_value());
  CHECK(*f.witness == std::vector<int>{0, 1, 2});

  // The first failing subset in lexicographic order is reported.
  auto five = polys({"x0", "x1", "x2", "x0 + x1", "x1 + x2"}, 3);
  auto g = check_position(p2, five, 2);
  CHECK(g.verdict == PositionReport::Verdict::Fails);
  CHECK(*g.witness == std::vector<int>{0, 1, 3});
  CHECK_THROWS_AS(check_position(p2, three, 3), PreconditionError);
}

TEST_CASE("check_position is monotone in N") {
  auto v = conic();
  auto lines = polys({"x0 + 2*x1 + 3*x2", "x0 - x1 + 5*x2", "2*x0 + x1 - x2", "x0 + x1 + x2", "x0"}, 3);
  for (int N = 1; N <= 4; ++N) CHECK(check_position(v, lines, N).verdict == PositionReport::Verdict::Holds);
}

TEST_CASE("subset enumeration is lexicographic") {
  auto s = subsets_of_size(4, 2);
  CHECK(s == std::vector<std::vector<int>>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(subsets_of_size(3, 0).size() == 1);
}

TEST_CASE("construct_general_position on four lines in P2") {
  auto p2 = VarietyDescriptor::projective_space(2);
  auto four = polys({"x0", "x1", "x2", "x0 + x1 + x2"}, 3);
  auto sys = construct_general_position(p2, four, {});
  CHECK(sys.k == 2);
  CHECK(sys.N == 3);
  CHECK(sys.chain_dims == std::vector<int>{1, 0, kEmptyDimension});
  CHECK(sys.P.front() == four.front());
  // P_2 uses only Q_2..Q_3; P_3 uses Q_2..Q_4.
  CHECK(sys.coefficients(0, 2) == 0);
  CHECK(sys.coefficients(0, 0) != 0);
  // Independent verification of the last step: the three forms are linearly independent.
  RationalMatrix m(3, 3);
  auto basis = monomial_basis(3, 1);
  for (int t = 0; t < 3; ++t)
    for (int j = 0; j < 3; ++j) m(t, j) = sys.P[t].coefficient(basis[j]);
  CHECK(oracle::rank({{m(0, 0), m(0, 1), m(0, 2)}, {m(1, 0), m(1, 1), m(1, 2)}, {m(2, 0), m(2, 1), m(2, 2)}}) == 3);

  auto again = construct_general_position(p2, four, {});
  CHECK(again.coefficients == sys.coefficients);
}

TEST_CASE("construct_general_position general position and errors") {
  auto p2 = VarietyDescriptor::projective_space(2);
  auto three = polys({"x0 + x1", "x1 - x2", "x0 + x2 + x1"}, 3);
  auto sys = construct_general_position(p2, three, {.seed = 4});
  CHECK(sys.N == 2);
  CHECK(sys.chain_dims.back() == kEmptyDimension);
  // N = k: P_t combines Q_2..Q_t only.
  CHECK(sys.coefficients(0, 1) == 0);

  auto bad = polys({"x0", "x1", "x0 + x1"}, 3);
  CHECK_THROWS_AS(construct_general_position(p2, bad, {}), PreconditionError);
  auto mixed = polys({"x0", "x1^2"}, 3);
  CHECK_THROWS_AS(construct_general_position(p2, mixed, {}), PreconditionError);
}

TEST_CASE("construct_general_position on the conic with quadrics") {
  auto v = conic();
  auto q = polys({"x0^2", "x2^2", "x0*x1 + x2^2", "x1^2 - x0*x2 + x1*x2"}, 3);
  auto sys = construct_general_position(v, q, {.seed = 0});
  CHECK(sys.k == 1);
  CHECK(sys.chain_dims == std::vector<int>{0, kEmptyDimension});
}

TEST_CASE("coefficient sampler range and determinism") {
  CoefficientSampler a(42), b(42);
  for (int i = 0; i < 200; ++i) {
    long x = a.next(3);
    CHECK(x == b.next(3));
    CHECK(x != 0);
    CHECK(x >= -3);
    CHECK(x <= 3);
  }
}
