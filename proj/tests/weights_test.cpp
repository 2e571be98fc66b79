#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "smtkit/weights/weights.hpp"

using namespace smtkit;

namespace {

VarietyDescriptor conic() { return VarietyDescriptor(2, {parse_polynomial("x0*x2 - x1^2", 3)}); }

BracketPolynomial conic_chow_form() { return parse_bracket_polynomial("[1,2][0,1] - [0,2]^2", 2); }

// Coordinate line {x2 = x3 = 0} in P^3.
VarietyDescriptor coordinate_line_p3() {
  return VarietyDescriptor(3, {parse_polynomial("x2", 4), parse_polynomial("x3", 4)});
}

// Top weight of the fully expanded form, with u_{ij} weighted by c_j.
long expanded_chow_weight(const BracketPolynomial& F, const WeightVector& c) {
  auto p = expand_brackets(F);
  REQUIRE(!p.is_zero());
  long best = -1;
  for (const auto& [mono, coeff] : p.terms()) {
    long w = 0;
    for (int i = 0; i <= F.k(); ++i)
      for (int j = 0; j <= F.n(); ++j) w += mono[block_variable(F.n(), i, j)] * c[j];
    best = std::max(best, w);
  }
  return best;
}

// Exhaustive maximum over all monomial bases of the quotient.
Rational brute_force_hilbert_weight(const VarietyDescriptor& v, int m, const WeightVector& c) {
  auto basis = monomial_basis(v.n_vars(), m);
  std::vector<std::vector<Rational>> ideal;
  for (const auto& g : v.generators()) {
    if (g.degree() > m) continue;
    for (const auto& shift : monomial_basis(v.n_vars(), m - g.degree()))
      ideal.push_back(oracle::dense(g.shifted(shift), basis));
  }
  const int ideal_rank = oracle::rank(ideal);
  const int total = static_cast<int>(basis.size());
  const int h = total - ideal_rank;
  Rational best = -1;
  for (const auto& subset : subsets_of_size(total, h)) {
    auto rows = ideal;
    long w = 0;
    for (int i : subset) {
      std::vector<Rational> unit(total);
      unit[i] = 1;
      rows.push_back(unit);
      w += basis[i].dot<long>(std::span<const long>(c));
    }
    if (oracle::rank(rows) == total && w > best) best = w;
  }
  return best;
}

}  // namespace

TEST_CASE("coordinate_subspace_chow_form expansions") {
  auto line = expand_brackets(coordinate_subspace_chow_form({0, 1}, 2));
  // u00*u11 - u01*u10 with u_{ij} at index 3i+j.
  HomogeneousPolynomial expected(6, 2);
  expected += HomogeneousPolynomial::monomial(Monomial({1, 0, 0, 0, 1, 0}), 1);
  expected += HomogeneousPolynomial::monomial(Monomial({0, 1, 0, 1, 0, 0}), -1);
  CHECK(line == expected);

  auto point = expand_brackets(coordinate_subspace_chow_form({0}, 2));
  CHECK(point == HomogeneousPolynomial::variable(3, 0));

  CHECK(expand_brackets(coordinate_subspace_chow_form({0, 1, 2}, 3)).term_count() == 6);
  CHECK(expand_brackets(coordinate_subspace_chow_form({0, 1, 2, 3}, 3)).term_count() == 24);
  CHECK_THROWS_AS(coordinate_subspace_chow_form({}, 2), PreconditionError);
}

TEST_CASE("bracket polynomial parsing") {
  auto F = parse_bracket_polynomial("3/2 * [0,1][1,2] - [0,2]^2", 2);
  CHECK(F.k() == 1);
  CHECK(F.degree() == 2);
  CHECK(F.terms().size() == 2);
  CHECK(F.terms()[0].coefficient == Rational(3, 2));
  CHECK(F.terms()[1].brackets == std::vector<std::vector<int>>{{0, 2}, {0, 2}});
  // Unsorted brackets pick up the permutation sign.
  auto G = parse_bracket_polynomial("[1,0]", 2);
  CHECK(G.terms()[0].coefficient == -1);
  CHECK(G.terms()[0].brackets.front() == std::vector<int>{0, 1});
  CHECK(parse_bracket_polynomial(F.to_string(), 2).merged().to_string() == F.merged().to_string());

  CHECK_THROWS_AS(parse_bracket_polynomial("[0,1][2]", 2), InputError);
  CHECK_THROWS_AS(parse_bracket_polynomial("[0,1] + [0,1][1,2]", 2), InputError);
  CHECK_THROWS_AS(parse_bracket_polynomial("[0,3]", 2), InputError);
  CHECK_THROWS_AS(parse_bracket_polynomial("[0,1", 2), InputError);
  CHECK_THROWS_AS(parse_bracket_polynomial("", 2), InputError);
}

TEST_CASE("chow_weight examples") {
  auto F = coordinate_subspace_chow_form({0, 1}, 2);
  auto r = chow_weight(F, {3, 2, 1});
  CHECK(r.value == 5);
  CHECK(r.combinatorial == 5);
  CHECK(r.agree);
  CHECK(expanded_chow_weight(F, {3, 2, 1}) == 5);

  CHECK(chow_weight(conic_chow_form(), {0, 0, 0}).value == 0);

  BracketPolynomial product(3, 1, {BracketTerm{2, {{0, 1}, {2, 3}}}});
  WeightVector c{4, 1, 7, 2};
  CHECK(chow_weight(product, c).value == (4 + 1) + (7 + 2));

  // Conic: [1,2][0,1] has weight 1 and [0,2]^2 weight 2 under (1,0,0).
  CHECK(chow_weight(conic_chow_form(), {1, 0, 0}).value == 2);
  CHECK(chow_weight(conic_chow_form(), {0, 1, 0}).value == 2);
}

TEST_CASE("chow_weight cancellation is detected by both paths") {
  // [0,1][2,3] - [0,2][1,3] + [0,3][1,2] is the Plucker relation: identically zero.
  auto zero = parse_bracket_polynomial("[0,1][2,3] - [0,2][1,3] + [0,3][1,2]", 3);
  CHECK(expand_brackets(zero).is_zero());
  CHECK_THROWS_AS(chow_weight(zero, {1, 2, 3, 4}), PreconditionError);

  // Adding the relation to [0,1]^2 changes the bracket form but not the
  // polynomial; the top bracket group cancels.
  auto padded = parse_bracket_polynomial("[0,1][0,1] + [0,3][1,2] - [0,2][1,3] + [0,1][2,3]", 3);
  WeightVector c{0, 1, 5, 5};
  // Naive bracket maximum would be 11 (from [0,3][1,2], [0,2][1,3], [0,1][2,3]).
  auto r = chow_weight(padded, c);
  CHECK(r.value == expanded_chow_weight(padded, c));
  CHECK(r.combinatorial == r.value);
  CHECK(r.value == 2);
}

TEST_CASE("chow_weight paths agree on random inputs, and scale linearly") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> w(0, 6);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::vector<std::vector<int>> pairs = subsets_of_size(4, 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<BracketTerm> terms;
    for (int t = 0; t < 3; ++t) {
      int a = static_cast<int>(rng() % pairs.size());
      int b = static_cast<int>(rng() % pairs.size());
      int cf = coeff(rng);
      if (cf != 0) terms.push_back({cf, {pairs[a], pairs[b]}});
    }
    BracketPolynomial F(3, 1, terms);
    if (F.merged().empty() || expand_brackets(F).is_zero()) continue;
    WeightVector c{w(rng), w(rng), w(rng), w(rng)};
    auto r = chow_weight(F, c, {.seed = static_cast<std::uint64_t>(trial)});
    CHECK(r.agree);
    CHECK(r.value == expanded_chow_weight(F, c));
    WeightVector c3 = c;
    for (auto& x : c3) x *= 3;
    CHECK(chow_weight(F, c3).value == 3 * r.value);
  }
}

TEST_CASE("hilbert_weight examples") {
  auto p1 = VarietyDescriptor::projective_space(1);
  auto r = hilbert_weight(p1, 2, {1, 0});
  CHECK(r.S == 3);
  CHECK(r.basis.size() == 3);

  auto c = conic();
  auto s = hilbert_weight(c, 2, {1, 0, 0});
  CHECK(s.S == 4);
  CHECK(s.h == 5);
  CHECK(std::find(s.basis.begin(), s.basis.end(), Monomial({0, 2, 0})) == s.basis.end());
  CHECK(brute_force_hilbert_weight(c, 2, {1, 0, 0}) == 4);

  for (int m = 1; m <= 4; ++m) {
    auto u = hilbert_weight(c, m, {1, 1, 1});
    CHECK(u.S == m * c.hilbert(m));
  }
  CHECK_THROWS_AS(hilbert_weight(c, 0, {1, 0, 0}), PreconditionError);
  CHECK_THROWS_AS(hilbert_weight(c, 2, {1, 0}), PreconditionError);
  CHECK_THROWS_AS(hilbert_weight(c, 2, {1, -1, 0}), PreconditionError);
}

TEST_CASE("hilbert_weight greedy matches exhaustive search on small quotients") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> w(0, 5);
  std::vector<VarietyDescriptor> cases{
      conic(),
      VarietyDescriptor(2, {parse_polynomial("x0*x1", 3)}),
      VarietyDescriptor(2, {parse_polynomial("x0 + x1 - 2*x2", 3)}),
      VarietyDescriptor(2, {parse_polynomial("x0^2 - x1*x2", 3), parse_polynomial("x1^2 - x0*x2", 3)}),
      VarietyDescriptor(3, {parse_polynomial("x0 - x3", 4), parse_polynomial("x1 + x2", 4)}),
      VarietyDescriptor::projective_space(1),
  };
  int checked = 0;
  for (const auto& v : cases)
    for (int m = 1; m <= 3; ++m) {
      if (v.hilbert(m) > 6 || v.hilbert(m) == 0) continue;
      for (int trial = 0; trial < 4; ++trial) {
        WeightVector c(v.n_vars());
        for (auto& x : c) x = w(rng);
        CHECK(hilbert_weight(v, m, c).S == brute_force_hilbert_weight(v, m, c));
        ++checked;
      }
    }
  CHECK(checked >= 30);
}

TEST_CASE("hilbert_weight scaling and bounds") {
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> w(0, 7);
  auto v = conic();
  for (int trial = 0; trial < 20; ++trial) {
    WeightVector c{w(rng), w(rng), w(rng)};
    int m = 1 + trial % 4;
    auto base = hilbert_weight(v, m, c);
    WeightVector c2 = c;
    for (auto& x : c2) x *= 2 + trial % 3;
    auto scaled = hilbert_weight(v, m, c2);
    CHECK(scaled.S == base.S * (2 + trial % 3));
    CHECK(scaled.basis == base.basis);
    long hi = *std::max_element(c.begin(), c.end());
    long lo = *std::min_element(c.begin(), c.end());
    CHECK(base.S <= Rational(m * hi * base.h));
    CHECK(base.S >= Rational(m * lo * base.h));
  }
}

TEST_CASE("hilbert_chow_margin") {
  // Coordinate line {x2 = 0} in P^2, F = [0,1], m = 3, c = (2,1,0).
  VarietyDescriptor line(2, {parse_polynomial("x2", 3)});
  auto F = coordinate_subspace_chow_form({0, 1}, 2);
  auto r = hilbert_chow_margin(line, F, 3, {2, 1, 0});
  // S = 3*2 + 2*2+1 + ... : monomials x0^3, x0^2x1, x0x1^2, x1^3 weigh 6,5,4,3.
  CHECK(r.lhs == Rational(18, 12));
  CHECK(r.rhs == Rational(3, 3) - Rational(5 * 2, 3));
  CHECK(r.margin >= 0);

  CHECK(hilbert_chow_margin(line, F, 3, {0, 0, 0}).margin == 0);

  auto p2 = VarietyDescriptor::projective_space(2);
  auto full = coordinate_subspace_chow_form({0, 1, 2}, 2);
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> w(0, 5);
  for (int trial = 0; trial < 10; ++trial) {
    WeightVector c{w(rng), w(rng), w(rng)};
    auto m = hilbert_chow_margin(p2, full, 2, c);
    CHECK(m.margin >= 0);
    // All of C[x]_2 is the basis: S = 4 * sum c, H = 6.
    CHECK(m.lhs == Rational(4 * (c[0] + c[1] + c[2]), 12));
  }

  // Conic with its bracket form.
  auto cm = hilbert_chow_margin(conic(), conic_chow_form(), 3, {1, 0, 0});
  CHECK(cm.margin >= 0);

  CHECK_THROWS_AS(hilbert_chow_margin(line, F, 1, {1, 0, 0}), PreconditionError);
  CHECK_THROWS_AS(hilbert_chow_margin(conic(), F, 3, {1, 0, 0}), PreconditionError);
}

TEST_CASE("chow_subset_margin") {
  auto line = coordinate_line_p3();
  auto F = coordinate_subspace_chow_form({0, 1}, 3);
  auto r = chow_subset_margin(line, F, {4, 3, 2, 1}, {0, 1});
  CHECK(r.lhs == 7);
  CHECK(r.rhs == 7);
  CHECK(r.margin == 0);
  CHECK(chow_subset_margin(line, F, {1, 1, 1, 1}, {0, 1}).margin == 0);
  CHECK_THROWS_AS(chow_subset_margin(line, F, {4, 3, 2, 1}, {0, 2}), PreconditionError);
  CHECK_THROWS_AS(chow_subset_margin(line, F, {4, 0, 2, 1}, {0, 1}), PreconditionError);

  // Conic: {x0 = x2 = 0} misses it; e(3,1,2) = 10 from [0,2]^2.
  auto c = chow_subset_margin(conic(), conic_chow_form(), {3, 1, 2}, {0, 2});
  CHECK(c.lhs == 10);
  CHECK(c.margin == 0);
  // (0:0:1) lies on the conic.
  CHECK_THROWS_AS(chow_subset_margin(conic(), conic_chow_form(), {3, 1, 2}, {0, 1}), PreconditionError);
}
