#include <doctest.h>

#include <sstream>

#include "smtkit/cli/scenario.hpp"

using namespace smtkit;

namespace {

ScenarioFile parse(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}

// Message of the InputError raised by the text, or empty.
std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

const char* kConic = R"(# conic
[variety]
n = 2
generator = x0*x2 - x1^2   # the conic

[hypersurfaces]
poly = x0
poly = x0 + 2*x1 + 3*x2 ; degree = 1

[curve]
component = 1
component = z
component = z^2

[params]
N = 1
epsilon = 1/2
r_range = 10 100 10 log
truncation = auto
seed = 7
precision = 192
degree_cap = 9
)";

}  // namespace

TEST_CASE("scenario parsing") {
  const auto s = parse(kConic);
  CHECK(s.n == 2);
  REQUIRE(s.generators.size() == 1);
  CHECK(s.generators[0] == parse_polynomial("x0*x2 - x1^2", 3));
  CHECK(s.hypersurfaces.size() == 2);
  CHECK(s.curve.size() == 3);
  CHECK(*s.N == 1);
  CHECK(*s.epsilon == Rational(1, 2));
  REQUIRE(s.r_grid.size() == 10);
  CHECK(s.r_grid.front() == doctest::Approx(10));
  CHECK(s.r_grid.back() == doctest::Approx(100));
  CHECK(s.r_grid[1] / s.r_grid[0] == doctest::Approx(s.r_grid[9] / s.r_grid[8]));
  CHECK_FALSE(s.truncation.has_value());
  CHECK(s.seed == 7);
  CHECK(s.precision == 192);
  CHECK(s.degree_cap == 9);
  const auto smt = s.smt_scenario();
  CHECK(smt.Q.size() == 2);
  CHECK(smt.f.n() == 2);
}

TEST_CASE("scenario grids") {
  auto s = parse("[variety]\nn = 1\n[params]\nr_range = 1 5 5\n");
  CHECK(s.r_grid == std::vector<double>{1, 2, 3, 4, 5});
  s = parse("[variety]\nn = 1\n[params]\nr_grid = 1 2.5 7\ntruncation = 12\n");
  CHECK(s.r_grid == std::vector<double>{1, 2.5, 7});
  CHECK(*s.truncation == 12);
  CHECK(error_of("[variety]\nn = 1\n[params]\nr_grid = 3 2\n").find("increasing") != std::string::npos);
  CHECK(error_of("[variety]\nn = 1\n[params]\nr_grid = 0.5 2\n").find("at least 1") != std::string::npos);
  CHECK(error_of("[variety]\nn = 1\n[params]\nr_grid = 2\nr_range = 1 2 3\n").find("not both") != std::string::npos);
}

TEST_CASE("weights and filtration sections") {
  const auto s = parse(
      "[variety]\nn = 2\n[weights]\nc = 3 1 2\nm = 4\nchow_form = [0,1]\nsubset = 1 3\n"
      "[filtration]\nd = 2\nu = 6\nP = x0^2\nP = x1^2\n");
  REQUIRE(s.weights);
  CHECK(s.weights->c == WeightVector{3, 1, 2});
  CHECK(*s.weights->m == 4);
  CHECK(*s.weights->chow_form == "[0,1]");
  CHECK(s.weights->subset == std::vector<int>{0, 2});
  REQUIRE(s.filtration);
  CHECK(s.filtration->d == 2);
  CHECK(s.filtration->u == 6);
  CHECK(s.filtration->P.size() == 2);
  CHECK(error_of("[variety]\nn = 2\n[weights]\nsubset = 0\n").find("1-based") != std::string::npos);
}

TEST_CASE("scenario errors carry line and column") {
  CHECK(error_of("[variety]\nn = 2\n[hypersurfaces]\npoly = x0 + * x1\n").rfind("line 4, column 13", 0) == 0);
  CHECK(error_of("[variety]\nn = 2\n[hypersurfaces]\npoly = x0 ; degree = 2\n").find("declared degree 2") !=
        std::string::npos);
  CHECK(error_of("[variety]\nn = 2\n[bogus]\n").rfind("line 3", 0) == 0);
  CHECK(error_of("n = 2\n").find("outside of any section") != std::string::npos);
  CHECK(error_of("[params]\nN = 1\n").find("missing [variety] n") != std::string::npos);
  CHECK(error_of("[variety]\nn = two\n").find("expected an integer") != std::string::npos);
  CHECK(error_of("[variety]\nn = 2\n[params]\nepsilon = -1\n").find("positive") != std::string::npos);
  CHECK(error_of("[variety]\nn = 2\n[curve]\ncomponent = 1\ncomponent = z\n").find("n+1 = 3") != std::string::npos);
  CHECK(error_of("[variety]\nn = 2\n[curve]\ncomponent = exp(\n").rfind("line 4, column", 0) == 0);
  CHECK(error_of("[variety]\nn = 2\n[params]\nfoo = 1\n").find("unknown key 'foo'") != std::string::npos);
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.cfg"), InputError);
  CHECK_THROWS_AS(parse("[variety]\nn = 2\n").smt_scenario(), InputError);
}

TEST_CASE("comments and blank lines are ignored") {
  const auto a = parse(kConic);
  std::string noisy = "\n\n# header\n";
  for (char c : std::string(kConic)) {
    noisy += c;
    if (c == '\n') noisy += "   \n# filler\n";
  }
  const auto b = parse(noisy);
  CHECK(a.generators == b.generators);
  CHECK(a.hypersurfaces == b.hypersurfaces);
  CHECK(a.r_grid == b.r_grid);
}
