#include "smtkit/weights/weights.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace smtkit {

namespace {

// Sorts J in place; returns the permutation sign, or 0 for a repeated index.
int sort_with_sign(std::vector<int>& J) {
  int sign = 1;
  for (std::size_t i = 1; i < J.size(); ++i)
    for (std::size_t j = i; j > 0 && J[j - 1] > J[j]; --j) {
      std::swap(J[j - 1], J[j]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < J.size(); ++i)
    if (J[i] == J[i - 1]) return 0;
  return sign;
}

class BracketParser {
 public:
  BracketParser(std::string_view text, int n) : text_(text), n_(n) {}

  BracketPolynomial parse() {
    std::vector<BracketTerm> terms;
    skip();
    if (at_end()) fail("empty bracket polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        advance();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      terms.push_back(term(sign));
      first = false;
    }
    if (k_ < 0) fail("no brackets");
    std::size_t degree = terms.front().brackets.size();
    for (const auto& t : terms)
      if (t.brackets.size() != degree)
        throw InputError("bracket polynomial is not homogeneous: terms have different bracket counts", 0);
    return BracketPolynomial(n_, k_, std::move(terms));
  }

 private:
  BracketTerm term(int sign) {
    BracketTerm t;
    t.coefficient = sign;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      t.coefficient *= coefficient();
      if (peek() == '*') advance();
    }
    if (peek() != '[') fail("expected '['");
    while (peek() == '[') {
      std::vector<int> J = bracket();
      long power = 1;
      if (peek() == '^') {
        advance();
        power = natural();
        if (power < 1) fail("bracket exponent must be positive");
      }
      const int s = sort_with_sign(J);
      if (s == 0) t.coefficient = 0;
      for (long p = 0; p < power; ++p) {
        if (s < 0) t.coefficient = -t.coefficient;
        t.brackets.push_back(J);
      }
      if (peek() == '*') {
        advance();
        if (peek() != '[') fail("expected '['");
      }
    }
    std::sort(t.brackets.begin(), t.brackets.end());
    return t;
  }

  std::vector<int> bracket() {
    const std::size_t open = pos_;
    advance();  // '['
    std::vector<int> J;
    J.push_back(static_cast<int>(natural()));
    while (peek() == ',') {
      advance();
      J.push_back(static_cast<int>(natural()));
    }
    if (peek() != ']') fail("expected ']'");
    advance();
    for (int j : J)
      if (j > n_) throw InputError("bracket index " + std::to_string(j) + " exceeds n", open);
    const int k = static_cast<int>(J.size()) - 1;
    if (k_ < 0) k_ = k;
    if (k != k_) throw InputError("brackets of different sizes", open);
    return J;
  }

  Rational coefficient() {
    Rational value = natural();
    if (peek() == '/') {
      advance();
      long den = natural();
      if (den == 0) fail("zero denominator");
      value /= den;
    }
    return value;
  }

  long natural() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1000000000L) fail("number too large");
      ++pos_;
    }
    skip();
    return value;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
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
  int n_;
  int k_ = -1;
  std::size_t pos_ = 0;
};

Rational determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

HomogeneousPolynomial bracket_expansion(const std::vector<int>& J, int n, int k) {
  const int vars = (k + 1) * (n + 1);
  std::vector<int> perm(k + 1);
  std::iota(perm.begin(), perm.end(), 0);
  HomogeneousPolynomial out(vars, k + 1);
  do {
    int inversions = 0;
    for (int a = 0; a <= k; ++a)
      for (int b = a + 1; b <= k; ++b)
        if (perm[a] > perm[b]) ++inversions;
    std::vector<int> exps(vars, 0);
    for (int i = 0; i <= k; ++i) ++exps[block_variable(n, i, J[perm[i]])];
    out += HomogeneousPolynomial::monomial(Monomial(std::move(exps)), inversions % 2 ? -1 : 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

long factorial(int k) {
  long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Top t-exponent of F(t^{c_j} r_{ij}) for one random sample r; nullopt when F vanishes there.
std::optional<long> sample_top_exponent(const BracketPolynomial& F, const WeightVector& c, std::mt19937_64& rng) {
  const int n = F.n();
  const int k = F.k();
  std::uniform_int_distribution<int> draw(1, 997);
  std::vector<std::vector<Rational>> r(k + 1, std::vector<Rational>(n + 1));
  for (auto& row : r)
    for (auto& x : row) {
      int num = draw(rng);
      int den = draw(rng);
      x = Rational(num, den);
    }
  std::map<std::vector<int>, Rational> dets;
  std::map<long, Rational, std::greater<>> by_weight;
  for (const auto& term : F.terms()) {
    Rational value = term.coefficient;
    for (const auto& J : term.brackets) {
      auto it = dets.find(J);
      if (it == dets.end()) {
        std::vector<std::vector<Rational>> m(k + 1, std::vector<Rational>(k + 1));
        for (int i = 0; i <= k; ++i)
          for (int t = 0; t <= k; ++t) m[i][t] = r[i][J[t]];
        it = dets.emplace(J, determinant(std::move(m))).first;
      }
      value *= it->second;
    }
    by_weight[bracket_weight(term, c)] += value;
  }
  for (const auto& [w, v] : by_weight)
    if (v != 0) return w;
  return std::nullopt;
}

}  // namespace

void validate_weights(const WeightVector& c, int n) {
  if (static_cast<int>(c.size()) != n + 1)
    throw PreconditionError("weight vector must have n+1 = " + std::to_string(n + 1) + " entries");
  for (long x : c)
    if (x < 0) throw PreconditionError("weights must be non-negative");
}

BracketPolynomial::BracketPolynomial(int n, int k, std::vector<BracketTerm> terms)
    : n_(n), k_(k), terms_(std::move(terms)) {
  if (k < 0 || k > n) throw PreconditionError("bracket size k+1 must lie in 1..n+1");
  for (auto& t : terms_) {
    for (auto& J : t.brackets) {
      if (static_cast<int>(J.size()) != k + 1) throw PreconditionError("bracket of the wrong size");
      const int s = sort_with_sign(J);
      if (J.front() < 0 || J.back() > n) throw PreconditionError("bracket index out of range");
      if (s == 0) t.coefficient = 0;
      if (s < 0) t.coefficient = -t.coefficient;
    }
    std::sort(t.brackets.begin(), t.brackets.end());
  }
  for (const auto& t : terms_)
    if (t.brackets.size() != terms_.front().brackets.size())
      throw PreconditionError("bracket polynomial terms have different degrees");
}

int BracketPolynomial::degree() const {
  return terms_.empty() ? 0 : static_cast<int>(terms_.front().brackets.size());
}

BracketPolynomial BracketPolynomial::merged() const {
  std::map<std::vector<std::vector<int>>, Rational> sums;
  for (const auto& t : terms_) sums[t.brackets] += t.coefficient;
  std::vector<BracketTerm> out;
  for (auto& [brackets, coeff] : sums)
    if (coeff != 0) out.push_back({coeff, brackets});
  return BracketPolynomial(n_, k_, std::move(out));
}

std::string BracketPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coefficient;
    if (c < 0) {
      out << (first ? "-" : " - ");
      c = -c;
    } else if (!first) {
      out << " + ";
    }
    if (c != 1) out << smtkit::to_string(c) << "*";
    for (const auto& J : t.brackets) {
      out << '[';
      for (std::size_t i = 0; i < J.size(); ++i) out << (i ? "," : "") << J[i];
      out << ']';
    }
    first = false;
  }
  return out.str();
}

BracketPolynomial parse_bracket_polynomial(std::string_view text, int n) {
  if (n < 0) throw PreconditionError("ambient dimension must be non-negative");
  return BracketParser(text, n).parse();
}

BracketPolynomial coordinate_subspace_chow_form(std::vector<int> J, int n) {
  if (J.empty()) throw PreconditionError("coordinate subspace needs a nonempty index set");
  const int k = static_cast<int>(J.size()) - 1;
  return BracketPolynomial(n, k, {BracketTerm{1, {std::move(J)}}});
}

HomogeneousPolynomial expand_brackets(const BracketPolynomial& F) {
  const int vars = (F.k() + 1) * (F.n() + 1);
  HomogeneousPolynomial out(vars, (F.k() + 1) * F.degree());
  std::map<std::vector<int>, HomogeneousPolynomial> cache;
  for (const auto& t : F.terms()) {
    HomogeneousPolynomial p = HomogeneousPolynomial::constant(vars, t.coefficient);
    for (const auto& J : t.brackets) {
      auto it = cache.find(J);
      if (it == cache.end()) it = cache.emplace(J, bracket_expansion(J, F.n(), F.k())).first;
      p = p * it->second;
    }
    out += p;
  }
  return out;
}

long bracket_weight(const std::vector<int>& J, const WeightVector& c) {
  long w = 0;
  for (int j : J) w += c[j];
  return w;
}

long bracket_weight(const BracketTerm& term, const WeightVector& c) {
  long w = 0;
  for (const auto& J : term.brackets) w += bracket_weight(J, c);
  return w;
}

ChowWeightResult chow_weight(const BracketPolynomial& F, const WeightVector& c, const ChowWeightOptions& options) {
  validate_weights(c, F.n());
  const BracketPolynomial merged = F.merged();
  if (merged.empty()) throw PreconditionError("Chow weight of the zero bracket polynomial");

  ChowWeightResult result;

  // Combinatorial path: weight groups from the top until one survives expansion.
  double expanded_size = static_cast<double>(merged.terms().size());
  for (int i = 0; i < merged.degree(); ++i) expanded_size *= static_cast<double>(factorial(merged.k() + 1));
  if (expanded_size <= static_cast<double>(options.expansion_limit)) {
    std::map<long, std::vector<BracketTerm>, std::greater<>> groups;
    for (const auto& t : merged.terms()) groups[bracket_weight(t, c)].push_back(t);
    for (auto& [w, terms] : groups) {
      if (!expand_brackets(BracketPolynomial(merged.n(), merged.k(), terms)).is_zero()) {
        result.combinatorial = w;
        break;
      }
    }
    if (!result.combinatorial) throw PreconditionError("bracket polynomial expands to zero");
  }

  std::mt19937_64 rng(options.seed);
  for (int round = 1; round <= options.max_rounds; ++round) {
    result.rounds = round;
    auto a = sample_top_exponent(merged, c, rng);
    auto b = sample_top_exponent(merged, c, rng);
    if (a && b && *a == *b) {
      result.value = *a;
      result.agree = !result.combinatorial || *result.combinatorial == result.value;
      return result;
    }
  }
  throw InconclusiveError("Chow weight: all " + std::to_string(2 * options.max_rounds) +
                          " substitution samples were degenerate or disagreed");
}

HilbertWeightResult hilbert_weight(const VarietyDescriptor& v, int m, const WeightVector& c) {
  if (m < 1) throw PreconditionError("Hilbert weight needs m >= 1");
  validate_weights(c, v.n());
  MonomialIndex index(v.n_vars(), m);
  RowSpace space = ideal_row_space(v.generators(), index);

  HilbertWeightResult result;
  result.ideal_rank = space.rank();
  const auto& basis = index.basis();
  std::vector<long> weight(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) weight[i] = basis[i].dot<long>(std::span<const long>(c));
  std::vector<int> order(basis.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return weight[a] > weight[b]; });

  long S = 0;
  for (int col : order) {
    if (space.full()) break;
    if (space.insert_unit(col)) {
      result.basis_columns.push_back(col);
      result.basis.push_back(basis[col]);
      S += weight[col];
    }
  }
  result.S = S;
  result.h = static_cast<long>(result.basis.size());
  return result;
}

namespace {

void check_bracket_form_matches(const VarietyDescriptor& v, const BracketPolynomial& F) {
  if (F.n() != v.n()) throw PreconditionError("Chow form and variety live in different ambient spaces");
  const DimensionEstimate dim = estimate_dimension(v);
  if (dim.value() != F.k())
    throw PreconditionError("Chow form has " + std::to_string(F.k() + 1) + " blocks but the variety has dimension " +
                            std::to_string(dim.value()));
  if (dim.degree != F.degree())
    throw PreconditionError("Chow form degree " + std::to_string(F.degree()) + " differs from the variety degree " +
                            dim.degree.str());
}

}  // namespace

WeightMargin hilbert_chow_margin(const VarietyDescriptor& v, const BracketPolynomial& F, int m,
                                 const WeightVector& c, std::uint64_t seed) {
  validate_weights(c, v.n());
  check_bracket_form_matches(v, F);
  const long delta = F.degree();
  if (m <= delta) throw PreconditionError("need m > Delta (m = " + std::to_string(m) + ", Delta = " +
                                          std::to_string(delta) + ")");
  const HilbertWeightResult S = hilbert_weight(v, m, c);
  const long e = chow_weight(F, c, {.seed = seed}).value;
  const long n = v.n();
  const long max_c = *std::max_element(c.begin(), c.end());
  WeightMargin out;
  out.lhs = S.S / Rational(m * S.h);
  out.rhs = Rational(e, (n + 1) * delta) - Rational((2 * n + 1) * delta * max_c, m);
  out.margin = out.lhs - out.rhs;
  return out;
}

WeightMargin chow_subset_margin(const VarietyDescriptor& y, const BracketPolynomial& F, const WeightVector& c,
                                const std::vector<int>& subset, std::uint64_t seed) {
  validate_weights(c, y.n());
  for (long x : c)
    if (x <= 0) throw PreconditionError("weights must be positive");
  check_bracket_form_matches(y, F);
  if (static_cast<int>(subset.size()) != F.k() + 1)
    throw PreconditionError("subset must have dim+1 = " + std::to_string(F.k() + 1) + " elements");
  std::vector<HomogeneousPolynomial> coords;
  for (int i : subset) {
    if (i < 0 || i > y.n()) throw PreconditionError("subset index out of range");
    coords.push_back(HomogeneousPolynomial::variable(y.n_vars(), i));
  }
  if (!certify_empty(y.intersected_with(coords)).empty())
    throw PreconditionError("coordinate subspace of the subset is not certified to miss the variety");
  long sum = 0;
  for (int i : subset) sum += c[i];
  WeightMargin out;
  out.lhs = chow_weight(F, c, {.seed = seed}).value;
  out.rhs = Rational(sum * F.degree());
  out.margin = out.lhs - out.rhs;
  return out;
}

}  // namespace smtkit
