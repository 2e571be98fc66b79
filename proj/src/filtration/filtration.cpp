#include "smtkit/filtration/filtration.hpp"

#include <map>

#include "smtkit/algebra/linalg.hpp"
#include "smtkit/variety/variety.hpp"

namespace smtkit {

namespace {

void check_divisible(int u, int d) {
  if (d < 1) throw PreconditionError("degree d must be at least 1");
  if (u < 0 || u % d != 0)
    throw PreconditionError("u = " + std::to_string(u) + " is not a non-negative multiple of d = " + std::to_string(d));
}

void collect_indices(int n, int remaining, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == n) {
    out.push_back(current);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    current.push_back(v);
    collect_indices(n, remaining - v, current, out);
    current.pop_back();
  }
}

}  // namespace

void validate_filtration_params(const FiltrationParams& params, std::uint64_t seed) {
  check_divisible(params.u, params.d);
  if (params.n < 1) throw PreconditionError("filtration needs n >= 1");
  if (static_cast<int>(params.P.size()) != params.n)
    throw PreconditionError("filtration needs exactly n = " + std::to_string(params.n) + " forms");
  for (const auto& p : params.P) {
    if (p.n_vars() != params.n + 1) throw PreconditionError("filtration form is not in n+1 variables");
    if (p.degree() != params.d) throw PreconditionError("filtration forms must all have degree d");
    if (p.is_zero()) throw PreconditionError("filtration form is zero");
  }
  CoefficientSampler sampler(seed);
  HomogeneousPolynomial generic(params.n + 1, 1);
  for (int i = 0; i <= params.n; ++i) generic += HomogeneousPolynomial::variable(params.n + 1, i) * Rational(sampler.next(97));
  std::vector<std::vector<HomogeneousPolynomial>> sets{params.P, {generic}};
  if (!certify_empty(params.n, sets).empty())
    throw PreconditionError("filtration forms are not certified to be in general position");
}

std::vector<std::vector<int>> bounded_indices(int n, int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  collect_indices(n, total, current, out);
  return out;
}

FiltrationTable filtration_dims(const FiltrationParams& params) {
  check_divisible(params.u, params.d);
  const int n = params.n;
  const int d = params.d;
  const int u = params.u;
  if (static_cast<int>(params.P.size()) != n) throw PreconditionError("filtration needs exactly n forms");

  FiltrationTable table;
  table.n = n;
  table.d = d;
  table.u = u;
  table.indices = bounded_indices(n, u / d);

  std::vector<std::vector<HomogeneousPolynomial>> powers(n);
  for (int t = 0; t < n; ++t) {
    powers[t].push_back(HomogeneousPolynomial::constant(n + 1, 1));
    for (int e = 1; e <= u / d; ++e) powers[t].push_back(powers[t].back() * params.P[t]);
  }

  MonomialIndex index(n + 1, u);
  RowSpace space(index.size());
  const std::size_t K = table.indices.size();
  table.dims.assign(K, 0);
  for (std::size_t s = K; s-- > 0;) {
    const auto& j = table.indices[s];
    HomogeneousPolynomial product = HomogeneousPolynomial::constant(n + 1, 1);
    int sigma = 0;
    for (int t = 0; t < n; ++t) {
      product = product * powers[t][j[t]];
      sigma += j[t];
    }
    if (!product.is_zero())
      for (const Monomial& shift : monomial_basis(n + 1, u - d * sigma)) {
        if (space.full()) break;
        space.insert(to_sparse_row(product.shifted(shift), index));
      }
    table.dims[s] = space.rank();
  }

  table.m.assign(K, 0);
  for (std::size_t s = 0; s < K; ++s) table.m[s] = table.dims[s] - (s + 1 < K ? table.dims[s + 1] : 0);
  if (table.m.back() != 1)
    throw PreconditionError("last filtration space has dimension " + std::to_string(table.m.back()) + ", expected 1");
  return table;
}

std::vector<std::vector<int>> quotient_dimension_violations(const FiltrationTable& table) {
  long expected = 1;
  for (int i = 0; i < table.n; ++i) expected *= table.d;
  std::vector<std::vector<int>> out;
  for (std::size_t s = 0; s < table.indices.size(); ++s) {
    int sigma = 0;
    for (int v : table.indices[s]) sigma += v;
    if (table.d * sigma < table.u - table.n * table.d && table.m[s] != expected) out.push_back(table.indices[s]);
  }
  return out;
}

BValues compute_b(const FiltrationTable& table) {
  BValues out;
  out.b.assign(table.n, Rational(0));
  for (std::size_t s = 0; s < table.indices.size(); ++s)
    for (int j = 0; j < table.n; ++j) out.b[j] += Rational(table.m[s] * table.indices[s][j]);
  Integer dn = 1;
  for (int i = 0; i < table.n; ++i) dn *= table.d;
  out.bound = Rational(dn * (table.u - table.n * table.d)) / ((table.n + 1) * table.d) *
              Rational(binomial(table.u / table.d, table.n));
  for (const auto& b : out.b) out.margins.push_back(b - out.bound);
  return out;
}

Integer count_K(int u, int d, int n) {
  check_divisible(u, d);
  return binomial(u / d + n, n);
}

}  // namespace smtkit
