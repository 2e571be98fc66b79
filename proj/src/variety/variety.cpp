#include "smtkit/variety/variety.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace smtkit {

RowSpace ideal_row_space(std::span<const HomogeneousPolynomial> gens, const MonomialIndex& index) {
  const int n_vars = index.n_vars();
  const int m = index.degree();
  RowSpace space(index.size());
  for (const auto& g : gens) {
    if (g.n_vars() != n_vars) throw PreconditionError("generator has the wrong number of variables");
    if (g.is_zero() || g.degree() > m) continue;
    for (const Monomial& shift : monomial_basis(n_vars, m - g.degree())) {
      if (space.full()) return space;
      space.insert(to_sparse_row(g.shifted(shift), index));
    }
  }
  return space;
}

long ideal_graded_dim(std::span<const HomogeneousPolynomial> gens, int n_vars, int m) {
  if (m < 0) throw PreconditionError("ideal_graded_dim needs m >= 0");
  return ideal_row_space(gens, MonomialIndex(n_vars, m)).rank();
}

int default_degree_cap(int n, std::span<const HomogeneousPolynomial> gens) {
  int sum = 0;
  int max_deg = 0;
  for (const auto& g : gens) {
    sum += g.degree();
    max_deg = std::max(max_deg, g.degree());
  }
  return std::max(sum, 2 * max_deg + n + 2);
}

VarietyDescriptor::VarietyDescriptor(int n, std::vector<HomogeneousPolynomial> generators)
    : n_(n), generators_(std::move(generators)), cache_(std::make_shared<Cache>()) {
  if (n < 0) throw PreconditionError("ambient dimension must be non-negative");
  for (const auto& g : generators_)
    if (g.n_vars() != n + 1) throw PreconditionError("generator is not a form in n+1 variables");
}

long VarietyDescriptor::hilbert(int m) const {
  if (m < 0) throw PreconditionError("hilbert function needs m >= 0");
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->values.find(m);
    if (it != cache_->values.end()) return it->second;
  }
  const long total = binomial_long(m + n_, n_);
  const long value = total - ideal_graded_dim(generators_, n_vars(), m);
  std::lock_guard lock(cache_->mutex);
  auto [it, inserted] = cache_->values.try_emplace(m, value);
  if (!inserted && it->second != value) throw std::logic_error("Hilbert cache writers disagree");
  // Monotone vanishing: once H is zero it stays zero.
  for (const auto& [deg, h] : cache_->values) {
    if (h == 0 && deg < m && value != 0) throw std::logic_error("Hilbert function revived after vanishing");
    if (value == 0 && deg > m && h != 0) throw std::logic_error("Hilbert function revived after vanishing");
  }
  return value;
}

std::map<int, long> VarietyDescriptor::cached_values() const {
  std::lock_guard lock(cache_->mutex);
  return cache_->values;
}

VarietyDescriptor VarietyDescriptor::intersected_with(std::span<const HomogeneousPolynomial> extra) const {
  std::vector<HomogeneousPolynomial> gens = generators_;
  gens.insert(gens.end(), extra.begin(), extra.end());
  return VarietyDescriptor(n_, std::move(gens));
}

long hilbert_function(const VarietyDescriptor& v, int m) { return v.hilbert(m); }

std::string to_string(EmptinessKind kind) {
  switch (kind) {
    case EmptinessKind::CertifiedEmpty:
      return "CertifiedEmpty";
    case EmptinessKind::NonemptyLikely:
      return "NonemptyLikely";
    case EmptinessKind::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

namespace {

// Index t of the unique t-th finite difference that is a nonzero constant on
// the window, or -1 when none (all orders checked need >= 2 samples).
int constant_difference_order(std::vector<long> values, Integer& constant) {
  const int w = static_cast<int>(values.size());
  std::vector<Integer> diff(values.begin(), values.end());
  for (int t = 0; t + 1 < w; ++t) {
    bool constant_row = std::all_of(diff.begin(), diff.end(), [&](const Integer& x) { return x == diff.front(); });
    if (constant_row && diff.front() != 0) {
      constant = diff.front();
      return t;
    }
    std::vector<Integer> next;
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) next.push_back(diff[i + 1] - diff[i]);
    diff = std::move(next);
  }
  return -1;
}

DimensionEstimate estimate_from_window(const VarietyDescriptor& v, int window, int cap) {
  DimensionEstimate est;
  est.window = window;
  est.cap = cap;
  if (v.hilbert(cap) == 0) {
    est.kind = DimensionEstimate::Kind::Empty;
    est.dimension = kEmptyDimension;
    return est;
  }
  for (int m = cap - window + 1; m <= cap; ++m) est.values.push_back(v.hilbert(m));
  Integer constant;
  int order = constant_difference_order(est.values, constant);
  if (order < 0 || order > v.n()) {
    est.kind = DimensionEstimate::Kind::Unstable;
    return est;
  }
  est.kind = DimensionEstimate::Kind::Dimension;
  est.dimension = order;
  est.degree = constant;
  return est;
}

int resolve_window(int n, int window) {
  if (window <= 0) window = n + 3;
  if (window < n + 2) throw PreconditionError("dimension window must be at least n+2");
  return window;
}

}  // namespace

EmptinessVerdict certify_empty(const VarietyDescriptor& v, int m_cap) {
  if (m_cap <= 0) m_cap = v.default_degree_cap();
  const int window = resolve_window(v.n(), 0);
  m_cap = std::max(m_cap, window - 1);
  EmptinessVerdict verdict;
  verdict.cap = m_cap;
  for (int m = 1; m <= m_cap; ++m) {
    if (v.hilbert(m) == 0) {
      verdict.kind = EmptinessKind::CertifiedEmpty;
      verdict.certificate_degree = m;
      return verdict;
    }
  }
  DimensionEstimate est = estimate_from_window(v, window, m_cap);
  verdict.top_window = est.values;
  verdict.kind = est.kind == DimensionEstimate::Kind::Dimension ? EmptinessKind::NonemptyLikely
                                                               : EmptinessKind::Inconclusive;
  return verdict;
}

EmptinessVerdict certify_empty(int n, std::span<const std::vector<HomogeneousPolynomial>> gen_sets, int m_cap) {
  std::vector<HomogeneousPolynomial> all;
  for (const auto& set : gen_sets) all.insert(all.end(), set.begin(), set.end());
  return certify_empty(VarietyDescriptor(n, std::move(all)), m_cap);
}

int DimensionEstimate::value() const {
  if (kind == Kind::Unstable) throw InconclusiveError("Hilbert differences did not stabilize below the degree cap");
  return dimension;
}

DimensionEstimate estimate_dimension(const VarietyDescriptor& v, int window, int cap) {
  window = resolve_window(v.n(), window);
  if (cap <= 0) cap = v.default_degree_cap();
  cap = std::max(cap, window - 1);
  return estimate_from_window(v, window, cap);
}

long variety_degree(const VarietyDescriptor& v, int window, int cap) {
  DimensionEstimate est = estimate_dimension(v, window, cap);
  if (est.kind == DimensionEstimate::Kind::Empty) throw PreconditionError("variety_degree of an empty variety");
  if (est.kind == DimensionEstimate::Kind::Unstable)
    throw InconclusiveError("unstable Hilbert data at degree cap " + std::to_string(est.cap));
  return est.degree.convert_to<long>();
}

std::string to_string(PositionReport::Verdict verdict) {
  switch (verdict) {
    case PositionReport::Verdict::Holds:
      return "holds";
    case PositionReport::Verdict::Fails:
      return "fails";
    case PositionReport::Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::vector<std::vector<int>> subsets_of_size(int n, int r) {
  std::vector<std::vector<int>> out;
  if (r < 0 || r > n) return out;
  std::vector<int> current(r);
  std::iota(current.begin(), current.end(), 0);
  while (true) {
    out.push_back(current);
    int i = r - 1;
    while (i >= 0 && current[i] == n - r + i) --i;
    if (i < 0) break;
    ++current[i];
    for (int j = i + 1; j < r; ++j) current[j] = current[j - 1] + 1;
  }
  return out;
}

PositionReport check_position(const VarietyDescriptor& v, std::span<const HomogeneousPolynomial> q, int N,
                              int m_cap) {
  const int count = static_cast<int>(q.size());
  if (N < 0 || count < N + 1) throw PreconditionError("check_position needs q >= N+1");
  PositionReport report;
  report.N = N;
  bool inconclusive = false;
  for (const auto& subset : subsets_of_size(count, N + 1)) {
    std::vector<HomogeneousPolynomial> chosen;
    for (int i : subset) chosen.push_back(q[i]);
    EmptinessVerdict verdict = certify_empty(v.intersected_with(chosen), m_cap);
    report.certificates.push_back({subset, verdict});
    if (verdict.kind == EmptinessKind::NonemptyLikely) {
      report.verdict = PositionReport::Verdict::Fails;
      report.witness = subset;
      return report;
    }
    if (verdict.kind == EmptinessKind::Inconclusive) inconclusive = true;
  }
  report.verdict = inconclusive ? PositionReport::Verdict::Inconclusive : PositionReport::Verdict::Holds;
  return report;
}

CoefficientSampler::CoefficientSampler(std::uint64_t seed) : engine_(seed) {}

long CoefficientSampler::next(int bound) {
  if (bound < 1) throw PreconditionError("coefficient bound must be positive");
  const auto span = static_cast<std::uint64_t>(2 * bound);
  const long draw = static_cast<long>(engine_() % span);
  return draw < bound ? draw - bound : draw - bound + 1;
}

namespace {

std::string dims_to_string(const std::vector<int>& dims) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) os << ", ";
    if (dims[i] == kEmptyDimension)
      os << "EMPTY";
    else
      os << dims[i];
  }
  os << ']';
  return os.str();
}

}  // namespace

RetriesExhausted::RetriesExhausted(int step, std::vector<int> last_dims)
    : InconclusiveError("replacement retries exhausted at step t=" + std::to_string(step) +
                        " (dims so far " + dims_to_string(last_dims) + ")"),
      step_(step),
      last_dims_(std::move(last_dims)) {}

ReplacementSystem construct_general_position(const VarietyDescriptor& v, std::span<const HomogeneousPolynomial> q,
                                      const ReplacementOptions& options) {
  if (q.size() < 1) throw PreconditionError("replacement needs at least one hypersurface");
  const int degree = q.front().degree();
  for (const auto& h : q) {
    if (h.degree() != degree) throw PreconditionError("replacement needs hypersurfaces of equal degree");
    if (h.is_zero() || degree < 1) throw PreconditionError("replacement needs nonzero forms of degree >= 1");
  }

  const int k = estimate_dimension(v, 0, options.degree_cap).value();
  if (k == kEmptyDimension) throw PreconditionError("replacement on an empty variety");
  const int N = static_cast<int>(q.size()) - 1;
  if (N < k) throw PreconditionError("replacement needs N >= k");
  if (!certify_empty(v.intersected_with(q), options.degree_cap).empty())
    throw PreconditionError("hypersurfaces do not certifiably have empty common intersection with V");

  ReplacementSystem out;
  out.k = k;
  out.N = N;
  out.seed = options.seed;
  out.coefficients = RationalMatrix::Zero(k, N);
  out.P.push_back(q[0]);

  auto verified_dim = [&](int t) {
    DimensionEstimate est = estimate_dimension(v.intersected_with(out.P), 0, options.degree_cap);
    if (t == k + 1) {
      // The last step needs an exact emptiness certificate.
      return est.kind == DimensionEstimate::Kind::Empty ? kEmptyDimension : k + 1;
    }
    if (!est.stable()) return k + 1;
    return est.dimension;
  };

  int first = verified_dim(1);
  if (first > k - 1) throw PreconditionError("Q_1 does not cut V in codimension one");
  out.chain_dims.push_back(first);

  CoefficientSampler sampler(options.seed);
  for (int t = 2; t <= k + 1; ++t) {
    int bound = options.initial_bound;
    bool accepted = false;
    for (int attempt = 0; attempt < options.max_retries; ++attempt, bound *= 2) {
      HomogeneousPolynomial candidate(v.n_vars(), degree);
      std::vector<long> coeffs;
      for (int j = 2; j <= N - k + t; ++j) {
        long c = sampler.next(bound);
        coeffs.push_back(c);
        candidate += Rational(c) * q[j - 1];
      }
      if (candidate.is_zero()) continue;
      out.P.push_back(candidate);
      int dim = verified_dim(t);
      if (dim <= k - t) {
        for (std::size_t i = 0; i < coeffs.size(); ++i) out.coefficients(t - 2, static_cast<Eigen::Index>(i)) = coeffs[i];
        out.chain_dims.push_back(dim);
        out.bounds_used.push_back(bound);
        out.attempts.push_back(attempt + 1);
        accepted = true;
        break;
      }
      out.P.pop_back();
    }
    if (!accepted) throw RetriesExhausted(t, out.chain_dims);
  }
  return out;
}

}  // namespace smtkit
