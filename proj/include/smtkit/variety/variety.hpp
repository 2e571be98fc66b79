#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "smtkit/algebra/linalg.hpp"
#include "smtkit/algebra/polynomial.hpp"

namespace smtkit {

/// Dimension of the empty set in every dimension list.
inline constexpr int kEmptyDimension = -1;

/// dim of the degree-m piece of the ideal generated by gens: the rank of
/// {x^a * g : g in gens, |a| = m - deg g} in the degree-m monomial basis.
long ideal_graded_dim(std::span<const HomogeneousPolynomial> gens, int n_vars, int m);

/// Row space of the degree piece of the ideal, in the given monomial index.
RowSpace ideal_row_space(std::span<const HomogeneousPolynomial> gens, const MonomialIndex& index);

/// Default degree cap max(sum deg g_i, 2 * max deg + n + 2).
int default_degree_cap(int n, std::span<const HomogeneousPolynomial> gens);

/// Closed subscheme of P^n cut out by a list of homogeneous generators, with
/// a write-once cache of Hilbert function values of the generated ideal.
class VarietyDescriptor {
 public:
  VarietyDescriptor(int n, std::vector<HomogeneousPolynomial> generators);
  static VarietyDescriptor projective_space(int n) { return VarietyDescriptor(n, {}); }

  int n() const { return n_; }
  int n_vars() const { return n_ + 1; }
  const std::vector<HomogeneousPolynomial>& generators() const { return generators_; }

  /// H(m) = C(m+n, n) - dim I_m. Cached.
  long hilbert(int m) const;

  /// Cached H values seen so far (read-only snapshot).
  std::map<int, long> cached_values() const;

  int default_degree_cap() const { return smtkit::default_degree_cap(n_, generators_); }

  /// The subscheme cut by the current generators together with extra ones.
  VarietyDescriptor intersected_with(std::span<const HomogeneousPolynomial> extra) const;

 private:
  struct Cache {
    mutable std::mutex mutex;
    std::map<int, long> values;
  };

  int n_;
  std::vector<HomogeneousPolynomial> generators_;
  std::shared_ptr<Cache> cache_;
};

long hilbert_function(const VarietyDescriptor& v, int m);

enum class EmptinessKind { CertifiedEmpty, NonemptyLikely, Inconclusive };

struct EmptinessVerdict {
  EmptinessKind kind = EmptinessKind::Inconclusive;
  int certificate_degree = 0;  // m* with H(m*) = 0, for CertifiedEmpty
  int cap = 0;                 // degree cap that was used
  std::vector<long> top_window;  // H values on the top window when not certified

  bool empty() const { return kind == EmptinessKind::CertifiedEmpty; }
};

std::string to_string(EmptinessKind kind);

/// Emptiness of the zero set of the union of the generator lists. m_cap <= 0
/// selects the default cap.
EmptinessVerdict certify_empty(int n, std::span<const std::vector<HomogeneousPolynomial>> gen_sets,
                               int m_cap = 0);
EmptinessVerdict certify_empty(const VarietyDescriptor& v, int m_cap = 0);

struct DimensionEstimate {
  enum class Kind { Empty, Dimension, Unstable };
  Kind kind = Kind::Unstable;
  int dimension = kEmptyDimension;  // kEmptyDimension for Empty and Unstable
  Integer degree = 0;               // leading finite difference, for Dimension
  int cap = 0;
  int window = 0;
  std::vector<long> values;  // H on degrees cap-window+1 .. cap

  bool stable() const { return kind != Kind::Unstable; }
  /// kEmptyDimension for Empty; throws InconclusiveError when unstable.
  int value() const;
};

/// Dimension from the eventual finite differences of H over the top window of
/// degrees below the cap. window <= 0 selects n+3; cap <= 0 the default cap.
DimensionEstimate estimate_dimension(const VarietyDescriptor& v, int window = 0, int cap = 0);

/// Degree of a nonempty variety: the k-th finite difference of H on the
/// stabilized window. Throws InconclusiveError on unstable data.
long variety_degree(const VarietyDescriptor& v, int window = 0, int cap = 0);

struct SubsetCertificate {
  std::vector<int> subset;  // 0-based hypersurface indices
  EmptinessVerdict verdict;
};

struct PositionReport {
  enum class Verdict { Holds, Fails, Inconclusive };
  int N = 0;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<std::vector<int>> witness;  // first non-empty subset, lexicographic order
  std::vector<SubsetCertificate> certificates;
};

std::string to_string(PositionReport::Verdict verdict);

/// N-subgeneral position of Q with respect to V: every (N+1)-subset of Q meets
/// V emptily. Subsets are examined in lexicographic order; the first subset
/// whose intersection is (likely) nonempty is returned as witness.
PositionReport check_position(const VarietyDescriptor& v, std::span<const HomogeneousPolynomial> q, int N,
                              int m_cap = 0);

struct ReplacementOptions {
  std::uint64_t seed = 0;
  int max_retries = 8;
  int initial_bound = 10;  // coefficients drawn from [-B, B] \ {0}; B doubles per retry
  int degree_cap = 0;
};

/// Output of the general-position replacement: P_1 = Q_1 and
/// P_t = sum_{j=2}^{N-k+t} c_{tj} Q_j for t = 2..k+1 (1-based as in the
/// construction), with the verified dimensions of (P_1 ∩ ... ∩ P_t) ∩ V.
struct ReplacementSystem {
  int k = 0;
  int N = 0;
  std::vector<HomogeneousPolynomial> P;
  RationalMatrix coefficients;  // row t-2, column j-2; zero where j > N-k+t
  std::vector<int> chain_dims;  // entry t-1 is the verified dim for step t
  std::vector<int> bounds_used;  // coefficient bound B that succeeded at each step t >= 2
  std::vector<int> attempts;     // candidates tried at each step t >= 2
  std::uint64_t seed = 0;
};

class RetriesExhausted : public InconclusiveError {
 public:
  RetriesExhausted(int step, std::vector<int> last_dims);
  int step() const { return step_; }
  const std::vector<int>& last_dims() const { return last_dims_; }

 private:
  int step_;
  std::vector<int> last_dims_;
};

/// Replaces N+1 equal-degree hypersurfaces with empty common intersection on
/// V by k+1 hypersurfaces in general position on V. Every step is verified by
/// estimate_dimension; the last one by an emptiness certificate.
ReplacementSystem construct_general_position(const VarietyDescriptor& v, std::span<const HomogeneousPolynomial> q,
                                      const ReplacementOptions& options = {});

/// Deterministic coefficient stream used by the replacement construction.
class CoefficientSampler {
 public:
  explicit CoefficientSampler(std::uint64_t seed);
  /// Uniform over [-bound, bound] \ {0}.
  long next(int bound);

 private:
  std::mt19937_64 engine_;
};

/// Lexicographic enumeration of the size-r subsets of {0..n-1}.
std::vector<std::vector<int>> subsets_of_size(int n, int r);

}  // namespace smtkit
