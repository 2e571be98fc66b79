#pragma once

#include <map>
#include <utility>
#include <vector>

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include "smtkit/algebra/numeric.hpp"
#include "smtkit/algebra/polynomial.hpp"

namespace smtkit {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using IntegerMatrix = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;

struct RankProfile {
  int rank = 0;
  std::vector<int> pivot_columns;
};

/// Exact rank by fraction-free (Bareiss) elimination. Rows are first scaled to
/// integers. Pivot columns are the lexicographically first column basis, so
/// they do not depend on row order.
RankProfile rational_rank(const RationalMatrix& m);

/// Sparse integer row: (column, value) pairs sorted by column, no zeros.
using SparseRow = std::vector<std::pair<int, Integer>>;

/// Converts a polynomial to a primitive integer row in the given monomial
/// index (denominators cleared, content removed).
SparseRow to_sparse_row(const HomogeneousPolynomial& p, const MonomialIndex& index);

/// Incrementally built row space over Q. Rows are kept as primitive integer
/// vectors in semi-echelon form (distinct leading columns); reduction is
/// fraction-free with content removal after every step.
class RowSpace {
 public:
  explicit RowSpace(int columns) : columns_(columns) {}

  int columns() const { return columns_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  bool full() const { return rank() == columns_; }

  /// Adds a row; returns true when the rank increased.
  bool insert(SparseRow row);
  bool contains(SparseRow row) const;
  bool insert_unit(int column);

  std::vector<int> pivot_columns() const;

 private:
  SparseRow reduce(SparseRow row) const;

  int columns_;
  std::map<int, SparseRow> rows_;
};

}  // namespace smtkit
