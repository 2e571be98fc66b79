#include "smtkit/algebra/linalg.hpp"

#include <algorithm>

namespace smtkit {

namespace {

Integer lcm_of_denominators(const RationalMatrix& m, Eigen::Index row) {
  Integer l = 1;
  for (Eigen::Index c = 0; c < m.cols(); ++c) l = boost::multiprecision::lcm(l, denominator(m(row, c)));
  return l;
}

void make_primitive(SparseRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [col, v] : row) {
    g = boost::multiprecision::gcd(g, v);
    if (g == 1) break;
  }
  if (row.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [col, v] : row) v /= g;
}

// a*x - b*y on sparse rows.
SparseRow combine(const Integer& a, const SparseRow& x, const Integer& b, const SparseRow& y) {
  SparseRow out;
  out.reserve(x.size() + y.size());
  auto ix = x.begin();
  auto iy = y.begin();
  while (ix != x.end() || iy != y.end()) {
    if (iy == y.end() || (ix != x.end() && ix->first < iy->first)) {
      out.emplace_back(ix->first, a * ix->second);
      ++ix;
    } else if (ix == x.end() || iy->first < ix->first) {
      out.emplace_back(iy->first, -(b * iy->second));
      ++iy;
    } else {
      Integer v = a * ix->second - b * iy->second;
      if (v != 0) out.emplace_back(ix->first, std::move(v));
      ++ix;
      ++iy;
    }
  }
  return out;
}

}  // namespace

RankProfile rational_rank(const RationalMatrix& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  IntegerMatrix a(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    Integer scale = lcm_of_denominators(m, r);
    for (Eigen::Index c = 0; c < cols; ++c) {
      Rational v = m(r, c) * scale;
      a(r, c) = numerator(v);
    }
  }

  RankProfile profile;
  Integer prev_pivot = 1;
  Eigen::Index pivot_row = 0;
  for (Eigen::Index col = 0; col < cols && pivot_row < rows; ++col) {
    Eigen::Index found = -1;
    for (Eigen::Index r = pivot_row; r < rows; ++r)
      if (a(r, col) != 0) {
        found = r;
        break;
      }
    if (found < 0) continue;
    if (found != pivot_row) a.row(found).swap(a.row(pivot_row));
    const Integer pivot = a(pivot_row, col);
    for (Eigen::Index r = pivot_row + 1; r < rows; ++r) {
      for (Eigen::Index c = col + 1; c < cols; ++c)
        a(r, c) = (pivot * a(r, c) - a(r, col) * a(pivot_row, c)) / prev_pivot;
      a(r, col) = 0;
    }
    prev_pivot = pivot;
    profile.pivot_columns.push_back(static_cast<int>(col));
    ++pivot_row;
  }
  profile.rank = static_cast<int>(profile.pivot_columns.size());
  return profile;
}

SparseRow to_sparse_row(const HomogeneousPolynomial& p, const MonomialIndex& index) {
  Integer scale = 1;
  for (const auto& [mono, coeff] : p.terms()) scale = boost::multiprecision::lcm(scale, denominator(coeff));
  SparseRow row;
  row.reserve(p.term_count());
  for (const auto& [mono, coeff] : p.terms()) {
    Rational v = coeff * scale;
    row.emplace_back(index.index_of(mono), numerator(v));
  }
  std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  make_primitive(row);
  return row;
}

SparseRow RowSpace::reduce(SparseRow row) const {
  while (!row.empty()) {
    auto it = rows_.find(row.front().first);
    if (it == rows_.end()) break;
    const SparseRow& pivot = it->second;
    Integer g = boost::multiprecision::gcd(pivot.front().second, row.front().second);
    Integer a = pivot.front().second / g;
    Integer b = row.front().second / g;
    row = combine(a, row, b, pivot);
    make_primitive(row);
  }
  return row;
}

bool RowSpace::insert(SparseRow row) {
  if (full()) return false;
  make_primitive(row);
  row = reduce(std::move(row));
  if (row.empty()) return false;
  const int lead = row.front().first;
  rows_.emplace(lead, std::move(row));
  return true;
}

bool RowSpace::contains(SparseRow row) const {
  if (full()) return true;
  make_primitive(row);
  return reduce(std::move(row)).empty();
}

bool RowSpace::insert_unit(int column) { return insert(SparseRow{{column, Integer(1)}}); }

std::vector<int> RowSpace::pivot_columns() const {
  std::vector<int> out;
  out.reserve(rows_.size());
  for (const auto& [lead, row] : rows_) out.push_back(lead);
  return out;
}

}  // namespace smtkit
