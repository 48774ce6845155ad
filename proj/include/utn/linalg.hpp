#ifndef UTN_LINALG_HPP
#define UTN_LINALG_HPP

// Sparse exact row reduction over a FieldSpec.

#include <algorithm>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace utn {

/// Sorted by column, no stored zeros.
using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

namespace detail {

/// x + c*y for sorted sparse vectors.
inline SparseVector axpy(const SparseVector& x, const Scalar& c, const SparseVector& y) {
  SparseVector out;
  out.reserve(x.size() + y.size());
  auto ix = x.begin();
  auto iy = y.begin();
  while (ix != x.end() || iy != y.end()) {
    if (iy == y.end() || (ix != x.end() && ix->first < iy->first)) {
      out.push_back(*ix++);
    } else if (ix == x.end() || iy->first < ix->first) {
      out.emplace_back(iy->first, c * iy->second);
      ++iy;
    } else {
      Scalar s = ix->second + c * iy->second;
      if (!s.is_zero()) out.emplace_back(ix->first, std::move(s));
      ++ix;
      ++iy;
    }
  }
  return out;
}

inline void scale(SparseVector& v, const Scalar& c) {
  for (auto& entry : v) entry.second *= c;
}

}  // namespace detail

inline SparseVector make_sparse(std::map<std::size_t, Scalar> entries) {
  SparseVector out;
  out.reserve(entries.size());
  for (auto& [col, value] : entries)
    if (!value.is_zero()) out.emplace_back(col, std::move(value));
  return out;
}

/// Row-echelon basis built one row at a time. Every stored row is monic at its
/// pivot and has no entries left of it.
class EchelonBasis {
 public:
  /// Returns true when the row was independent of the rows inserted so far.
  bool insert(SparseVector row) {
    while (!row.empty()) {
      auto it = rows_.find(row.front().first);
      if (it == rows_.end()) {
        detail::scale(row, row.front().second.inv());
        std::size_t pivot = row.front().first;
        rows_.emplace(pivot, std::move(row));
        return true;
      }
      row = detail::axpy(row, -row.front().second, it->second);
    }
    return false;
  }

  std::size_t rank() const { return rows_.size(); }

  bool is_pivot(std::size_t column) const { return rows_.count(column) != 0; }

  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    out.reserve(rows_.size());
    for (const auto& entry : rows_) out.push_back(entry.first);
    return out;
  }

  /// Remainder of v after eliminating every pivot column.
  SparseVector reduce(SparseVector v) const {
    std::size_t start = 0;
    for (;;) {
      auto hit = std::find_if(v.begin() + static_cast<std::ptrdiff_t>(start), v.end(),
                              [&](const auto& e) { return rows_.count(e.first) != 0; });
      if (hit == v.end()) return v;
      std::size_t column = hit->first;
      Scalar c = -hit->second;
      start = static_cast<std::size_t>(hit - v.begin());
      v = detail::axpy(v, c, rows_.at(column));
    }
  }

  /// Reduced row-echelon rows, ordered by pivot column.
  std::vector<SparseVector> reduced_rows() const {
    std::map<std::size_t, SparseVector> done;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      const SparseVector& row = it->second;
      SparseVector acc = row;
      // Rows already in `done` carry no pivot column but their own, so one pass
      // over the original entries clears every later pivot.
      for (const auto& [col, value] : row) {
        auto found = done.find(col);
        if (found != done.end()) acc = detail::axpy(acc, -value, found->second);
      }
      done.emplace(it->first, std::move(acc));
    }
    std::vector<SparseVector> out;
    out.reserve(done.size());
    for (auto& entry : done) out.push_back(std::move(entry.second));
    return out;
  }

 private:
  std::map<std::size_t, SparseVector> rows_;
};

/// Basis of {x : R x = 0} for RREF rows R over `columns` unknowns, itself
/// returned in reduced row-echelon form.
inline std::vector<SparseVector> nullspace(const std::vector<SparseVector>& rref, std::size_t columns,
                                           FieldSpec field) {
  std::vector<bool> pivot(columns, false);
  for (const auto& row : rref) pivot[row.front().first] = true;
  // Column f of the free part: pivot p receives -R_p[f].
  std::map<std::size_t, std::map<std::size_t, Scalar>> by_free;
  for (std::size_t f = 0; f < columns; ++f)
    if (!pivot[f]) by_free[f].emplace(f, Scalar::one(field));
  for (const auto& row : rref) {
    std::size_t p = row.front().first;
    for (std::size_t k = 1; k < row.size(); ++k) by_free[row[k].first].emplace(p, -row[k].second);
  }
  EchelonBasis basis;
  for (auto& entry : by_free) basis.insert(make_sparse(std::move(entry.second)));
  return basis.reduced_rows();
}

}  // namespace utn

#endif  // UTN_LINALG_HPP
