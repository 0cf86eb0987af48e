#pragma once

#include <optional>
#include <vector>

#include "malcev/rational.hpp"

namespace malcev {

// Dense rational matrix with just enough linear algebra for the algebra
// module: reduced row echelon form, rank, nullspace, one-shot solve. All
// pivoting is first-nonzero, so results are deterministic.
class QMatrix {
public:
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

  static QMatrix from_rows(const std::vector<std::vector<Rat>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    QMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw domain_error("ragged matrix rows");
      for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
  }

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rat& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  // in place; returns the pivot column of each pivot row
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t pivot = row;
      while (pivot < rows_ && at(pivot, col) == 0) ++pivot;
      if (pivot == rows_) continue;
      if (pivot != row)
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(pivot, c), at(row, c));
      Rat inv = Rat(1) / at(row, col);
      for (std::size_t c = col; c < cols_; ++c) at(row, c) *= inv;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r == row || at(r, col) == 0) continue;
        Rat factor = at(r, col);
        for (std::size_t c = col; c < cols_; ++c) at(r, c) -= factor * at(row, c);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  std::size_t rank() const {
    QMatrix copy = *this;
    return copy.rref().size();
  }

  // canonical basis of Ax == 0: one vector per free column, ascending
  std::vector<std::vector<Rat>> nullspace() const {
    QMatrix copy = *this;
    std::vector<std::size_t> pivots = copy.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
      if (is_pivot[free_col]) continue;
      std::vector<Rat> v(cols_, Rat(0));
      v[free_col] = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -copy.at(r, free_col);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  // one solution of Ax == b (free variables zeroed), or nothing
  std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const {
    if (b.size() != rows_) throw domain_error("right-hand side has the wrong length");
    QMatrix aug(rows_, cols_ + 1);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
      aug.at(r, cols_) = b[r];
    }
    std::vector<std::size_t> pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;  // 0 == 1 row
    std::vector<Rat> x(cols_, Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, cols_);
    return x;
  }

private:
  std::size_t rows_, cols_;
  std::vector<Rat> a_;
};

inline std::size_t span_rank(const std::vector<std::vector<Rat>>& vecs) {
  if (vecs.empty()) return 0;
  return QMatrix::from_rows(vecs).rank();
}

inline bool in_span(const std::vector<Rat>& v, const std::vector<std::vector<Rat>>& basis) {
  if (basis.empty()) {
    for (const Rat& q : v)
      if (q != 0) return false;
    return true;
  }
  std::vector<std::vector<Rat>> all = basis;
  all.push_back(v);
  return span_rank(all) == span_rank(basis);
}

inline bool same_span(const std::vector<std::vector<Rat>>& a,
                      const std::vector<std::vector<Rat>>& b) {
  for (const auto& v : a)
    if (!in_span(v, b)) return false;
  for (const auto& v : b)
    if (!in_span(v, a)) return false;
  return true;
}

// canonical representative of a span: the nonzero rref rows
inline std::vector<std::vector<Rat>> span_basis(const std::vector<std::vector<Rat>>& vecs) {
  if (vecs.empty()) return {};
  QMatrix m = QMatrix::from_rows(vecs);
  std::vector<std::size_t> pivots = m.rref();
  std::vector<std::vector<Rat>> rows;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    std::vector<Rat> row(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) row[c] = m.at(r, c);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace malcev
