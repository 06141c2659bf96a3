#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "normform/scalar.hpp"

namespace normform {

/// Dense row-major matrix over an exact field (Rational or Gaussian).
template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

template <class F>
using Vector = std::vector<F>;

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_zero(const Gaussian& g) { return g.is_zero(); }

/// Reduced row echelon form computed by exact Gauss–Jordan elimination.
template <class F>
struct Echelon {
  Matrix<F> reduced;
  std::vector<std::size_t> pivot_cols;
  [[nodiscard]] std::size_t rank() const { return pivot_cols.size(); }
};

template <class F>
Echelon<F> row_reduce(Matrix<F> m) {
  Echelon<F> e;
  std::size_t row = 0;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  F factor;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = rows;
    for (std::size_t r = row; r < rows; ++r) {
      if (!is_zero(m(r, col))) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < cols; ++c) std::swap(m(pivot, c), m(row, c));
    }
    const F inv = F(1) / m(row, col);
    for (std::size_t c = col; c < cols; ++c) {
      if (!is_zero(m(row, c))) m(row, c) *= inv;
    }
    std::vector<std::size_t> nz;
    for (std::size_t c = col; c < cols; ++c) {
      if (!is_zero(m(row, c))) nz.push_back(c);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      factor = m(r, col);
      for (const std::size_t c : nz) {
        F t = factor;
        t *= m(row, c);
        m(r, c) -= t;
      }
    }
    e.pivot_cols.push_back(col);
    ++row;
  }
  e.reduced = std::move(m);
  return e;
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return row_reduce(m).rank();
}

/// Basis of {v : m v = 0}.
template <class F>
std::vector<Vector<F>> nullspace(const Matrix<F>& m) {
  const auto e = row_reduce(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (const auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vector<F>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector<F> v(cols);
    v[free] = F(1);
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) {
      v[e.pivot_cols[i]] = -e.reduced(i, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

enum class SolveStatus { kUnique, kNonUnique, kInconsistent };

template <class F>
struct SolveResult {
  SolveStatus status = SolveStatus::kInconsistent;
  Vector<F> solution;                 // a particular solution when consistent
  std::vector<Vector<F>> kernel;      // witnesses of non-uniqueness
  std::optional<Vector<F>> cokernel;  // left-null witness of inconsistency
  std::size_t rank = 0;
};

/// Solves m x = b exactly, reporting rank deficiency and inconsistency.
template <class F>
SolveResult<F> solve(const Matrix<F>& m, const Vector<F>& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  // Augment with the right-hand side and an identity block that tracks row
  // operations, so an inconsistency comes with a left-null witness.
  Matrix<F> aug(rows, cols + 1 + rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) aug(r, c) = m(r, c);
    aug(r, cols) = b[r];
    aug(r, cols + 1 + r) = F(1);
  }
  // Only eliminate on the coefficient columns.
  Echelon<F> e;
  {
    Matrix<F> work = std::move(aug);
    std::size_t row = 0;
    F factor;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
      std::size_t pivot = rows;
      for (std::size_t r = row; r < rows; ++r) {
        if (!is_zero(work(r, col))) {
          pivot = r;
          break;
        }
      }
      if (pivot == rows) continue;
      if (pivot != row) {
        for (std::size_t c = 0; c < work.cols(); ++c) std::swap(work(pivot, c), work(row, c));
      }
      const F inv = F(1) / work(row, col);
      std::vector<std::size_t> nz;
      for (std::size_t c = col; c < work.cols(); ++c) {
        if (!is_zero(work(row, c))) {
          work(row, c) *= inv;
          nz.push_back(c);
        }
      }
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == row || is_zero(work(r, col))) continue;
        factor = work(r, col);
        for (const std::size_t c : nz) {
          F t = factor;
          t *= work(row, c);
          work(r, c) -= t;
        }
      }
      e.pivot_cols.push_back(col);
      ++row;
    }
    e.reduced = std::move(work);
  }
  SolveResult<F> out;
  out.rank = e.rank();
  for (std::size_t r = out.rank; r < rows; ++r) {
    if (!is_zero(e.reduced(r, cols))) {
      Vector<F> witness(rows);
      for (std::size_t c = 0; c < rows; ++c) witness[c] = e.reduced(r, cols + 1 + c);
      out.cokernel = std::move(witness);
      out.status = SolveStatus::kInconsistent;
      return out;
    }
  }
  out.solution.assign(cols, F());
  for (std::size_t i = 0; i < out.rank; ++i) out.solution[e.pivot_cols[i]] = e.reduced(i, cols);
  if (out.rank < cols) {
    std::vector<bool> is_pivot(cols, false);
    for (const auto c : e.pivot_cols) is_pivot[c] = true;
    for (std::size_t free = 0; free < cols; ++free) {
      if (is_pivot[free]) continue;
      Vector<F> v(cols);
      v[free] = F(1);
      for (std::size_t i = 0; i < out.rank; ++i) v[e.pivot_cols[i]] = -e.reduced(i, free);
      out.kernel.push_back(std::move(v));
    }
    out.status = SolveStatus::kNonUnique;
  } else {
    out.status = SolveStatus::kUnique;
  }
  return out;
}

}  // namespace normform
