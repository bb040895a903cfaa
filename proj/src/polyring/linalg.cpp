#include "torank/linalg.hpp"

#include <algorithm>

namespace torank::linalg {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, int rows) {
  Matrix m(rows, static_cast<int>(columns.size()));
  for (int j = 0; j < m.cols(); ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  }
  return m;
}

Vector Matrix::column(int j) const {
  Vector v(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i) v[static_cast<std::size_t>(i)] = (*this)(i, j);
  return v;
}

Vector Matrix::row(int i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i) * cols_,
                data_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_);
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw Error("matrix shape mismatch");
  Matrix out(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < other.cols_; ++j) {
        const Rational& b = other(k, j);
        if (b != 0) out(i, j) += a * b;
      }
    }
  }
  return out;
}

Vector Matrix::operator*(const Vector& v) const {
  if (static_cast<int>(v.size()) != cols_) throw Error("matrix-vector shape mismatch");
  Vector out(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      if (v[static_cast<std::size_t>(k)] != 0 && (*this)(i, k) != 0) out[static_cast<std::size_t>(i)] += (*this)(i, k) * v[static_cast<std::size_t>(k)];
    }
  }
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

Echelon row_reduce(Matrix m) {
  Echelon out;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pivot = -1;
    for (int i = row; i < m.rows(); ++i) {
      if (m(i, col) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) {
      for (int j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
    }
    const Rational inv = 1 / m(row, col);
    for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational factor = m(i, col);
      for (int j = col; j < m.cols(); ++j) {
        if (m(row, j) != 0) m(i, j) -= factor * m(row, j);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

int rank(const Matrix& m) { return row_reduce(m).rank(); }

std::vector<Vector> kernel(const Matrix& m) {
  const Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Vector> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    Vector v(static_cast<std::size_t>(m.cols()));
    v[static_cast<std::size_t>(free)] = 1;
    for (int r = 0; r < e.rank(); ++r) v[static_cast<std::size_t>(e.pivots[static_cast<std::size_t>(r)])] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const int n = m.rows();
  if (n == 0) return Matrix();
  Matrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const Echelon e = row_reduce(std::move(aug));
  if (e.rank() < n || e.pivots[static_cast<std::size_t>(n - 1)] != n - 1) return std::nullopt;
  Matrix out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = e.reduced(i, n + j);
  }
  return out;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

Vector IncrementalSpan::reduce(Vector v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Rational c = v[static_cast<std::size_t>(pivots_[r])];
    if (c == 0) continue;
    const Vector& row = rows_[r];
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (row[j] != 0) v[j] -= c * row[j];
    }
  }
  return v;
}

bool IncrementalSpan::contains(const Vector& v) const { return is_zero(reduce(v)); }

bool IncrementalSpan::add(const Vector& v) {
  if (static_cast<int>(v.size()) != dimension_) throw Error("vector dimension mismatch");
  Vector w = reduce(v);
  auto it = std::find_if(w.begin(), w.end(), [](const Rational& q) { return q != 0; });
  if (it == w.end()) return false;
  const int pivot = static_cast<int>(it - w.begin());
  const Rational inv = 1 / *it;
  for (Rational& q : w) q *= inv;
  // Keep earlier rows reduced against the new pivot.
  for (Vector& row : rows_) {
    const Rational c = row[static_cast<std::size_t>(pivot)];
    if (c == 0) continue;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (w[j] != 0) row[j] -= c * w[j];
    }
  }
  rows_.push_back(std::move(w));
  pivots_.push_back(pivot);
  return true;
}

}  // namespace torank::linalg
