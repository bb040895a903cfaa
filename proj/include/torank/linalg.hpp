#pragma once

// Dense linear algebra over Q. Everything here is exact; pivoting is always
// "first nonzero entry" so results are reproducible.

#include <optional>
#include <vector>

#include "torank/polyring.hpp"

namespace torank::linalg {

using Vector = std::vector<Rational>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
  static Matrix identity(int n);
  static Matrix from_columns(const std::vector<Vector>& columns, int rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  Vector column(int j) const;
  Vector row(int i) const;
  Matrix operator*(const Matrix& other) const;
  Vector operator*(const Vector& v) const;
  Matrix transposed() const;
  bool is_zero() const;
  bool operator==(const Matrix& other) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

struct Echelon {
  Matrix reduced;           // reduced row echelon form
  std::vector<int> pivots;  // pivot column of each nonzero row
  int rank() const { return static_cast<int>(pivots.size()); }
};

Echelon row_reduce(Matrix m);
int rank(const Matrix& m);

/// Basis of the right kernel, one vector per free column of the RREF.
std::vector<Vector> kernel(const Matrix& m);

std::optional<Matrix> inverse(const Matrix& m);

bool is_zero(const Vector& v);

/// Span of a growing set of vectors kept in reduced echelon form. `add`
/// reports whether the vector was independent of everything added before.
class IncrementalSpan {
 public:
  explicit IncrementalSpan(int dimension) : dimension_(dimension) {}

  bool add(const Vector& v);
  bool contains(const Vector& v) const;
  int rank() const { return static_cast<int>(rows_.size()); }
  int dimension() const { return dimension_; }

 private:
  Vector reduce(Vector v) const;

  int dimension_;
  std::vector<Vector> rows_;
  std::vector<int> pivots_;
};

}  // namespace torank::linalg
