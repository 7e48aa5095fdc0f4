#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hbv/linalg/scalar.hpp"

namespace hbv {

using Vector = std::vector<Scalar>;

Vector zero_vector(Field f, std::size_t n);
Vector unit_vector(Field f, std::size_t n, std::size_t i);
bool is_zero(const Vector& v);
Vector& axpy(Vector& y, const Scalar& a, const Vector& x);  // y += a x
Vector scaled(const Vector& v, const Scalar& a);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);

/// Dense row-major matrix over a single field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);

  static Matrix identity(Field f, std::size_t n);
  static Matrix from_rows(Field f, const std::vector<std::vector<long long>>& rows);
  static Matrix from_columns(Field f, std::size_t rows, const std::vector<Vector>& cols);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  Matrix transpose() const;
  bool is_zero() const;

  Matrix operator*(const Matrix& o) const;
  Vector operator*(const Vector& v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& a) const;

  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  Field field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix kronecker(const Matrix& a, const Matrix& b);

struct RrefResult {
  Matrix echelon;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/// Reduced row echelon form.  Pivot rule: leftmost nonzero column, topmost
/// candidate row.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
/// Null-space basis, one vector per free column in increasing order; the
/// vector for free column f has a 1 at f and zeros at the other free columns.
std::vector<Vector> kernel_basis(const Matrix& m);
/// Some x with m x = b, or nothing when b is outside the column space.
std::optional<Vector> solve(const Matrix& m, const Vector& b);
bool is_invertible(const Matrix& m);
/// Throws std::domain_error when singular.
Matrix inverse(const Matrix& m);
Scalar determinant(const Matrix& m);

}  // namespace hbv
