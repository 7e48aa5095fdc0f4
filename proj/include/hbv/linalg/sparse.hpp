#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "hbv/linalg/matrix.hpp"

namespace hbv {

/// Sparse row: (column, value) pairs, strictly increasing columns, no zeros.
using SparseRow = std::vector<std::pair<std::uint32_t, Scalar>>;

/// Sorts, merges duplicate columns and drops zeros.
void normalize_row(SparseRow& row);

/// Row-compressed matrix.  Bar-complex differentials at the sizes we
/// handle have a handful of nonzeros per row, so they are stored this way
/// and densified only for small kernel computations.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(Field f, std::size_t rows, std::size_t cols);

  static SparseMatrix from_rows(Field f, std::size_t cols, std::vector<SparseRow> rows);
  static SparseMatrix from_dense(const Matrix& m);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const;
  const SparseRow& row(std::size_t r) const { return rows_[r]; }
  void set_row(std::size_t r, SparseRow row);

  SparseMatrix transpose() const;
  SparseMatrix operator*(const SparseMatrix& o) const;
  Vector operator*(const Vector& v) const;
  bool is_zero() const;
  Matrix to_dense() const;
  /// Submatrix on the given columns (renumbered in the given order).
  SparseMatrix select_columns(const std::vector<std::size_t>& columns) const;

 private:
  Field field_{};
  std::size_t cols_ = 0;
  std::vector<SparseRow> rows_;
};

/// Incremental row-echelon basis for sparse rows.  Rows are reduced by
/// their leading entries only; each stored row is monic at its pivot.
/// Prime fields run on machine residues internally.
class SparseEchelon {
 public:
  SparseEchelon(Field f, std::size_t cols);
  ~SparseEchelon();
  SparseEchelon(SparseEchelon&&) noexcept;
  SparseEchelon& operator=(SparseEchelon&&) noexcept;

  /// Returns true iff the row was independent of the rows inserted so far.
  bool insert(const SparseRow& row);
  std::size_t rank() const;
  /// Stored rows ordered by pivot column.
  std::vector<SparseRow> pivot_rows() const;
  std::vector<std::size_t> pivots() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::size_t rank(const SparseMatrix& m);
/// Same basis convention as the dense kernel_basis.
std::vector<Vector> kernel_basis(const SparseMatrix& m);

}  // namespace hbv
