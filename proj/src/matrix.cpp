#include "hbv/linalg/matrix.hpp"

#include <stdexcept>

namespace hbv {

Vector zero_vector(Field f, std::size_t n) { return Vector(n, Scalar::zero(f)); }

Vector unit_vector(Field f, std::size_t n, std::size_t i) {
  Vector v = zero_vector(f, n);
  v.at(i) = Scalar::one(f);
  return v;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vector& axpy(Vector& y, const Scalar& a, const Vector& x) {
  if (y.size() != x.size()) throw std::invalid_argument("axpy: size mismatch");
  if (a.is_zero()) return y;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += a * x[i];
  return y;
}

Vector scaled(const Vector& v, const Scalar& a) {
  Vector r = v;
  for (auto& x : r) x *= a;
  return r;
}

Vector operator+(const Vector& a, const Vector& b) {
  Vector r = a;
  if (a.empty()) return b;
  return axpy(r, Scalar::one(a.front().field()), b);
}

Vector operator-(const Vector& a, const Vector& b) {
  if (b.empty()) return a;
  Vector r = a.empty() ? zero_vector(b.front().field(), b.size()) : a;
  return axpy(r, -Scalar::one(b.front().field()), b);
}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<std::vector<long long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(f, rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_columns(Field f, std::size_t rows, const std::vector<Vector>& cols) {
  Matrix m(f, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, c));
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  Matrix r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
    }
  return r;
}

Vector Matrix::operator*(const Vector& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
  Vector r = zero_vector(field_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!v[j].is_zero() && !(*this)(i, j).is_zero()) r[i] += (*this)(i, j) * v[j];
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: dimension mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o.scaled(-Scalar::one(field_)); }

Matrix Matrix::scaled(const Scalar& a) const {
  Matrix r = *this;
  for (auto& x : r.data_) x *= a;
  return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return r;
}

RrefResult rref(const Matrix& m) {
  RrefResult res{m, {}, 0};
  Matrix& e = res.echelon;
  const Field f = m.field();
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < e.cols() && lead_row < e.rows(); ++c) {
    std::size_t pr = lead_row;
    while (pr < e.rows() && e(pr, c).is_zero()) ++pr;
    if (pr == e.rows()) continue;
    if (pr != lead_row)
      for (std::size_t j = 0; j < e.cols(); ++j) std::swap(e(pr, j), e(lead_row, j));
    const Scalar inv = e(lead_row, c).inverse();
    for (std::size_t j = c; j < e.cols(); ++j) e(lead_row, j) *= inv;
    for (std::size_t i = 0; i < e.rows(); ++i) {
      if (i == lead_row || e(i, c).is_zero()) continue;
      const Scalar factor = e(i, c);
      for (std::size_t j = c; j < e.cols(); ++j)
        if (!e(lead_row, j).is_zero()) e(i, j) -= factor * e(lead_row, j);
    }
    res.pivots.push_back(c);
    ++lead_row;
  }
  res.rank = res.pivots.size();
  (void)f;
  return res;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

std::vector<Vector> kernel_basis(const Matrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t fcol = 0; fcol < m.cols(); ++fcol) {
    if (is_pivot[fcol]) continue;
    Vector v = unit_vector(m.field(), m.cols(), fcol);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.echelon(i, fcol);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const RrefResult r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  Vector x = zero_vector(m.field(), m.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.echelon(i, m.cols());
  return x;
}

bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::domain_error("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar::one(m.field());
  }
  const RrefResult r = rref(aug);
  if (r.rank < n || r.pivots[n - 1] != n - 1) throw std::domain_error("matrix is singular");
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.echelon(i, n + j);
  return inv;
}

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::domain_error("determinant of a non-square matrix");
  Matrix e = m;
  const std::size_t n = m.rows();
  Scalar det = Scalar::one(m.field());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pr = c;
    while (pr < n && e(pr, c).is_zero()) ++pr;
    if (pr == n) return Scalar::zero(m.field());
    if (pr != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(e(pr, j), e(c, j));
      det = -det;
    }
    det *= e(c, c);
    const Scalar inv = e(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (e(i, c).is_zero()) continue;
      const Scalar factor = e(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) e(i, j) -= factor * e(c, j);
    }
  }
  return det;
}

}  // namespace hbv
