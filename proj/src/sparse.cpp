#include "hbv/linalg/sparse.hpp"

#include <algorithm>
#include <stdexcept>
#include <variant>

namespace hbv {

void normalize_row(SparseRow& row) {
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow out;
  out.reserve(row.size());
  for (auto& e : row) {
    if (!out.empty() && out.back().first == e.first) {
      out.back().second += e.second;
    } else {
      out.push_back(std::move(e));
    }
  }
  std::erase_if(out, [](const auto& e) { return e.second.is_zero(); });
  row = std::move(out);
}

SparseMatrix::SparseMatrix(Field f, std::size_t rows, std::size_t cols) : field_(f), cols_(cols), rows_(rows) {}

SparseMatrix SparseMatrix::from_rows(Field f, std::size_t cols, std::vector<SparseRow> rows) {
  SparseMatrix m(f, 0, cols);
  m.rows_ = std::move(rows);
  for (auto& r : m.rows_) {
    normalize_row(r);
    if (!r.empty() && r.back().first >= cols) throw std::out_of_range("sparse row column out of range");
  }
  return m;
}

SparseMatrix SparseMatrix::from_dense(const Matrix& m) {
  SparseMatrix s(m.field(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) s.rows_[i].emplace_back(static_cast<std::uint32_t>(j), m(i, j));
  return s;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

void SparseMatrix::set_row(std::size_t r, SparseRow row) {
  normalize_row(row);
  if (!row.empty() && row.back().first >= cols_) throw std::out_of_range("sparse row column out of range");
  rows_.at(r) = std::move(row);
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(field_, cols_, rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [c, v] : rows_[i]) t.rows_[c].emplace_back(static_cast<std::uint32_t>(i), v);
  return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  if (cols_ != o.rows()) throw std::invalid_argument("sparse product: dimension mismatch");
  SparseMatrix r(field_, rows_.size(), o.cols_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    SparseRow acc;
    for (const auto& [k, a] : rows_[i])
      for (const auto& [j, b] : o.rows_[k]) acc.emplace_back(j, a * b);
    normalize_row(acc);
    r.rows_[i] = std::move(acc);
  }
  return r;
}

Vector SparseMatrix::operator*(const Vector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("sparse matrix-vector product: dimension mismatch");
  Vector out = zero_vector(field_, rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [c, a] : rows_[i])
      if (!v[c].is_zero()) out[i] += a * v[c];
  return out;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const SparseRow& r) { return r.empty(); });
}

Matrix SparseMatrix::to_dense() const {
  Matrix m(field_, rows_.size(), cols_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [c, v] : rows_[i]) m(i, c) = v;
  return m;
}

SparseMatrix SparseMatrix::select_columns(const std::vector<std::size_t>& columns) const {
  std::vector<std::int64_t> remap(cols_, -1);
  for (std::size_t k = 0; k < columns.size(); ++k) remap.at(columns[k]) = static_cast<std::int64_t>(k);
  SparseMatrix s(field_, 0, columns.size());
  for (const auto& r : rows_) {
    SparseRow nr;
    for (const auto& [c, v] : r)
      if (remap[c] >= 0) nr.emplace_back(static_cast<std::uint32_t>(remap[c]), v);
    if (!nr.empty()) {
      normalize_row(nr);
      s.rows_.push_back(std::move(nr));
    }
  }
  return s;
}

namespace {

// Dense accumulator scanned left to right; pivot rows are monic and their
// remaining entries lie strictly to the right of the pivot, so elimination
// only ever creates fill to the right of the scan position.
class PrimeEngine {
 public:
  PrimeEngine(Field f, std::size_t cols)
      : field_(f), p_(f.characteristic()), acc_(cols, 0), pivot_of_(cols, -1) {
    const std::uint64_t pm = p_ - 1;
    limit_ = ~std::uint64_t{0} - pm * pm;
  }

  bool insert(const SparseRow& row) {
    if (row.empty()) return false;
    std::size_t lo = row.front().first, hi = row.back().first;
    if (hi >= acc_.size()) throw std::out_of_range("echelon row column out of range");
    for (const auto& [c, v] : row) acc_[c] = static_cast<std::uint64_t>(v.residue());
    for (std::size_t c = lo; c <= hi; ++c) {
      if (acc_[c] == 0) continue;
      const std::uint64_t v = acc_[c] % p_;
      acc_[c] = 0;
      if (v == 0) continue;
      const std::int64_t pi = pivot_of_[c];
      if (pi < 0) {
        Row fresh;
        const std::uint64_t inv = inverse(v);
        fresh.emplace_back(static_cast<std::uint32_t>(c), 1U);
        for (std::size_t k = c + 1; k <= hi; ++k) {
          if (acc_[k] == 0) continue;
          const std::uint64_t r = acc_[k] % p_;
          acc_[k] = 0;
          if (r) fresh.emplace_back(static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(r * inv % p_));
        }
        pivot_of_[c] = static_cast<std::int64_t>(rows_.size());
        rows_.push_back(std::move(fresh));
        return true;
      }
      const std::uint64_t factor = p_ - v;
      const Row& prow = rows_[static_cast<std::size_t>(pi)];
      for (std::size_t k = 1; k < prow.size(); ++k) {
        std::uint64_t& a = acc_[prow[k].first];
        if (a > limit_) a %= p_;
        a += factor * prow[k].second;
      }
      if (prow.back().first > hi) hi = prow.back().first;
    }
    return false;
  }

  std::size_t rank() const { return rows_.size(); }

  std::vector<SparseRow> pivot_rows() const {
    std::vector<SparseRow> out;
    for (std::size_t c = 0; c < pivot_of_.size(); ++c) {
      if (pivot_of_[c] < 0) continue;
      SparseRow r;
      for (const auto& [col, v] : rows_[static_cast<std::size_t>(pivot_of_[c])])
        r.emplace_back(col, Scalar(field_, static_cast<std::int64_t>(v)));
      out.push_back(std::move(r));
    }
    return out;
  }

  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < pivot_of_.size(); ++c)
      if (pivot_of_[c] >= 0) out.push_back(c);
    return out;
  }

 private:
  using Row = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

  std::uint64_t inverse(std::uint64_t a) const {
    std::uint64_t r = 1, base = a % p_, e = p_ - 2;
    while (e) {
      if (e & 1U) r = r * base % p_;
      base = base * base % p_;
      e >>= 1U;
    }
    return r;
  }

  Field field_;
  std::uint64_t p_;
  std::uint64_t limit_;
  std::vector<std::uint64_t> acc_;
  std::vector<std::int64_t> pivot_of_;
  std::vector<Row> rows_;
};

class RationalEngine {
 public:
  RationalEngine(Field f, std::size_t cols)
      : field_(f), acc_(cols, Scalar::zero(f)), live_(cols, 0), pivot_of_(cols, -1) {}

  bool insert(const SparseRow& row) {
    if (row.empty()) return false;
    std::size_t lo = row.front().first, hi = row.back().first;
    if (hi >= acc_.size()) throw std::out_of_range("echelon row column out of range");
    for (const auto& [c, v] : row) {
      acc_[c] = v;
      live_[c] = 1;
    }
    for (std::size_t c = lo; c <= hi; ++c) {
      if (!live_[c]) continue;
      live_[c] = 0;
      if (acc_[c].is_zero()) continue;
      const std::int64_t pi = pivot_of_[c];
      if (pi < 0) {
        SparseRow fresh;
        const Scalar inv = acc_[c].inverse();
        fresh.emplace_back(static_cast<std::uint32_t>(c), Scalar::one(field_));
        acc_[c] = Scalar::zero(field_);
        for (std::size_t k = c + 1; k <= hi; ++k) {
          if (!live_[k]) continue;
          live_[k] = 0;
          if (!acc_[k].is_zero()) fresh.emplace_back(static_cast<std::uint32_t>(k), acc_[k] * inv);
          acc_[k] = Scalar::zero(field_);
        }
        pivot_of_[c] = static_cast<std::int64_t>(rows_.size());
        rows_.push_back(std::move(fresh));
        return true;
      }
      const Scalar factor = -acc_[c];
      acc_[c] = Scalar::zero(field_);
      const SparseRow& prow = rows_[static_cast<std::size_t>(pi)];
      for (std::size_t k = 1; k < prow.size(); ++k) {
        const auto& [col, val] = prow[k];
        if (live_[col]) {
          acc_[col] += factor * val;
        } else {
          acc_[col] = factor * val;
          live_[col] = 1;
        }
      }
      if (prow.back().first > hi) hi = prow.back().first;
    }
    return false;
  }

  std::size_t rank() const { return rows_.size(); }

  std::vector<SparseRow> pivot_rows() const {
    std::vector<SparseRow> out;
    for (std::size_t c = 0; c < pivot_of_.size(); ++c)
      if (pivot_of_[c] >= 0) out.push_back(rows_[static_cast<std::size_t>(pivot_of_[c])]);
    return out;
  }

  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < pivot_of_.size(); ++c)
      if (pivot_of_[c] >= 0) out.push_back(c);
    return out;
  }

 private:
  Field field_;
  std::vector<Scalar> acc_;
  std::vector<char> live_;
  std::vector<std::int64_t> pivot_of_;
  std::vector<SparseRow> rows_;
};

}  // namespace

struct SparseEchelon::Impl {
  std::variant<PrimeEngine, RationalEngine> engine;
};

SparseEchelon::SparseEchelon(Field f, std::size_t cols)
    : impl_(f.is_rational() ? std::make_unique<Impl>(Impl{RationalEngine(f, cols)})
                            : std::make_unique<Impl>(Impl{PrimeEngine(f, cols)})) {}

SparseEchelon::~SparseEchelon() = default;
SparseEchelon::SparseEchelon(SparseEchelon&&) noexcept = default;
SparseEchelon& SparseEchelon::operator=(SparseEchelon&&) noexcept = default;

bool SparseEchelon::insert(const SparseRow& row) {
  return std::visit([&](auto& e) { return e.insert(row); }, impl_->engine);
}

std::size_t SparseEchelon::rank() const {
  return std::visit([](const auto& e) { return e.rank(); }, impl_->engine);
}

std::vector<SparseRow> SparseEchelon::pivot_rows() const {
  return std::visit([](const auto& e) { return e.pivot_rows(); }, impl_->engine);
}

std::vector<std::size_t> SparseEchelon::pivots() const {
  return std::visit([](const auto& e) { return e.pivots(); }, impl_->engine);
}

std::size_t rank(const SparseMatrix& m) {
  SparseEchelon e(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    e.insert(m.row(i));
    if (e.rank() == m.cols()) break;
  }
  return e.rank();
}

std::vector<Vector> kernel_basis(const SparseMatrix& m) {
  SparseEchelon e(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) e.insert(m.row(i));
  const auto prs = e.pivot_rows();
  Matrix reduced(m.field(), prs.size(), m.cols());
  for (std::size_t i = 0; i < prs.size(); ++i)
    for (const auto& [c, v] : prs[i]) reduced(i, c) = v;
  return kernel_basis(reduced);
}

}  // namespace hbv
