#include "hbv/linalg/complex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "hbv/errors.hpp"

namespace hbv {

Complex::Complex(Field f, int lo, int hi) : field_(f), lo_(lo), hi_(hi) {
  if (hi < lo) throw std::invalid_argument("empty complex window");
}

void Complex::set_space(int n, std::size_t dim, std::vector<int> weights) {
  if (weights.empty()) weights.assign(dim, 0);
  if (weights.size() != dim) throw std::invalid_argument("weight vector length differs from dimension");
  dims_[n] = dim;
  weights_[n] = std::move(weights);
  ranks_.clear();
  modular_ranks_.clear();
}

void Complex::set_differential(int n, SparseMatrix d) {
  if (!in_window(n)) throw WindowError("differential degree " + std::to_string(n) + " outside window");
  if (d.cols() != dimension(n) || d.rows() != dimension(n + 1))
    throw std::invalid_argument("differential d^" + std::to_string(n) + " has wrong shape");
  diffs_[n] = std::move(d);
  ranks_.clear();
  modular_ranks_.clear();
}

std::size_t Complex::dimension(int n) const {
  auto it = dims_.find(n);
  return it == dims_.end() ? 0 : it->second;
}

const std::vector<int>& Complex::weights(int n) const {
  static const std::vector<int> empty;
  auto it = weights_.find(n);
  return it == weights_.end() ? empty : it->second;
}

const SparseMatrix& Complex::differential(int n) const {
  auto it = diffs_.find(n);
  if (!in_window(n) || it == diffs_.end())
    throw WindowError("degree " + std::to_string(n) + " outside complex window [" + std::to_string(lo_) + ", " +
                      std::to_string(hi_) + "]");
  return it->second;
}

void Complex::check_square_zero() const {
  for (int n = lo_; n < hi_; ++n) {
    if (!(differential(n + 1) * differential(n)).is_zero())
      throw std::logic_error("d^" + std::to_string(n + 1) + " d^" + std::to_string(n) + " != 0");
  }
}

TaggedEchelon::TaggedEchelon(Field f, std::size_t length, std::size_t tag_length)
    : field_(f), length_(length), tag_length_(tag_length), lead_to_entry_(length, -1) {}

bool TaggedEchelon::insert(Vector v, Vector tag) {
  if (v.size() != length_ || tag.size() != tag_length_) throw std::invalid_argument("tagged echelon: bad lengths");
  for (std::size_t c = 0; c < length_; ++c) {
    if (v[c].is_zero()) continue;
    const std::int64_t e = lead_to_entry_[c];
    if (e < 0) {
      const Scalar inv = v[c].inverse();
      for (auto& x : v) x *= inv;
      for (auto& x : tag) x *= inv;
      lead_to_entry_[c] = static_cast<std::int64_t>(entries_.size());
      entries_.push_back({std::move(v), std::move(tag)});
      return true;
    }
    const Entry& en = entries_[static_cast<std::size_t>(e)];
    const Scalar factor = v[c];
    axpy(v, -factor, en.vec);
    axpy(tag, -factor, en.tag);
  }
  return false;
}

Vector TaggedEchelon::reduce(Vector& v) const {
  if (v.size() != length_) throw std::invalid_argument("tagged echelon: bad vector length");
  Vector tag = zero_vector(field_, tag_length_);
  for (std::size_t c = 0; c < length_; ++c) {
    if (v[c].is_zero()) continue;
    const std::int64_t e = lead_to_entry_[c];
    if (e < 0) continue;
    const Entry& en = entries_[static_cast<std::size_t>(e)];
    const Scalar factor = v[c];
    axpy(v, -factor, en.vec);
    axpy(tag, factor, en.tag);
  }
  return tag;
}

CohomologyGroup::CohomologyGroup(int degree, std::size_t space_dim, std::vector<Vector> reps, std::vector<int> weights,
                                 TaggedEchelon echelon)
    : degree_(degree),
      space_dim_(space_dim),
      reps_(std::move(reps)),
      weights_(std::move(weights)),
      echelon_(std::move(echelon)) {}

std::optional<Vector> CohomologyGroup::coordinates(const Vector& cocycle) const {
  Vector v = cocycle;
  Vector tag = echelon_.reduce(v);
  if (!is_zero(v)) return std::nullopt;
  return tag;
}

bool CohomologyGroup::is_coboundary(const Vector& v) const {
  auto c = coordinates(v);
  return c && is_zero(*c);
}

namespace {

Vector embed(const Vector& local, const std::vector<std::size_t>& positions, std::size_t dim, Field f) {
  Vector v = zero_vector(f, dim);
  for (std::size_t k = 0; k < positions.size(); ++k) v[positions[k]] = local[k];
  return v;
}

}  // namespace

CohomologyGroup cohomology_at(const Complex& c, int n) {
  const SparseMatrix& dn = c.differential(n);
  const Field f = c.field();
  const std::size_t dim = c.dimension(n);
  const std::vector<int>& w = c.weights(n);

  // Cocycles, block by internal weight so that representatives are homogeneous.
  std::set<int> ws(w.begin(), w.end());
  std::vector<Vector> cocycles;
  std::vector<int> cocycle_weights;
  for (int t : ws) {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < dim; ++i)
      if (w[i] == t) cols.push_back(i);
    for (auto& kv : kernel_basis(dn.select_columns(cols))) {
      cocycles.push_back(embed(kv, cols, dim, f));
      cocycle_weights.push_back(t);
    }
  }

  // Coboundaries: columns of d^{n-1}.
  std::vector<Vector> boundaries;
  std::size_t image_rank = 0;
  if (c.in_window(n - 1)) {
    const SparseMatrix dt = c.differential(n - 1).transpose();
    SparseEchelon img(f, dim);
    for (std::size_t i = 0; i < dt.rows(); ++i) img.insert(dt.row(i));
    image_rank = img.rank();
    for (const auto& r : img.pivot_rows()) {
      Vector v = zero_vector(f, dim);
      for (const auto& [col, val] : r) v[col] = val;
      boundaries.push_back(std::move(v));
    }
  }
  const std::size_t h = cocycles.size() - image_rank;

  TaggedEchelon ech(f, dim, h);
  for (auto& b : boundaries) ech.insert(std::move(b), zero_vector(f, h));
  std::vector<Vector> reps;
  std::vector<int> rep_weights;
  for (std::size_t i = 0; i < cocycles.size() && reps.size() < h; ++i) {
    if (ech.insert(cocycles[i], unit_vector(f, h, reps.size()))) {
      reps.push_back(cocycles[i]);
      rep_weights.push_back(cocycle_weights[i]);
    }
  }
  if (reps.size() != h) throw std::logic_error("cohomology basis selection inconsistent with ranks");
  return CohomologyGroup(n, dim, std::move(reps), std::move(rep_weights), std::move(ech));
}

std::size_t blocked_rank(const SparseMatrix& d, const std::vector<int>& col_w, const std::vector<int>& row_w) {
  if (col_w.size() != d.cols() || row_w.size() != d.rows()) return rank(d);
  std::map<int, std::size_t> block_size;
  std::vector<std::uint32_t> local(d.cols());
  for (std::size_t j = 0; j < d.cols(); ++j) local[j] = static_cast<std::uint32_t>(block_size[col_w[j]]++);
  std::map<int, SparseEchelon> blocks;
  std::map<int, bool> full;
  for (const auto& [w, sz] : block_size) {
    blocks.emplace(w, SparseEchelon(d.field(), sz));
    full[w] = false;
  }
  SparseRow r;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    const auto& row = d.row(i);
    if (row.empty()) continue;
    const int w = row_w[i];
    auto it = blocks.find(w);
    if (it == blocks.end()) throw std::logic_error("differential does not preserve weights");
    if (full[w]) continue;
    r.clear();
    for (const auto& [c, v] : row) {
      if (col_w[c] != w) throw std::logic_error("differential does not preserve weights");
      r.emplace_back(local[c], v);
    }
    it->second.insert(r);
    if (it->second.rank() == block_size[w]) full[w] = true;
  }
  std::size_t total = 0;
  for (const auto& [w, e] : blocks) total += e.rank();
  return total;
}

namespace {

constexpr std::uint64_t kModularPrime = 2147483647;

// Reduction of a rational matrix mod p; nullopt if some denominator vanishes mod p.
std::optional<SparseMatrix> reduce_mod(const SparseMatrix& d, std::uint64_t p) {
  const Field fp = Field::prime(p);
  std::vector<SparseRow> rows(d.rows());
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (const auto& [c, v] : d.row(i)) {
      const BigRational q = v.to_rational();
      if (boost::multiprecision::denominator(q) % p == 0) return std::nullopt;
      rows[i].emplace_back(c, Scalar(fp, q));
    }
    normalize_row(rows[i]);
  }
  return SparseMatrix::from_rows(fp, d.cols(), std::move(rows));
}

}  // namespace

std::optional<std::size_t> Complex::modular_rank(int n) const {
  if (!in_window(n)) return 0;
  if (auto it = modular_ranks_.find(n); it != modular_ranks_.end()) return it->second;
  std::optional<std::size_t> r;
  if (auto dp = reduce_mod(differential(n), kModularPrime)) r = blocked_rank(*dp, weights(n), weights(n + 1));
  modular_ranks_[n] = r;
  return r;
}

std::size_t Complex::rank_of(int n) const {
  if (auto it = ranks_.find(n); it != ranks_.end()) return it->second;
  const SparseMatrix& d = differential(n);
  std::size_t r = 0;
  bool known = false;
  if (field_.is_rational() && d.rows() * d.cols() > 4096) {
    // rank mod p <= rank over Q <= dim C^n - rank d^{n-1}, dim ker d^{n+1}
    if (auto rp = modular_rank(n)) {
      std::size_t upper = std::min(d.rows(), d.cols());
      if (in_window(n - 1)) {
        if (auto below = modular_rank(n - 1)) upper = std::min(upper, dimension(n) - *below);
      }
      if (in_window(n + 1)) {
        if (auto above = modular_rank(n + 1)) upper = std::min(upper, dimension(n + 1) - *above);
      }
      if (*rp == upper) {
        r = *rp;
        known = true;
      }
    }
  }
  if (!known) r = blocked_rank(d, weights(n), weights(n + 1));
  ranks_[n] = r;
  return r;
}

std::size_t cohomology_dimension(const Complex& c, int n) {
  const std::size_t kernel = c.dimension(n) - c.rank_of(n);
  const std::size_t image = c.in_window(n - 1) ? c.rank_of(n - 1) : 0;
  return kernel - image;
}

}  // namespace hbv
