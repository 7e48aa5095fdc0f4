#include "hbv/hochschild/bar.hpp"

#include <cstdlib>
#include <string>

#include "hbv/errors.hpp"

namespace hbv {

std::size_t default_budget() {
  if (const char* env = std::getenv("HBV_BUDGET")) {
    try {
      const long long v = std::stoll(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw ValidationError(std::string("HBV_BUDGET is not a positive integer: '") + env + "'");
  }
  return 20000;
}

namespace {

std::size_t first_unit_index(const FDAlgebra& a) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (!a.unit()[i].is_zero()) return i;
  throw ValidationError("algebra: zero unit");
}

inline bool odd(long long x) { return (x & 1) != 0; }

}  // namespace

std::size_t BarComplex::predicted_dimension(const FDAlgebra& a, int n) {
  std::size_t d = a.dim();
  for (int i = 0; i < n; ++i) {
    d *= a.dim() - 1;
    if (d > (std::size_t{1} << 40)) return d;
  }
  return d;
}

BarComplex::BarComplex(const FDAlgebra& a, Coefficients coeff, int max_degree, std::size_t budget)
    : a_(a), coeff_(coeff), N_(max_degree), complex_(a.field(), 0, std::max(max_degree, 0)) {
  if (max_degree < 0) throw std::invalid_argument("negative truncation degree");
  if (a.dim() < 2) throw PreconditionError("bar complex needs dim Abar >= 1");
  std::size_t largest = 0;
  for (int n = 0; n <= N_; ++n) largest = std::max(largest, predicted_dimension(a, n));
  if (largest > budget) throw BudgetError(largest, budget);

  const Field f = a.field();
  unit_index_ = first_unit_index(a);
  const Scalar uj_inv = a.unit()[unit_index_].inverse();
  std::vector<std::int64_t> red_of(a.dim(), -1);
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (i != unit_index_) {
      red_of[i] = static_cast<std::int64_t>(rbasis_.size());
      rbasis_.push_back(i);
    }
  // e_j = u_j^{-1} (1 - sum_{i != j} u_i e_i): reduce e_j to -sum u_i/u_j e_i
  proj_.assign(a.dim(), {});
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (k != unit_index_) {
      proj_[k].emplace_back(static_cast<std::uint32_t>(red_of[k]), Scalar::one(f));
      continue;
    }
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (i != unit_index_ && !a.unit()[i].is_zero())
        proj_[k].emplace_back(static_cast<std::uint32_t>(red_of[i]), -(a.unit()[i] * uj_inv));
  }
  pow_.assign(static_cast<std::size_t>(N_) + 2, 1);
  for (std::size_t i = 1; i < pow_.size(); ++i) pow_[i] = pow_[i - 1] * rbasis_.size();

  if (a.group()) {
    class_of_ = a.group()->class_index();
  }
  for (int n = 0; n <= N_ + 1; ++n) complex_.set_space(n, dimension(n), weights(n));
  for (int n = 0; n <= N_; ++n)
    complex_.set_differential(n, coeff_ == Coefficients::Self ? build_self(n) : build_dual(n));
  complex_.check_square_zero();
}

std::size_t BarComplex::dimension(int n) const {
  if (n < 0 || static_cast<std::size_t>(n) >= pow_.size()) return 0;
  return pow_[static_cast<std::size_t>(n)] * a_.dim();
}

std::size_t BarComplex::index(const std::vector<std::size_t>& tuple, std::size_t m) const {
  std::size_t t = 0;
  for (auto r : tuple) t = t * rbasis_.size() + r;
  return t * a_.dim() + m;
}

void BarComplex::decode(int n, std::size_t idx, std::vector<std::size_t>& tuple, std::size_t& m) const {
  m = idx % a_.dim();
  std::size_t t = idx / a_.dim();
  tuple.assign(static_cast<std::size_t>(n), 0);
  for (int i = n - 1; i >= 0; --i) {
    tuple[static_cast<std::size_t>(i)] = t % rbasis_.size();
    t /= rbasis_.size();
  }
}

int BarComplex::tuple_degree(const std::vector<std::size_t>& tuple) const {
  int d = 0;
  for (auto r : tuple) d += a_.degree(rbasis_[r]);
  return d;
}

int BarComplex::internal_degree(int n, std::size_t idx) const {
  std::vector<std::size_t> tuple;
  std::size_t m = 0;
  decode(n, idx, tuple, m);
  const int dm = a_.degree(m);
  return (coeff_ == Coefficients::Self ? dm : -dm) - tuple_degree(tuple);
}

std::vector<int> BarComplex::weights(int n) const {
  const std::size_t dim = dimension(n);
  std::vector<int> w(dim, 0);
  std::vector<std::size_t> tuple;
  std::size_t m = 0;
  if (!class_of_.empty()) {
    const FiniteGroup& g = *a_.group();
    for (std::size_t i = 0; i < dim; ++i) {
      decode(n, i, tuple, m);
      std::size_t prod = g.identity();
      for (auto r : tuple) prod = g.mul(prod, rbasis_[r]);
      const std::size_t key = coeff_ == Coefficients::Self ? g.mul(g.inverse(prod), m) : g.mul(m, prod);
      w[i] = static_cast<int>(class_of_[key]);
    }
  } else if (a_.is_graded()) {
    for (std::size_t i = 0; i < dim; ++i) w[i] = internal_degree(n, i);
  }
  return w;
}

SparseMatrix BarComplex::build_self(int n) const {
  // rows: C^{n+1}, columns: C^n
  const std::size_t L = static_cast<std::size_t>(n) + 1;
  const std::size_t dimA = a_.dim();
  const std::size_t rdim = rbasis_.size();
  const Field f = a_.field();
  // left[x*dimA + m]: (m', c) with (e_x e_m')_m = c ; right similarly for e_m' e_x
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> left(dimA * dimA), right(dimA * dimA);
  for (std::size_t x = 0; x < dimA; ++x)
    for (std::size_t mp = 0; mp < dimA; ++mp) {
      for (const auto& [m, c] : a_.product(x, mp)) left[x * dimA + m].emplace_back(mp, c);
      for (const auto& [m, c] : a_.product(mp, x)) right[x * dimA + m].emplace_back(mp, c);
    }
  std::vector<SparseRow> pprod(rdim * rdim);
  for (std::size_t r = 0; r < rdim; ++r)
    for (std::size_t s = 0; s < rdim; ++s) {
      SparseRow acc;
      for (const auto& [k, c] : a_.product(rbasis_[r], rbasis_[s]))
        for (const auto& [q, d] : proj_[k]) acc.emplace_back(q, c * d);
      normalize_row(acc);
      pprod[r * rdim + s] = std::move(acc);
    }
  const std::size_t rows = dimension(n + 1);
  std::vector<SparseRow> out(rows);
  std::vector<std::size_t> a, src;
  std::size_t m = 0;
  for (std::size_t row = 0; row < rows; ++row) {
    decode(n + 1, row, a, m);
    SparseRow& R = out[row];
    // a_1 f(a_2..)
    {
      src.assign(a.begin() + 1, a.end());
      const int tdeg = tuple_degree(src);
      const std::size_t base = index(src, 0);
      const int d1 = a_.degree(rbasis_[a[0]]);
      for (const auto& [mp, c] : left[rbasis_[a[0]] * dimA + m]) {
        const int t = a_.degree(mp) - tdeg;
        R.emplace_back(static_cast<std::uint32_t>(base + mp), odd(static_cast<long long>(d1) * t) ? -c : c);
      }
    }
    // (-1)^i f(.. a_i a_{i+1} ..)
    for (std::size_t i = 1; i < L; ++i) {
      const SparseRow& pr = pprod[a[i - 1] * rdim + a[i]];
      if (pr.empty()) continue;
      src.assign(a.begin(), a.end());
      src.erase(src.begin() + static_cast<std::ptrdiff_t>(i));
      for (const auto& [r, c] : pr) {
        src[i - 1] = r;
        R.emplace_back(static_cast<std::uint32_t>(index(src, m)), odd(static_cast<long long>(i)) ? -c : c);
      }
    }
    // (-1)^{n+1} f(a_1..a_n) a_{n+1}
    {
      src.assign(a.begin(), a.end() - 1);
      const std::size_t base = index(src, 0);
      for (const auto& [mp, c] : right[rbasis_[a[L - 1]] * dimA + m])
        R.emplace_back(static_cast<std::uint32_t>(base + mp), odd(static_cast<long long>(L)) ? -c : c);
    }
  }
  return SparseMatrix::from_rows(f, dimension(n), std::move(out));
}

SparseMatrix BarComplex::build_dual(int n) const {
  // row (a_1..a_L; m) is the expansion of b(e_m[a_1|..|a_L]) in chains of length n
  const std::size_t L = static_cast<std::size_t>(n) + 1;
  const std::size_t rdim = rbasis_.size();
  const Field f = a_.field();
  std::vector<SparseRow> pprod(rdim * rdim);
  for (std::size_t r = 0; r < rdim; ++r)
    for (std::size_t s = 0; s < rdim; ++s) {
      SparseRow acc;
      for (const auto& [k, c] : a_.product(rbasis_[r], rbasis_[s]))
        for (const auto& [q, d] : proj_[k]) acc.emplace_back(q, c * d);
      normalize_row(acc);
      pprod[r * rdim + s] = std::move(acc);
    }
  const std::size_t rows = dimension(n + 1);
  std::vector<SparseRow> out(rows);
  std::vector<std::size_t> a, src;
  std::size_t m = 0;
  for (std::size_t row = 0; row < rows; ++row) {
    decode(n + 1, row, a, m);
    SparseRow& R = out[row];
    // e_m a_1 [a_2..]
    {
      src.assign(a.begin() + 1, a.end());
      const std::size_t base = index(src, 0);
      for (const auto& [k, c] : a_.product(m, rbasis_[a[0]])) R.emplace_back(static_cast<std::uint32_t>(base + k), c);
    }
    for (std::size_t i = 1; i < L; ++i) {
      const SparseRow& pr = pprod[a[i - 1] * rdim + a[i]];
      if (pr.empty()) continue;
      src.assign(a.begin(), a.end());
      src.erase(src.begin() + static_cast<std::ptrdiff_t>(i));
      for (const auto& [r, c] : pr) {
        src[i - 1] = r;
        R.emplace_back(static_cast<std::uint32_t>(index(src, m)), odd(static_cast<long long>(i)) ? -c : c);
      }
    }
    // (-1)^{L + |a_L|(|e_m| + |a_1| + .. + |a_{L-1}|)} a_L e_m [a_1..a_{L-1}]
    {
      src.assign(a.begin(), a.end() - 1);
      const std::size_t base = index(src, 0);
      const long long dl = a_.degree(rbasis_[a[L - 1]]);
      const long long rest = a_.degree(m) + tuple_degree(src);
      const bool neg = odd(static_cast<long long>(L) + dl * rest);
      for (const auto& [k, c] : a_.product(rbasis_[a[L - 1]], m))
        R.emplace_back(static_cast<std::uint32_t>(base + k), neg ? -c : c);
    }
  }
  return SparseMatrix::from_rows(f, dimension(n), std::move(out));
}

}  // namespace hbv
