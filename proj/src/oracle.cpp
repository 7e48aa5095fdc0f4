#include <algorithm>
#include <stdexcept>

#include "hbv/errors.hpp"
#include "hbv/hochschild/hochschild.hpp"
#include "hbv/linalg/complex.hpp"

namespace hbv {

std::vector<std::size_t> group_cohomology_dimensions(const FiniteGroup& g, Field f, int N, std::size_t budget) {
  if (N < 0) throw std::invalid_argument("negative truncation degree");
  std::vector<std::size_t> out(static_cast<std::size_t>(N) + 1, 0);
  out[0] = 1;
  if (g.order() == 1) return out;
  // normalized cochains: functions on tuples of non-identity elements
  std::vector<std::size_t> elems;
  std::vector<std::int64_t> pos(g.order(), -1);
  for (std::size_t x = 0; x < g.order(); ++x)
    if (x != g.identity()) {
      pos[x] = static_cast<std::int64_t>(elems.size());
      elems.push_back(x);
    }
  const std::size_t r = elems.size();
  std::vector<std::size_t> dims{1};
  for (int n = 1; n <= N + 1; ++n) dims.push_back(dims.back() * r);
  if (*std::max_element(dims.begin(), dims.end() - 1) > budget) throw BudgetError(dims[static_cast<std::size_t>(N)], budget);

  Complex c(f, 0, N);
  for (int n = 0; n <= N + 1; ++n) c.set_space(n, dims[static_cast<std::size_t>(n)]);
  const Scalar one = Scalar::one(f);
  std::vector<std::size_t> t;
  for (int n = 0; n <= N; ++n) {
    const std::size_t L = static_cast<std::size_t>(n) + 1;
    std::vector<SparseRow> rows(dims[L]);
    for (std::size_t row = 0; row < dims[L]; ++row) {
      t.assign(L, 0);
      std::size_t v = row;
      for (std::size_t i = L; i-- > 0;) {
        t[i] = v % r;
        v /= r;
      }
      auto index = [&](std::size_t skip_lo, std::size_t skip_hi, std::int64_t merged) {
        // tuple with positions skip_lo..skip_hi replaced by merged (or dropped if merged < 0)
        std::size_t idx = 0;
        for (std::size_t i = 0; i < L; ++i) {
          if (i == skip_lo && merged >= 0) {
            idx = idx * r + static_cast<std::size_t>(merged);
            continue;
          }
          if (i >= skip_lo && i <= skip_hi) continue;
          idx = idx * r + t[i];
        }
        return idx;
      };
      SparseRow& R = rows[row];
      R.emplace_back(static_cast<std::uint32_t>(index(0, 0, -1)), one);
      for (std::size_t i = 1; i < L; ++i) {
        const std::size_t prod = g.mul(elems[t[i - 1]], elems[t[i]]);
        if (prod == g.identity()) continue;
        R.emplace_back(static_cast<std::uint32_t>(index(i - 1, i, pos[prod])), (i % 2) ? -one : one);
      }
      R.emplace_back(static_cast<std::uint32_t>(index(L - 1, L - 1, -1)), (L % 2) ? -one : one);
      normalize_row(R);
    }
    c.set_differential(n, SparseMatrix::from_rows(f, dims[static_cast<std::size_t>(n)], std::move(rows)));
  }
  c.check_square_zero();
  for (int n = 0; n <= N; ++n) out[static_cast<std::size_t>(n)] = cohomology_dimension(c, n);
  return out;
}

std::vector<std::size_t> centralizer_oracle(const FiniteGroup& g, Field f, int N, std::size_t budget) {
  std::vector<std::size_t> total(static_cast<std::size_t>(std::max(N, 0)) + 1, 0);
  for (const auto& cls : g.conjugacy_classes()) {
    const auto dims = group_cohomology_dimensions(g.centralizer(cls.front()), f, N, budget);
    for (std::size_t n = 0; n < total.size(); ++n) total[n] += dims[n];
  }
  return total;
}

}  // namespace hbv
