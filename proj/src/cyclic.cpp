#include "hbv/cyclic/cyclic.hpp"

#include <stdexcept>
#include <string>

#include "hbv/errors.hpp"

namespace hbv {

namespace {

nlohmann::json coords_json(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(coords_json(m.row(r)));
  return nlohmann::json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

nlohmann::json checks_json(const std::vector<CheckResult>& checks) {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e{{"name", c.name}, {"passed", c.passed}, {"cases", c.cases}};
    if (!c.passed) e["witness"] = c.witness;
    cs.push_back(std::move(e));
  }
  return cs;
}

bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

CheckResult named(std::string name) {
  CheckResult r;
  r.name = std::move(name);
  return r;
}

void record(CheckResult& r, bool ok, nlohmann::json where) {
  ++r.cases;
  if (r.passed && !ok) {
    r.passed = false;
    r.witness = std::move(where);
  }
}

}  // namespace

CyclicComplex::CyclicComplex(const FDAlgebra& a, int max_degree, std::size_t budget)
    : h_(a, max_degree, budget), tot_(a.field(), 0, max_degree) {
  const int N = max_degree;
  const BarComplex& b = h_.bar(Coefficients::Dual);
  const Field f = a.field();
  for (int n = 0; n <= N + 1; ++n) {
    std::vector<int> w;
    for (std::size_t k = 0; k < columns(n); ++k) {
      const auto& wk = b.complex().weights(n - 2 * static_cast<int>(k));
      if (wk.empty())
        w.resize(w.size() + b.dimension(n - 2 * static_cast<int>(k)), 0);
      else
        w.insert(w.end(), wk.begin(), wk.end());
    }
    const std::size_t dim = w.size();
    tot_.set_space(n, dim, std::move(w));
  }
  for (int n = 0; n <= N; ++n) {
    std::vector<SparseRow> rows(tot_.dimension(n + 1));
    for (std::size_t k = 0; k < columns(n + 1); ++k) {
      const int m = n + 1 - 2 * static_cast<int>(k);  // degree of the target column
      const std::size_t roff = column_offset(n + 1, k);
      // b^dual from column k of Tot^n
      if (m - 1 >= 0) {
        const SparseMatrix& d = b.complex().differential(m - 1);
        const std::size_t coff = column_offset(n, k);
        for (std::size_t r = 0; r < d.rows(); ++r)
          for (const auto& [c, v] : d.row(r)) rows[roff + r].emplace_back(static_cast<std::uint32_t>(coff + c), v);
      }
      // B^dual from column k-1 of Tot^n, cochain degree m+1
      if (k >= 1) {
        const SparseMatrix& B = h_.connes_B_dual_matrix(m + 1);
        const std::size_t coff = column_offset(n, k - 1);
        for (std::size_t r = 0; r < B.rows(); ++r)
          for (const auto& [c, v] : B.row(r)) rows[roff + r].emplace_back(static_cast<std::uint32_t>(coff + c), v);
      }
    }
    for (auto& r : rows) normalize_row(r);
    tot_.set_differential(n, SparseMatrix::from_rows(f, tot_.dimension(n), std::move(rows)));
  }
  tot_.check_square_zero();
}

CyclicComplex::~CyclicComplex() = default;
CyclicComplex::CyclicComplex(CyclicComplex&&) noexcept = default;

std::size_t CyclicComplex::column_offset(int n, std::size_t k) const {
  const BarComplex& b = h_.bar(Coefficients::Dual);
  std::size_t off = 0;
  for (std::size_t j = 0; j < k; ++j) off += b.dimension(n - 2 * static_cast<int>(j));
  return off;
}

const CohomologyGroup& CyclicComplex::cohomology(int n) const {
  if (n < 0 || n > max_degree()) throw WindowError("cyclic degree " + std::to_string(n) + " outside [0, N]");
  auto it = cohomology_.find(n);
  if (it == cohomology_.end()) it = cohomology_.emplace(n, std::make_unique<CohomologyGroup>(cohomology_at(tot_, n))).first;
  return *it->second;
}

std::vector<std::size_t> CyclicComplex::dimensions() const {
  std::vector<std::size_t> out;
  for (int n = 0; n <= max_degree(); ++n) out.push_back(cohomology_dimension(tot_, n));
  return out;
}

HCClass CyclicComplex::zero_class(int n) const {
  HCClass c;
  c.degree = n;
  if (n >= 0) {
    c.coordinates = zero_vector(field(), cohomology(n).dimension());
    c.representative = zero_vector(field(), tot_.dimension(n));
  }
  return c;
}

HCClass CyclicComplex::representative(int n, std::size_t i) const {
  const auto& g = cohomology(n);
  if (i >= g.dimension()) throw std::out_of_range("class index out of range");
  HCClass c;
  c.degree = n;
  c.coordinates = unit_vector(field(), g.dimension(), i);
  c.representative = g.representatives()[i];
  return c;
}

HCClass CyclicComplex::class_of(int n, const Vector& z) const {
  if (n < 0) return zero_class(n);
  if (z.size() != tot_.dimension(n)) throw std::invalid_argument("vector has the wrong length for Tot^" + std::to_string(n));
  if (!is_zero(tot_.differential(n) * z)) throw PreconditionError("vector is not a total cocycle");
  auto coords = cohomology(n).coordinates(z);
  if (!coords) throw PreconditionError("vector is not a total cocycle");
  HCClass c;
  c.degree = n;
  c.coordinates = std::move(*coords);
  c.representative = z;
  return c;
}

int CyclicComplex::internal_degree(const HCClass& c) const {
  if (c.degree < 0 || !h_.algebra().is_graded()) return 0;
  for (std::size_t k = 0; k < columns(c.degree); ++k) {
    const Cochain col = column(c.degree, c.representative, k);
    if (!is_zero(col.values)) return h_.internal_degree(col);
  }
  return 0;
}

Cochain CyclicComplex::column(int n, const Vector& z, std::size_t k) const {
  if (k >= columns(n)) throw std::out_of_range("column index out of range");
  Cochain out = h_.zero(Coefficients::Dual, n - 2 * static_cast<int>(k));
  const std::size_t off = column_offset(n, k);
  std::copy(z.begin() + static_cast<std::ptrdiff_t>(off),
            z.begin() + static_cast<std::ptrdiff_t>(off + out.values.size()), out.values.begin());
  return out;
}

Vector CyclicComplex::embed(int n, const Cochain& phi, std::size_t k) const {
  Vector z = zero_vector(field(), tot_.dimension(n));
  std::copy(phi.values.begin(), phi.values.end(), z.begin() + static_cast<std::ptrdiff_t>(column_offset(n, k)));
  return z;
}

Cochain CyclicComplex::inclusion(const HCClass& c) const {
  if (c.degree < 0) return h_.zero(Coefficients::Dual, c.degree);
  return column(c.degree, c.representative, 0);
}

HCClass CyclicComplex::shift(const HCClass& c) const {
  const int n = c.degree + 2;
  if (n > max_degree()) throw WindowError("S lands in degree " + std::to_string(n) + " above the window");
  if (c.degree < 0) return zero_class(n);
  Vector z = zero_vector(field(), tot_.dimension(n));
  std::copy(c.representative.begin(), c.representative.end(),
            z.begin() + static_cast<std::ptrdiff_t>(column_offset(n, 1)));
  return class_of(n, z);
}

HCClass CyclicComplex::boundary(const Cochain& phi) const {
  if (phi.coeff != Coefficients::Dual) throw PreconditionError("the connecting map needs coefficients in A^dual");
  if (phi.degree > max_degree()) throw WindowError("connecting map above the window");
  if (phi.degree <= 0) return zero_class(phi.degree - 1);
  if (!h_.is_cocycle(phi)) throw PreconditionError("cochain is not a cocycle");
  return class_of(phi.degree - 1, embed(phi.degree - 1, h_.connes_B_dual(phi), 0));
}

std::vector<std::size_t> cyclic_cohomology(const FDAlgebra& a, int max_degree, std::size_t budget) {
  return CyclicComplex(a, max_degree, budget).dimensions();
}

bool ConnesMaps::passed() const { return all_passed(checks); }

nlohmann::json ConnesMaps::to_json() const {
  nlohmann::json j;
  j["max_degree"] = max_degree;
  j["hc_dimensions"] = hc;
  j["hh_dual_dimensions"] = hh;
  auto maps = [](const std::map<int, Matrix>& m) {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& [n, x] : m) o[std::to_string(n)] = matrix_json(x);
    return o;
  };
  j["I"] = maps(I);
  j["S"] = maps(S);
  j["boundary"] = maps(boundary);
  j["b_dual"] = maps(b_dual);
  j["passed"] = passed();
  j["checks"] = checks_json(checks);
  return j;
}

ConnesMaps connes_maps(const CyclicComplex& c) {
  const Hochschild& h = c.hochschild();
  const int N = c.max_degree();
  const Field f = c.field();
  ConnesMaps out;
  out.max_degree = N;
  for (int n = 0; n <= N; ++n) {
    out.hc.push_back(c.cohomology(n).dimension());
    out.hh.push_back(h.cohomology(Coefficients::Dual, n).dimension());
  }
  auto hc = [&](int n) -> std::size_t { return n < 0 || n > N ? 0 : out.hc[static_cast<std::size_t>(n)]; };
  auto hh = [&](int n) -> std::size_t { return n < 0 || n > N ? 0 : out.hh[static_cast<std::size_t>(n)]; };

  for (int n = 0; n <= N; ++n) {
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < hc(n); ++i) cols.push_back(h.class_of(c.inclusion(c.representative(n, i))).coordinates);
    out.I[n] = Matrix::from_columns(f, hh(n), cols);
  }
  for (int n = 0; n + 2 <= N; ++n) {
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < hc(n); ++i) cols.push_back(c.shift(c.representative(n, i)).coordinates);
    out.S[n] = Matrix::from_columns(f, hc(n + 2), cols);
  }
  for (int n = 0; n <= N; ++n) {
    std::vector<Vector> cols, bcols;
    for (std::size_t i = 0; i < hh(n); ++i) {
      const Cochain phi = h.representative(Coefficients::Dual, n, i);
      cols.push_back(n == 0 ? Vector{} : c.boundary(phi).coordinates);
      bcols.push_back(n == 0 ? Vector{} : h.class_of(h.connes_B_dual(phi)).coordinates);
    }
    out.boundary[n] = Matrix::from_columns(f, hc(n - 1), cols);
    out.b_dual[n] = Matrix::from_columns(f, hh(n - 1), bcols);
  }

  // maps with a degree outside the stored range are zero
  auto I = [&](int n) { return n >= 0 && n <= N ? out.I.at(n) : Matrix(f, hh(n), hc(n)); };
  auto S = [&](int n) { return n >= 0 && n + 2 <= N ? out.S.at(n) : Matrix(f, hc(n + 2), hc(n)); };
  auto D = [&](int n) { return n >= 0 && n <= N ? out.boundary.at(n) : Matrix(f, hc(n - 1), hh(n)); };

  CheckResult comp = named("composites_vanish"), at_hc = named("ker_I_eq_im_S"), at_hh = named("ker_boundary_eq_im_I"),
      at_shift = named("ker_S_eq_im_boundary"), ib = named("I_boundary_eq_B_dual");
  for (int n = 0; n <= N; ++n) {
    const nlohmann::json where{{"degree", n}};
    // HC^{n-2} -S-> HC^n -I-> HH^n
    record(comp, (I(n) * S(n - 2)).is_zero(), nlohmann::json{{"composite", "I S"}, {"degree", n}});
    record(at_hc, hc(n) - rank(I(n)) == rank(S(n - 2)), where);
    // HC^n -I-> HH^n -d-> HC^{n-1}
    record(comp, (D(n) * I(n)).is_zero(), nlohmann::json{{"composite", "boundary I"}, {"degree", n}});
    record(at_hh, hh(n) - rank(D(n)) == rank(I(n)), where);
    // HH^n -d-> HC^{n-1} -S-> HC^{n+1}
    if (n + 1 <= N) {
      record(comp, (S(n - 1) * D(n)).is_zero(), nlohmann::json{{"composite", "S boundary"}, {"degree", n}});
      record(at_shift, hc(n - 1) - rank(S(n - 1)) == rank(D(n)), where);
    }
    if (n >= 1) record(ib, I(n - 1) * D(n) == out.b_dual.at(n), where);
  }
  out.checks = {comp, at_hc, at_hh, at_shift, ib};
  return out;
}

HCClass string_bracket(const CyclicComplex& c, const HCClass& a, const HCClass& b) {
  const Hochschild& h = c.hochschild();
  if (!h.has_frobenius()) throw PreconditionError("string bracket needs a Frobenius structure");
  const int n = a.degree + b.degree;
  if (n > c.max_degree()) throw WindowError("string bracket of degrees " + std::to_string(a.degree) + " and " +
                                            std::to_string(b.degree) + " exceeds the window");
  if (n <= 0 || a.degree < 0 || b.degree < 0) return c.zero_class(n - 1);
  const Cochain x = h.from_dual(c.inclusion(a));
  const Cochain y = h.from_dual(c.inclusion(b));
  HCClass r = c.boundary(h.to_dual(h.cup(x, y)));
  if (odd_sign(a.degree)) {
    for (auto& v : r.coordinates) v = -v;
    for (auto& v : r.representative) v = -v;
  }
  return r;
}

bool StringReport::passed() const { return all_passed(checks); }

nlohmann::json StringReport::to_json() const {
  return nlohmann::json{{"max_degree", max_degree},
                        {"hc_dimensions", dimensions},
                        {"passed", passed()},
                        {"checks", checks_json(checks)}};
}

namespace {

struct Basis {
  std::vector<std::vector<HCClass>> classes;  // classes[n][i]
  std::vector<std::vector<long long>> t;      // shifted internal degree t + d
};

Basis hc_basis(const CyclicComplex& c) {
  Basis B;
  const int d = c.hochschild().frobenius_degree();
  for (int n = 0; n <= c.max_degree(); ++n) {
    B.classes.emplace_back();
    B.t.emplace_back();
    for (std::size_t i = 0; i < c.cohomology(n).dimension(); ++i) {
      B.classes.back().push_back(c.representative(n, i));
      B.t.back().push_back(c.internal_degree(B.classes.back().back()) + d);
    }
  }
  return B;
}

nlohmann::json at(int n, std::size_t i) { return nlohmann::json{{"degree", n}, {"index", i}}; }

bool is_zero_class(const HCClass& c) { return c.degree < 0 || is_zero(c.coordinates); }

HCClass combine(const HCClass& x, const HCClass& y, const Scalar& s) {
  HCClass out = x;
  if (x.degree < 0) return out;
  axpy(out.coordinates, s, y.coordinates);
  axpy(out.representative, s, y.representative);
  return out;
}

}  // namespace

StringReport string_bracket_check(const FDAlgebra& a, const FrobeniusStructure& s, int N, std::size_t budget) {
  CyclicComplex c(a, N, budget);
  c.set_frobenius(s);
  const Hochschild& h = c.hochschild();
  const Field f = a.field();
  const Scalar one = Scalar::one(f);
  auto sgn = [&](long long k) { return odd_sign(k) ? -one : one; };
  StringReport rep;
  rep.max_degree = N;
  rep.dimensions = c.dimensions();
  const Basis B = hc_basis(c);
  auto cls = [&](int n, std::size_t i) -> const HCClass& { return B.classes[static_cast<std::size_t>(n)][i]; };
  auto tt = [&](int n, std::size_t i) { return B.t[static_cast<std::size_t>(n)][i]; };
  auto count = [&](int n) { return B.classes[static_cast<std::size_t>(n)].size(); };

  CheckResult anti = named("antisymmetry"), jac = named("jacobi"), unit = named("unit_vanishing");
  for (int p = 0; p <= N; ++p)
    for (int q = 0; p + q <= N; ++q)
      for (std::size_t i = 0; i < count(p); ++i)
        for (std::size_t j = 0; j < count(q); ++j) {
          const HCClass ab = string_bracket(c, cls(p, i), cls(q, j));
          const HCClass ba = string_bracket(c, cls(q, j), cls(p, i));
          const HCClass r = combine(ab, ba, sgn(static_cast<long long>(p - 1) * (q - 1) + tt(p, i) * tt(q, j)));
          nlohmann::json where{{"a", at(p, i)}, {"b", at(q, j)}};
          if (!is_zero_class(r)) where["residual"] = coords_json(r.coordinates);
          record(anti, is_zero_class(r), where);
        }
  for (int p = 0; p <= N; ++p)
    for (int q = 0; p + q <= N; ++q)
      for (int r = 0; q + r <= N && p + r <= N && p + q + r <= N + 1; ++r)
        for (std::size_t i = 0; i < count(p); ++i)
          for (std::size_t j = 0; j < count(q); ++j)
            for (std::size_t k = 0; k < count(r); ++k) {
              const HCClass& x = cls(p, i);
              const HCClass& y = cls(q, j);
              const HCClass& z = cls(r, k);
              const long long tx = tt(p, i), ty = tt(q, j), tz = tt(r, k);
              HCClass s1 = string_bracket(c, x, string_bracket(c, y, z));
              if (s1.degree < 0) continue;
              for (auto& v : s1.coordinates) v *= sgn(static_cast<long long>(p - 1) * (r - 1) + tx * tz);
              s1 = combine(s1, string_bracket(c, y, string_bracket(c, z, x)),
                           sgn(static_cast<long long>(q - 1) * (p - 1) + ty * tx));
              s1 = combine(s1, string_bracket(c, z, string_bracket(c, x, y)),
                           sgn(static_cast<long long>(r - 1) * (q - 1) + tz * ty));
              nlohmann::json where{{"a", at(p, i)}, {"b", at(q, j)}, {"c", at(r, k)}};
              if (!is_zero_class(s1)) where["residual"] = coords_json(s1.coordinates);
              record(jac, is_zero_class(s1), where);
            }
  // a class of degree 0 with D I a = 1 brackets to zero
  {
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < count(0); ++i)
      cols.push_back(h.class_of(h.from_dual(c.inclusion(cls(0, i)))).coordinates);
    const Matrix M = Matrix::from_columns(f, h.cohomology(Coefficients::Self, 0).dimension(), cols);
    if (const auto v = solve(M, h.class_of(h.unit()).coordinates)) {
      HCClass e = c.zero_class(0);
      for (std::size_t i = 0; i < count(0); ++i) e = combine(e, cls(0, i), (*v)[i]);
      for (int q = 0; q <= N; ++q)
        for (std::size_t j = 0; j < count(q); ++j) {
          const HCClass r = string_bracket(c, e, cls(q, j));
          record(unit, is_zero_class(r), nlohmann::json{{"b", at(q, j)}});
        }
    }
  }
  rep.checks = {anti, jac, unit};
  return rep;
}

StringReport lie_morphism_check(const FDAlgebra& a, const FrobeniusStructure& s, int N, std::size_t budget) {
  CyclicComplex c(a, N, budget);
  c.set_frobenius(s);
  const Hochschild& h = c.hochschild();
  const Scalar one = Scalar::one(a.field());
  StringReport rep;
  rep.max_degree = N;
  rep.dimensions = c.dimensions();
  const Basis B = hc_basis(c);
  CheckResult lie = named("lie_morphism");
  auto M = [&](const HCClass& x) { return h.from_dual(c.inclusion(x)); };
  for (int p = 0; p <= N; ++p)
    for (int q = 0; p + q <= N; ++q)
      for (std::size_t i = 0; i < B.classes[static_cast<std::size_t>(p)].size(); ++i)
        for (std::size_t j = 0; j < B.classes[static_cast<std::size_t>(q)].size(); ++j) {
          const HCClass& x = B.classes[static_cast<std::size_t>(p)][i];
          const HCClass& y = B.classes[static_cast<std::size_t>(q)][j];
          Cochain diff = h.gerstenhaber_bracket(M(x), M(y));
          const Cochain rhs = M(string_bracket(c, x, y));
          nlohmann::json where{{"a", at(p, i)}, {"b", at(q, j)}};
          if (diff.degree < 0) {
            record(lie, true, where);
            continue;
          }
          axpy(diff.values, -one, rhs.values);
          const bool ok = h.is_cocycle(diff) && h.is_coboundary(diff);
          if (!ok && h.is_cocycle(diff)) where["residual"] = coords_json(h.class_of(diff).coordinates);
          record(lie, ok, where);
        }
  rep.checks = {lie};
  return rep;
}

}  // namespace hbv
