#include "hbv/hochschild/hochschild.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "hbv/errors.hpp"

namespace hbv {

namespace {

struct Entry {
  std::vector<std::size_t> tuple;
  std::size_t tuple_index = 0;
  std::size_t m = 0;
  int tdeg = 0;
  Scalar c;
};

std::vector<Entry> entries(const BarComplex& bar, const Cochain& f) {
  std::vector<Entry> out;
  const std::size_t dimA = bar.algebra().dim();
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (f.values[i].is_zero()) continue;
    Entry e;
    bar.decode(f.degree, i, e.tuple, e.m);
    e.tuple_index = i / dimA;
    e.tdeg = bar.tuple_degree(e.tuple);
    e.c = f.values[i];
    out.push_back(std::move(e));
  }
  return out;
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

const char* coeff_name(Coefficients c) { return c == Coefficients::Self ? "A" : "A^dual"; }

}  // namespace

Hochschild::Hochschild(const FDAlgebra& a, int max_degree, std::size_t budget)
    : a_(a), N_(max_degree), budget_(budget) {
  if (max_degree < 0) throw std::invalid_argument("negative truncation degree");
  if (a.dim() < 2) throw PreconditionError("bar complex needs dim Abar >= 1");
  std::size_t largest = 0;
  for (int n = 0; n <= N_; ++n) largest = std::max(largest, BarComplex::predicted_dimension(a, n));
  if (largest > budget) throw BudgetError(largest, budget);
}

Hochschild::~Hochschild() = default;
Hochschild::Hochschild(Hochschild&&) noexcept = default;

const BarComplex& Hochschild::bar(Coefficients c) const {
  auto& slot = c == Coefficients::Self ? self_ : dual_;
  if (!slot) slot = std::make_unique<BarComplex>(a_, c, N_, budget_);
  return *slot;
}

const CohomologyGroup& Hochschild::cohomology(Coefficients c, int n) const {
  if (n < 0 || n > N_) throw WindowError("cohomology degree " + std::to_string(n) + " outside [0, N]");
  auto key = std::make_pair(c == Coefficients::Self ? 0 : 1, n);
  auto it = cohomology_.find(key);
  if (it == cohomology_.end())
    it = cohomology_.emplace(key, std::make_unique<CohomologyGroup>(cohomology_at(bar(c).complex(), n))).first;
  return *it->second;
}

std::vector<std::size_t> Hochschild::dimensions(Coefficients c) const {
  std::vector<std::size_t> out;
  for (int n = 0; n <= N_; ++n) out.push_back(cohomology_dimension(bar(c).complex(), n));
  return out;
}

Cochain Hochschild::zero(Coefficients c, int n) const {
  Cochain z;
  z.coeff = c;
  z.degree = n;
  if (n >= 0) {
    if (n > N_ + 1) throw WindowError("cochain degree " + std::to_string(n) + " outside window");
    z.values = zero_vector(field(), bar(c).dimension(n));
  }
  return z;
}

Cochain Hochschild::unit() const {
  Cochain u = zero(Coefficients::Self, 0);
  u.values = a_.unit();
  return u;
}

Cochain Hochschild::representative(Coefficients c, int n, std::size_t i) const {
  const auto& h = cohomology(c, n);
  if (i >= h.dimension()) throw std::out_of_range("class index out of range");
  Cochain r;
  r.coeff = c;
  r.degree = n;
  r.values = h.representatives()[i];
  return r;
}

int Hochschild::internal_degree(const Cochain& f) const {
  if (f.degree < 0) return 0;
  const BarComplex& b = bar(f.coeff);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    if (!f.values[i].is_zero()) return b.internal_degree(f.degree, i);
  return 0;
}

void Hochschild::check_coeff(const Cochain& f, Coefficients c, const char* what) const {
  if (f.coeff != c)
    throw PreconditionError(std::string(what) + " needs coefficients in " + coeff_name(c));
}

Cochain Hochschild::coboundary(const Cochain& f) const {
  if (f.degree < 0) return zero(f.coeff, f.degree + 1);
  if (f.degree > N_) throw WindowError("no differential above the truncation degree");
  Cochain out;
  out.coeff = f.coeff;
  out.degree = f.degree + 1;
  out.values = bar(f.coeff).complex().differential(f.degree) * f.values;
  return out;
}

bool Hochschild::is_cocycle(const Cochain& f) const {
  if (f.degree < 0) return true;
  return is_zero(coboundary(f).values);
}

bool Hochschild::is_coboundary(const Cochain& f) const {
  if (f.degree < 0) return true;
  return cohomology(f.coeff, f.degree).is_coboundary(f.values);
}

HHClass Hochschild::class_of(const Cochain& f) const {
  HHClass c;
  c.coeff = f.coeff;
  c.degree = f.degree;
  c.representative = f;
  if (f.degree < 0) return c;
  auto coords = cohomology(f.coeff, f.degree).coordinates(f.values);
  if (!coords || !is_cocycle(f)) throw PreconditionError("cochain is not a cocycle");
  c.coordinates = std::move(*coords);
  return c;
}

Cochain Hochschild::cup(const Cochain& f, const Cochain& g) const {
  check_coeff(f, Coefficients::Self, "cup (left factor)");
  const int n = f.degree + g.degree;
  if (n > N_) throw WindowError("cup product of degree " + std::to_string(n) + " exceeds the window");
  Cochain out = zero(g.coeff, n);
  if (f.degree < 0 || g.degree < 0) return out;
  const BarComplex& bf = bar(Coefficients::Self);
  const BarComplex& bg = bar(g.coeff);
  const std::size_t dimA = a_.dim();
  const std::size_t shift = bf.tuple_count(g.degree);
  const auto ef = entries(bf, f);
  const auto eg = entries(bg, g);
  if (g.coeff == Coefficients::Self) {
    // (f u g)(x) = (-1)^{t_g |x_first|} f(x_first) g(x_last)
    for (const auto& x : ef)
      for (const auto& y : eg) {
        const int tg = a_.degree(y.m) - y.tdeg;
        Scalar c = x.c * y.c;
        if (odd_sign(static_cast<long long>(tg) * x.tdeg)) c = -c;
        const std::size_t base = (x.tuple_index * shift + y.tuple_index) * dimA;
        for (const auto& [k, v] : a_.product(x.m, y.m)) out.values[base + k] += c * v;
      }
    return out;
  }
  // (f u phi)(x)(e_k) = (-1)^{t_phi |x_first|} phi(x_last)(e_k f(x_first))
  for (const auto& x : ef)
    for (const auto& y : eg) {
      const int tphi = -a_.degree(y.m) - y.tdeg;
      Scalar c = x.c * y.c;
      if (odd_sign(static_cast<long long>(tphi) * x.tdeg)) c = -c;
      const std::size_t base = (x.tuple_index * shift + y.tuple_index) * dimA;
      for (std::size_t k = 0; k < dimA; ++k)
        for (const auto& [mm, v] : a_.product(k, x.m))
          if (mm == y.m) out.values[base + k] += c * v;
    }
  return out;
}

Cochain Hochschild::circle(const Cochain& f, const Cochain& g) const {
  check_coeff(f, Coefficients::Self, "circle product");
  check_coeff(g, Coefficients::Self, "circle product");
  const int n = f.degree + g.degree - 1;
  if (n > N_) throw WindowError("circle product of degree " + std::to_string(n) + " exceeds the window");
  Cochain out = zero(Coefficients::Self, n);
  if (f.degree <= 0 || g.degree < 0) return out;
  const BarComplex& b = bar(Coefficients::Self);
  const std::size_t dimA = a_.dim();
  const std::size_t rdim = b.reduced_dim();
  const int p = f.degree, q = g.degree;
  // projected values of g, grouped by the reduced slot they land in
  struct Piece {
    std::size_t tuple_index;
    int tdeg;
    int tg;
    Scalar c;
  };
  std::vector<std::vector<Piece>> by_slot(rdim);
  for (const auto& y : entries(b, g))
    for (const auto& [r, v] : b.projection(y.m))
      by_slot[r].push_back({y.tuple_index, y.tdeg, a_.degree(y.m) - y.tdeg, y.c * v});
  const std::size_t qpow = ipow(rdim, q);
  for (const auto& x : entries(b, f)) {
    std::size_t prefix = 0;
    int prefix_deg = 0;
    for (int i = 1; i <= p; ++i) {
      const std::size_t slot = x.tuple[static_cast<std::size_t>(i - 1)];
      std::size_t suffix = 0;
      for (int j = i; j < p; ++j) suffix = suffix * rdim + x.tuple[static_cast<std::size_t>(j)];
      const std::size_t spow = ipow(rdim, p - i);
      for (const auto& y : by_slot[slot]) {
        Scalar c = x.c * y.c;
        if (odd_sign(static_cast<long long>(q - 1) * (p - i) + static_cast<long long>(y.tg) * prefix_deg)) c = -c;
        const std::size_t t = (prefix * qpow + y.tuple_index) * spow + suffix;
        out.values[t * dimA + x.m] += c;
      }
      prefix = prefix * rdim + slot;
      prefix_deg += a_.degree(b.lift(slot));
    }
  }
  return out;
}

Cochain Hochschild::gerstenhaber_bracket(const Cochain& f, const Cochain& g) const {
  check_coeff(f, Coefficients::Self, "Gerstenhaber bracket");
  check_coeff(g, Coefficients::Self, "Gerstenhaber bracket");
  const int n = f.degree + g.degree - 1;
  Cochain out = zero(Coefficients::Self, n);
  if (n < 0) return out;
  // split into internal-degree components so the sign is well defined
  auto split = [this](const Cochain& h) {
    std::map<int, Cochain> parts;
    const BarComplex& b = bar(Coefficients::Self);
    for (std::size_t i = 0; i < h.values.size(); ++i) {
      if (h.values[i].is_zero()) continue;
      const int t = b.internal_degree(h.degree, i);
      auto it = parts.find(t);
      if (it == parts.end()) it = parts.emplace(t, zero(Coefficients::Self, h.degree)).first;
      it->second.values[i] = h.values[i];
    }
    return parts;
  };
  const auto fs = split(f);
  const auto gs = split(g);
  const long long base = static_cast<long long>(f.degree - 1) * (g.degree - 1);
  for (const auto& [tf, fp] : fs)
    for (const auto& [tg, gp] : gs) {
      axpy(out.values, Scalar::one(field()), circle(fp, gp).values);
      const bool neg = odd_sign(base + static_cast<long long>(tf) * tg);
      axpy(out.values, neg ? Scalar::one(field()) : -Scalar::one(field()), circle(gp, fp).values);
    }
  return out;
}

const SparseMatrix& Hochschild::connes_B_dual_matrix(int n) const {
  if (n < 1 || n > N_ + 1) throw WindowError("B^dual degree " + std::to_string(n) + " outside window");
  if (auto it = b_dual_.find(n); it != b_dual_.end()) return it->second;
  const BarComplex& b = bar(Coefficients::Dual);
  const std::size_t dimA = a_.dim();
  const std::size_t L = static_cast<std::size_t>(n) - 1;  // bar length of the source chain
  const std::size_t rows = b.dimension(n - 1);
  std::vector<std::pair<std::size_t, Scalar>> unit_terms;
  for (std::size_t j = 0; j < dimA; ++j)
    if (!a_.unit()[j].is_zero()) unit_terms.emplace_back(j, a_.unit()[j]);
  std::vector<SparseRow> out(rows);
  std::vector<std::size_t> tuple, s(L + 1);
  std::size_t m = 0;
  // item k of the rotating sequence: k = 0 is a_0 = e_m, k >= 1 is bar entry k
  std::vector<std::size_t> seq(L + 1);
  for (std::size_t row = 0; row < rows; ++row) {
    b.decode(n - 1, row, tuple, m);
    auto item_degree = [&](std::size_t k) { return k == 0 ? a_.degree(m) : a_.degree(b.lift(tuple[k - 1])); };
    for (std::size_t k = 0; k <= L; ++k) seq[k] = k;
    bool neg = false;
    SparseRow& R = out[row];
    for (std::size_t i = 0; i <= L; ++i) {
      if (i > 0) {
        // t: move the last item to the front
        long long rest = 0;
        for (std::size_t k = 0; k < L; ++k) rest += item_degree(seq[k]);
        if (odd_sign(static_cast<long long>(L) + item_degree(seq[L]) * rest)) neg = !neg;
        std::rotate(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(L), seq.end());
      }
      std::size_t pos0 = 0;
      for (std::size_t k = 0; k <= L; ++k) {
        if (seq[k] == 0)
          pos0 = k;
        else
          s[k] = tuple[seq[k] - 1];
      }
      for (const auto& [r, c] : b.projection(m)) {
        s[pos0] = r;
        const std::size_t base = b.index(s, 0);
        for (const auto& [j, u] : unit_terms) {
          Scalar v = c * u;
          R.emplace_back(static_cast<std::uint32_t>(base + j), neg ? -v : v);
        }
      }
    }
  }
  auto res = b_dual_.emplace(n, SparseMatrix::from_rows(field(), b.dimension(n), std::move(out)));
  return res.first->second;
}

Cochain Hochschild::connes_B_dual(const Cochain& phi) const {
  check_coeff(phi, Coefficients::Dual, "B^dual");
  if (phi.degree <= 0) return zero(Coefficients::Dual, phi.degree - 1);
  Cochain out;
  out.coeff = Coefficients::Dual;
  out.degree = phi.degree - 1;
  out.values = connes_B_dual_matrix(phi.degree) * phi.values;
  return out;
}

void Hochschild::set_frobenius(const FrobeniusStructure& s) {
  if (s.pairing.rows() != a_.dim() || s.pairing.cols() != a_.dim())
    throw ValidationError("pairing matrix has the wrong size");
  const FrobeniusReport r = verify_frobenius(a_, s.pairing);
  if (!r.nondegenerate) throw PreconditionError("duality needs a nondegenerate pairing");
  if (!r.frobenius_identity) throw PreconditionError("pairing fails <ab,c> = <a,bc>");
  if (!r.symmetric) throw PreconditionError("duality needs a symmetric Frobenius structure");
  // Q_par(m, m') = (-1)^{(|m'| - par) |m|} P(m, m')
  pairing_inverse_.clear();
  for (int par = 0; par < 2; ++par) {
    Matrix q(field(), a_.dim(), a_.dim());
    for (std::size_t i = 0; i < a_.dim(); ++i)
      for (std::size_t j = 0; j < a_.dim(); ++j) {
        const Scalar& v = s.pairing(i, j);
        q(i, j) = odd_sign(static_cast<long long>(a_.degree(j) - par) * a_.degree(i)) ? -v : v;
      }
    pairing_inverse_.push_back(inverse(q));
  }
  pairing_ = s.pairing;
  pairing_degree_ = s.degree;
}

Cochain Hochschild::to_dual(const Cochain& f) const {
  check_coeff(f, Coefficients::Self, "duality");
  if (!pairing_) throw PreconditionError("no Frobenius structure installed");
  Cochain out = zero(Coefficients::Dual, f.degree);
  if (f.degree < 0) return out;
  const BarComplex& b = bar(Coefficients::Self);
  const std::size_t dimA = a_.dim();
  for (const auto& x : entries(b, f)) {
    const int tf = a_.degree(x.m) - x.tdeg;
    for (std::size_t m = 0; m < dimA; ++m) {
      const Scalar& p = (*pairing_)(m, x.m);
      if (p.is_zero()) continue;
      const Scalar v = x.c * p;
      out.values[x.tuple_index * dimA + m] += odd_sign(static_cast<long long>(tf) * a_.degree(m)) ? -v : v;
    }
  }
  return out;
}

Cochain Hochschild::from_dual(const Cochain& phi) const {
  check_coeff(phi, Coefficients::Dual, "duality");
  if (!pairing_) throw PreconditionError("no Frobenius structure installed");
  Cochain out = zero(Coefficients::Self, phi.degree);
  if (phi.degree < 0) return out;
  const BarComplex& b = bar(Coefficients::Dual);
  const std::size_t dimA = a_.dim();
  const std::size_t tuples = b.tuple_count(phi.degree);
  std::vector<std::size_t> tuple;
  std::size_t m = 0;
  for (std::size_t t = 0; t < tuples; ++t) {
    Vector block(phi.values.begin() + static_cast<std::ptrdiff_t>(t * dimA),
                 phi.values.begin() + static_cast<std::ptrdiff_t>((t + 1) * dimA));
    if (is_zero(block)) continue;
    b.decode(phi.degree, t * dimA, tuple, m);
    const int par = b.tuple_degree(tuple) & 1;
    const Vector f = pairing_inverse_[static_cast<std::size_t>(par)] * block;
    std::copy(f.begin(), f.end(), out.values.begin() + static_cast<std::ptrdiff_t>(t * dimA));
  }
  return out;
}

Cochain Hochschild::delta(const Cochain& f) const {
  check_coeff(f, Coefficients::Self, "Delta");
  return from_dual(connes_B_dual(to_dual(f)));
}

Matrix Hochschild::induced_map(Coefficients from, int n, Coefficients to, int m,
                               const std::function<Cochain(const Cochain&)>& map) const {
  const auto& src = cohomology(from, n);
  const std::size_t target_dim = m >= 0 ? cohomology(to, m).dimension() : 0;
  Matrix out(field(), target_dim, src.dimension());
  for (std::size_t i = 0; i < src.dimension(); ++i) {
    const Cochain img = map(representative(from, n, i));
    if (img.degree != m || img.coeff != to) throw std::logic_error("induced map lands in the wrong space");
    if (m < 0) continue;
    const HHClass c = class_of(img);
    for (std::size_t r = 0; r < target_dim; ++r) out(r, i) = c.coordinates[r];
  }
  return out;
}

FrobeniusStructure default_frobenius(const FDAlgebra& a) {
  if (a.group()) return group_frobenius(a);
  if (a.is_graded()) return lie_pairing(a);
  const SymmetricFormSearch s = symmetric_form_exists(a);
  if (s.exists && s.witness) {
    Matrix p(a.field(), a.dim(), a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) {
        Scalar v = Scalar::zero(a.field());
        for (const auto& [k, c] : a.product(i, j)) v += c * (*s.witness)[k];
        p(i, j) = v;
      }
    return make_frobenius(a, std::move(p));
  }
  throw PreconditionError("algebra carries no symmetric Frobenius structure");
}

}  // namespace hbv
