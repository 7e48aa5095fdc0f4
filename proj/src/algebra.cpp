#include "hbv/algebra/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "hbv/errors.hpp"

namespace hbv {

namespace {

inline bool odd_product(int a, int b) { return ((a * b) & 1) != 0; }

std::string idx3(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) + ")";
}

Scalar json_scalar(Field f, const nlohmann::json& v) {
  if (v.is_string()) return Scalar::parse(f, v.get<std::string>());
  if (v.is_number_integer()) return Scalar(f, v.get<std::int64_t>());
  throw ValidationError("coefficient must be a string or an integer");
}

std::string scalar_text(const Scalar& s) { return s.to_string(); }

}  // namespace

FDAlgebra::FDAlgebra(Field f, std::vector<BasisElement> basis, const StructureConstants& mult, Vector unit,
                     std::optional<HopfData> hopf)
    : field_(f), basis_(std::move(basis)), unit_(std::move(unit)), hopf_(std::move(hopf)) {
  const std::size_t n = basis_.size();
  if (n == 0) throw ValidationError("algebra: empty basis");
  if (unit_.size() != n) throw ValidationError("algebra: unit vector has wrong length");
  mult_.assign(n * n, {});
  for (const auto& [i, j, k, c] : mult) {
    if (i >= n || j >= n || k >= n) throw ValidationError("algebra: structure constant index out of range");
    if (!(c.field() == f)) throw ValidationError("algebra: coefficient in the wrong field");
    if (c.is_zero()) continue;
    if (basis_[i].degree + basis_[j].degree != basis_[k].degree)
      throw ValidationError("algebra: multiplication does not respect the grading at " + idx3(i, j, k));
    mult_[i * n + j].emplace_back(static_cast<std::uint32_t>(k), c);
  }
  for (auto& r : mult_) normalize_row(r);
  validate_algebra();
  if (hopf_) validate_hopf();
}

bool FDAlgebra::is_graded() const {
  return std::any_of(basis_.begin(), basis_.end(), [](const BasisElement& b) { return b.degree != 0; });
}

int FDAlgebra::top_degree() const {
  int t = basis_.front().degree;
  for (const auto& b : basis_) t = std::max(t, b.degree);
  return t;
}

Vector FDAlgebra::multiply(const Vector& x, const Vector& y) const {
  const std::size_t n = dim();
  Vector r = zero_vector(field_, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      const Scalar c = x[i] * y[j];
      for (const auto& [k, v] : product(i, j)) r[k] += c * v;
    }
  }
  return r;
}

Matrix FDAlgebra::left_multiplication(const Vector& x) const {
  Matrix m(field_, dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    const Vector col = multiply(x, basis_vector(j));
    for (std::size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
  }
  return m;
}

Matrix FDAlgebra::right_multiplication(const Vector& x) const {
  Matrix m(field_, dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    const Vector col = multiply(basis_vector(j), x);
    for (std::size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
  }
  return m;
}

bool FDAlgebra::is_commutative() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      SparseRow other = product(j, i);
      if (odd_product(degree(i), degree(j)))
        for (auto& e : other) e.second = -e.second;
      if (product(i, j) != other) return false;
    }
  return true;
}

std::size_t FDAlgebra::center_dimension() const {
  // z with e_i z - z e_i = 0 for all i (ungraded commutator)
  const std::size_t n = dim();
  Matrix sys(field_, n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix d = left_multiplication(basis_vector(i)) - right_multiplication(basis_vector(i));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) sys(i * n + r, c) = d(r, c);
  }
  return n - rank(sys);
}

bool FDAlgebra::is_invertible(const Vector& x) const { return hbv::is_invertible(left_multiplication(x)); }

const HopfData& FDAlgebra::hopf() const {
  if (!hopf_) throw PreconditionError("algebra has no Hopf data");
  return *hopf_;
}

void FDAlgebra::attach_group(FiniteGroup g) {
  if (g.order() != dim()) throw std::invalid_argument("group order differs from algebra dimension");
  group_ = std::move(g);
}

void FDAlgebra::validate_algebra() const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        // (e_i e_j) e_k vs e_i (e_j e_k)
        Vector lhs = zero_vector(field_, n), rhs = zero_vector(field_, n);
        for (const auto& [m, c] : product(i, j))
          for (const auto& [l, d] : product(m, k)) lhs[l] += c * d;
        for (const auto& [m, c] : product(j, k))
          for (const auto& [l, d] : product(i, m)) rhs[l] += c * d;
        if (lhs != rhs) throw ValidationError("algebra: associativity fails at basis triple " + idx3(i, j, k));
      }
  for (std::size_t i = 0; i < n; ++i) {
    const Vector e = basis_vector(i);
    if (multiply(unit_, e) != e || multiply(e, unit_) != e)
      throw ValidationError("algebra: unit axiom fails at basis element '" + basis_[i].name + "'");
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!unit_[i].is_zero() && basis_[i].degree != 0)
      throw ValidationError("algebra: unit is not of degree 0");
}

void FDAlgebra::validate_hopf() const {
  const std::size_t n = dim();
  const HopfData& h = *hopf_;
  if (h.coproduct.size() != n) throw ValidationError("hopf: coproduct has wrong length");
  if (h.counit.size() != n) throw ValidationError("hopf: counit has wrong length");
  if (h.antipode.rows() != n || h.antipode.cols() != n) throw ValidationError("hopf: antipode has wrong shape");
  auto dense = [&](const TensorTerms& t) {
    Matrix m(field_, n, n);
    for (const auto& [a, b, c] : t) {
      if (a >= n || b >= n) throw ValidationError("hopf: coproduct index out of range");
      m(a, b) += c;
    }
    return m;
  };
  std::vector<Matrix> D;
  for (std::size_t i = 0; i < n; ++i) {
    D.push_back(dense(h.coproduct[i]));
    for (const auto& [a, b, c] : h.coproduct[i])
      if (!c.is_zero() && degree(a) + degree(b) != degree(i))
        throw ValidationError("hopf: coproduct does not respect the grading at '" + basis_[i].name + "'");
  }
  const Scalar one = Scalar::one(field_);
  for (std::size_t i = 0; i < n; ++i) {
    // counit axioms
    Vector l = zero_vector(field_, n), r = zero_vector(field_, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (D[i](a, b).is_zero()) continue;
        l[b] += h.counit[a] * D[i](a, b);
        r[a] += D[i](a, b) * h.counit[b];
      }
    if (l != basis_vector(i) || r != basis_vector(i))
      throw ValidationError("hopf: counit axiom fails at '" + basis_[i].name + "'");
    // coassociativity
    std::vector<Scalar> lhs(n * n * n, Scalar::zero(field_)), rhs = lhs;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const Scalar& c = D[i](a, b);
        if (c.is_zero()) continue;
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y) {
            if (!D[a](x, y).is_zero()) lhs[(x * n + y) * n + b] += c * D[a](x, y);
            if (!D[b](x, y).is_zero()) rhs[(a * n + x) * n + y] += c * D[b](x, y);
          }
      }
    if (lhs != rhs) throw ValidationError("hopf: coassociativity fails at '" + basis_[i].name + "'");
    // antipode axioms
    Vector sl = zero_vector(field_, n), sr = zero_vector(field_, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (D[i](a, b).is_zero()) continue;
        axpy(sl, D[i](a, b), multiply(h.antipode.column(a), basis_vector(b)));
        axpy(sr, D[i](a, b), multiply(basis_vector(a), h.antipode.column(b)));
      }
    const Vector target = scaled(unit_, h.counit[i]);
    if (sl != target || sr != target) throw ValidationError("hopf: antipode axiom fails at '" + basis_[i].name + "'");
  }
  // bialgebra compatibility, graded: (a(x)b)(c(x)d) = (-1)^{|b||c|} ac (x) bd
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix lhs(field_, n, n), rhs(field_, n, n);
      for (const auto& [k, c] : product(i, j)) lhs = lhs + D[k].scaled(c);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          if (D[i](a, b).is_zero()) continue;
          for (std::size_t c2 = 0; c2 < n; ++c2)
            for (std::size_t d = 0; d < n; ++d) {
              if (D[j](c2, d).is_zero()) continue;
              Scalar coef = D[i](a, b) * D[j](c2, d);
              if (odd_product(degree(b), degree(c2))) coef = -coef;
              for (const auto& [x, u] : product(a, c2))
                for (const auto& [y, v] : product(b, d)) rhs(x, y) += coef * u * v;
            }
        }
      if (!(lhs == rhs))
        throw ValidationError("hopf: coproduct is not multiplicative at ('" + basis_[i].name + "', '" +
                              basis_[j].name + "')");
      Scalar eps = Scalar::zero(field_);
      for (const auto& [k, c] : product(i, j)) eps += c * h.counit[k];
      if (eps != h.counit[i] * h.counit[j])
        throw ValidationError("hopf: counit is not multiplicative at ('" + basis_[i].name + "', '" + basis_[j].name +
                              "')");
    }
  Scalar u1 = Scalar::zero(field_);
  for (std::size_t k = 0; k < n; ++k) u1 += h.counit[k] * unit_[k];
  if (u1 != one) throw ValidationError("hopf: counit of the unit is not 1");
}

nlohmann::json FDAlgebra::to_json() const {
  nlohmann::json j;
  j["field"] = field_.is_rational() ? nlohmann::json{{"type", "Q"}}
                                    : nlohmann::json{{"type", "Fp"}, {"p", field_.characteristic()}};
  j["basis"] = nlohmann::json::array();
  for (const auto& b : basis_) j["basis"].push_back({{"name", b.name}, {"degree", b.degree}});
  j["unit"] = nlohmann::json::array();
  for (const auto& u : unit_) j["unit"].push_back(scalar_text(u));
  j["mult"] = nlohmann::json::array();
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t b = 0; b < dim(); ++b)
      for (const auto& [k, c] : product(a, b)) j["mult"].push_back({a, b, k, scalar_text(c)});
  if (hopf_) {
    j["coproduct"] = nlohmann::json::array();
    for (std::size_t i = 0; i < dim(); ++i)
      for (const auto& [a, b, c] : hopf_->coproduct[i])
        if (!c.is_zero()) j["coproduct"].push_back({i, a, b, scalar_text(c)});
    j["counit"] = nlohmann::json::array();
    for (const auto& c : hopf_->counit) j["counit"].push_back(scalar_text(c));
    j["antipode"] = nlohmann::json::array();
    for (std::size_t c = 0; c < dim(); ++c)
      for (std::size_t r = 0; r < dim(); ++r)
        if (!hopf_->antipode(r, c).is_zero()) j["antipode"].push_back({c, r, scalar_text(hopf_->antipode(r, c))});
  }
  return j;
}

FDAlgebra FDAlgebra::from_json(const nlohmann::json& j) {
  try {
    const auto& fj = j.at("field");
    const std::string type = fj.at("type").get<std::string>();
    Field f;
    if (type == "Q") {
      f = Field::rationals();
    } else if (type == "Fp") {
      try {
        f = Field::prime(fj.at("p").get<std::uint32_t>());
      } catch (const std::invalid_argument& e) {
        throw ValidationError(std::string("algebra file: ") + e.what());
      }
    } else {
      throw ValidationError("algebra file: unknown field type '" + type + "'");
    }
    std::vector<BasisElement> basis;
    for (const auto& b : j.at("basis")) basis.push_back({b.at("name").get<std::string>(), b.value("degree", 0)});
    const std::size_t n = basis.size();
    Vector unit;
    for (const auto& u : j.at("unit")) unit.push_back(json_scalar(f, u));
    StructureConstants mult;
    for (const auto& t : j.at("mult")) {
      if (t.size() != 4) throw ValidationError("algebra file: mult entries are [i, j, k, coeff]");
      mult.emplace_back(t[0].get<std::size_t>(), t[1].get<std::size_t>(), t[2].get<std::size_t>(),
                        json_scalar(f, t[3]));
    }
    std::optional<HopfData> hopf;
    const bool any = j.contains("coproduct") || j.contains("counit") || j.contains("antipode");
    if (any) {
      if (!(j.contains("coproduct") && j.contains("counit") && j.contains("antipode")))
        throw ValidationError("algebra file: Hopf data needs coproduct, counit and antipode together");
      HopfData h{std::vector<TensorTerms>(n), {}, Matrix(f, n, n)};
      for (const auto& t : j.at("coproduct")) {
        if (t.size() != 4) throw ValidationError("algebra file: coproduct entries are [i, a, b, coeff]");
        const auto i = t[0].get<std::size_t>();
        if (i >= n) throw ValidationError("algebra file: coproduct index out of range");
        h.coproduct[i].emplace_back(t[1].get<std::uint32_t>(), t[2].get<std::uint32_t>(), json_scalar(f, t[3]));
      }
      for (const auto& c : j.at("counit")) h.counit.push_back(json_scalar(f, c));
      for (const auto& t : j.at("antipode")) {
        if (t.size() != 3) throw ValidationError("algebra file: antipode entries are [i, j, coeff]");
        const auto c = t[0].get<std::size_t>(), r = t[1].get<std::size_t>();
        if (c >= n || r >= n) throw ValidationError("algebra file: antipode index out of range");
        h.antipode(r, c) += json_scalar(f, t[2]);
      }
      hopf = std::move(h);
    }
    FDAlgebra a(f, std::move(basis), mult, std::move(unit), std::move(hopf));
    a.set_label(j.value("label", std::string("file")));
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("algebra file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("algebra file: ") + e.what());
  }
}

FDAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open algebra file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("algebra file '" + path + "': " + e.what());
  }
  return FDAlgebra::from_json(j);
}

FDAlgebra group_algebra(const FiniteGroup& g, Field f) {
  const std::size_t n = g.order();
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < n; ++i) basis.push_back({g.name(i), 0});
  StructureConstants mult;
  const Scalar one = Scalar::one(f);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mult.emplace_back(a, b, g.mul(a, b), one);
  HopfData h{std::vector<TensorTerms>(n), Vector(n, one), Matrix(f, n, n)};
  for (std::size_t a = 0; a < n; ++a) {
    h.coproduct[a].emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a), one);
    h.antipode(g.inverse(a), a) = one;
  }
  FDAlgebra alg(f, std::move(basis), mult, unit_vector(f, n, g.identity()), std::move(h));
  alg.attach_group(g);
  alg.set_label("group");
  return alg;
}

FDAlgebra exterior_algebra(const std::vector<int>& degs, Field f) {
  if (degs.empty()) throw ModelError("exterior algebra needs at least one generator");
  if (degs.size() > 12) throw ModelError("exterior algebra: too many generators");
  for (int d : degs)
    if (d <= 0 || d % 2 == 0) throw ModelError("exterior algebra: generator degree " + std::to_string(d) + " is not odd positive");
  if (f.characteristic() == 2) throw ModelError("exterior algebra: characteristic 2 is not supported");
  const std::size_t r = degs.size();
  std::map<int, int> count;
  for (int d : degs) ++count[d];
  std::vector<std::string> gen_names;
  for (std::size_t i = 0; i < r; ++i)
    gen_names.push_back("x" + std::to_string(degs[i]) + (count[degs[i]] > 1 ? "_" + std::to_string(i + 1) : ""));

  std::vector<unsigned> masks;
  for (unsigned m = 0; m < (1U << r); ++m) masks.push_back(m);
  auto deg_of = [&](unsigned m) {
    int d = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (m & (1U << i)) d += degs[i];
    return d;
  };
  auto indices = [&](unsigned m) {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < r; ++i)
      if (m & (1U << i)) v.push_back(i);
    return v;
  };
  std::sort(masks.begin(), masks.end(), [&](unsigned a, unsigned b) {
    const int da = deg_of(a), db = deg_of(b);
    if (da != db) return da < db;
    return indices(a) < indices(b);
  });
  std::map<unsigned, std::size_t> pos;
  std::vector<BasisElement> basis;
  for (std::size_t k = 0; k < masks.size(); ++k) {
    pos[masks[k]] = k;
    std::string nm;
    for (auto i : indices(masks[k])) nm += gen_names[i];
    basis.push_back({nm.empty() ? "1" : nm, deg_of(masks[k])});
  }
  // parity of the number of pairs (a in S, b in T) with a > b
  auto inversions = [&](unsigned s, unsigned t) {
    int c = 0;
    for (std::size_t a = 0; a < r; ++a)
      if (s & (1U << a))
        for (std::size_t b = 0; b < a; ++b)
          if (t & (1U << b)) ++c;
    return c;
  };
  StructureConstants mult;
  for (unsigned s : masks)
    for (unsigned t : masks) {
      if (s & t) continue;
      mult.emplace_back(pos[s], pos[t], pos[s | t], sign_scalar(f, inversions(s, t)));
    }
  const std::size_t n = masks.size();
  HopfData h{std::vector<TensorTerms>(n), zero_vector(f, n), Matrix(f, n, n)};
  for (unsigned s : masks) {
    const std::size_t i = pos[s];
    // sub-masks a of s, b = s \ a; sign from moving the factors of b past those of a
    for (unsigned a = s;; a = (a - 1) & s) {
      const unsigned b = s & ~a;
      h.coproduct[i].emplace_back(static_cast<std::uint32_t>(pos[a]), static_cast<std::uint32_t>(pos[b]),
                                  sign_scalar(f, inversions(a, b)));
      if (a == 0) break;
    }
    h.antipode(i, i) = sign_scalar(f, static_cast<long long>(indices(s).size()));
  }
  h.counit[pos[0]] = Scalar::one(f);
  FDAlgebra alg(f, std::move(basis), mult, unit_vector(f, n, pos[0]), std::move(h));
  alg.set_label("exterior");
  return alg;
}

FDAlgebra matrix_algebra(std::size_t n, Field f) {
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) basis.push_back({"E" + std::to_string(i + 1) + std::to_string(j + 1), 0});
  StructureConstants mult;
  const Scalar one = Scalar::one(f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) mult.emplace_back(i * n + j, j * n + l, i * n + l, one);
  Vector unit = zero_vector(f, n * n);
  for (std::size_t i = 0; i < n; ++i) unit[i * n + i] = one;
  FDAlgebra alg(f, std::move(basis), mult, std::move(unit));
  alg.set_label("matrix");
  return alg;
}

FDAlgebra dual_hopf_algebra(const FDAlgebra& a) {
  const HopfData& h = a.hopf();
  const Field f = a.field();
  const std::size_t n = a.dim();
  std::vector<BasisElement> basis;
  for (const auto& b : a.basis()) basis.push_back({b.name + "*", b.degree});
  StructureConstants mult;
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& [i, j, c] : h.coproduct[k]) {
      const Scalar s = odd_product(a.degree(i), a.degree(j)) ? -c : c;
      mult.emplace_back(i, j, k, s);
    }
  HopfData d{std::vector<TensorTerms>(n), a.unit(), h.antipode.transpose()};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : a.product(i, j)) {
        const Scalar s = odd_product(a.degree(i), a.degree(j)) ? -c : c;
        d.coproduct[k].emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), s);
      }
  FDAlgebra dual(f, std::move(basis), mult, h.counit, std::move(d));
  dual.set_label(a.label() + "-dual");
  return dual;
}

}  // namespace hbv
