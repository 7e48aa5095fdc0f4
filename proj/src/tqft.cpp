#include "hbv/tqft/tqft.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "hbv/errors.hpp"
#include "hbv/hochschild/hochschild.hpp"

namespace hbv {

namespace {

using SortKey = std::tuple<int, int, int, const std::vector<int>&, const std::vector<int>&>;

SortKey sort_key(const CobComponent& c) {
  const int cls = !c.in_legs.empty() ? 0 : !c.out_legs.empty() ? 1 : 2;
  const int first = cls == 0 ? c.in_legs.front() : cls == 1 ? c.out_legs.front() : 0;
  return {cls, first, c.genus, c.in_legs, c.out_legs};
}

void check_partition(const std::vector<CobComponent>& comps, int n, bool in) {
  std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& c : comps)
    for (int port : in ? c.in_legs : c.out_legs) {
      if (port < 1 || port > n)
        throw ValidationError(std::string("cobordism: ") + (in ? "in" : "out") + "-port " + std::to_string(port) +
                              " outside 1.." + std::to_string(n));
      if (seen[static_cast<std::size_t>(port)]++)
        throw ValidationError(std::string("cobordism: ") + (in ? "in" : "out") + "-port " + std::to_string(port) +
                              " used twice");
    }
  for (int port = 1; port <= n; ++port)
    if (!seen[static_cast<std::size_t>(port)])
      throw ValidationError(std::string("cobordism: ") + (in ? "in" : "out") + "-port " + std::to_string(port) +
                            " not attached");
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::vector<int> int_list(const nlohmann::json& j) {
  std::vector<int> v;
  for (const auto& x : j) v.push_back(x.get<int>());
  return v;
}

Scalar json_coeff(Field f, const nlohmann::json& v) {
  if (v.is_string()) return Scalar::parse(f, v.get<std::string>());
  if (v.is_number_integer()) return Scalar(f, v.get<std::int64_t>());
  throw ValidationError("pairing coefficient must be a string or an integer");
}

}  // namespace

Cobordism::Cobordism(int p, int q, std::vector<CobComponent> components) : p_(p), q_(q) {
  if (p < 0 || q < 0) throw ValidationError("cobordism: negative boundary count");
  for (auto& c : components) {
    if (c.genus < 0) throw ValidationError("cobordism: negative genus");
    std::sort(c.in_legs.begin(), c.in_legs.end());
    std::sort(c.out_legs.begin(), c.out_legs.end());
  }
  check_partition(components, p, true);
  check_partition(components, q, false);
  std::sort(components.begin(), components.end(),
            [](const CobComponent& a, const CobComponent& b) { return sort_key(a) < sort_key(b); });
  components_ = std::move(components);
}

Cobordism Cobordism::identity(int n) {
  std::vector<int> s(static_cast<std::size_t>(std::max(n, 0)));
  std::iota(s.begin(), s.end(), 1);
  return permutation(s);
}

Cobordism Cobordism::connected(int genus, int p, int q) {
  CobComponent c{genus, std::vector<int>(static_cast<std::size_t>(p)), std::vector<int>(static_cast<std::size_t>(q))};
  std::iota(c.in_legs.begin(), c.in_legs.end(), 1);
  std::iota(c.out_legs.begin(), c.out_legs.end(), 1);
  return Cobordism(p, q, {c});
}

Cobordism Cobordism::permutation(const std::vector<int>& sigma) {
  std::vector<CobComponent> comps;
  for (std::size_t i = 0; i < sigma.size(); ++i) comps.push_back({0, {static_cast<int>(i) + 1}, {sigma[i]}});
  const int n = static_cast<int>(sigma.size());
  return Cobordism(n, n, std::move(comps));
}

Cobordism Cobordism::preset(const std::string& name) {
  if (name == "cyl") return identity(1);
  if (name == "pants") return connected(0, 2, 1);
  if (name == "copants") return connected(0, 1, 2);
  if (name == "cap_in") return connected(0, 1, 0);
  if (name == "cap_out") return connected(0, 0, 1);
  if (name == "twist") return permutation({2, 1});
  throw ValidationError("unknown cobordism preset '" + name + "'");
}

Cobordism Cobordism::from_json(const nlohmann::json& j) {
  try {
    std::vector<CobComponent> comps;
    for (const auto& c : j.at("components"))
      comps.push_back({c.value("genus", 0), int_list(c.at("in_legs")), int_list(c.at("out_legs"))});
    return Cobordism(j.at("in").get<int>(), j.at("out").get<int>(), std::move(comps));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("cobordism file: ") + e.what());
  }
}

nlohmann::json Cobordism::to_json() const {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : components_) comps.push_back({{"genus", c.genus}, {"in_legs", c.in_legs}, {"out_legs", c.out_legs}});
  return {{"in", p_}, {"out", q_}, {"components", comps}};
}

int Cobordism::genus() const {
  int g = 0;
  for (const auto& c : components_) g += c.genus;
  return g;
}

Cobordism load_cobordism(const std::string& name_or_path) {
  for (const char* p : {"cyl", "pants", "copants", "cap_in", "cap_out", "twist"})
    if (name_or_path == p) return Cobordism::preset(name_or_path);
  if (!std::filesystem::exists(name_or_path))
    throw ValidationError("unknown cobordism preset or file '" + name_or_path + "'");
  std::ifstream in(name_or_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("cobordism file '" + name_or_path + "': " + e.what());
  }
  return Cobordism::from_json(j);
}

int euler_characteristic(const Cobordism& c) {
  return 2 * static_cast<int>(c.components().size()) - 2 * c.genus() - c.in() - c.out();
}

Cobordism compose(const Cobordism& f, const Cobordism& g) {
  if (f.out() != g.in())
    throw PreconditionError("compose: " + std::to_string(f.out()) + " out-circles glued to " + std::to_string(g.in()) +
                            " in-circles");
  const auto& fc = f.components();
  const auto& gc = g.components();
  const std::size_t kf = fc.size(), n = kf + gc.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::size_t> out_owner(static_cast<std::size_t>(f.out()) + 1), in_owner(out_owner.size());
  for (std::size_t c = 0; c < kf; ++c)
    for (int port : fc[c].out_legs) out_owner[static_cast<std::size_t>(port)] = c;
  for (std::size_t c = 0; c < gc.size(); ++c)
    for (int port : gc[c].in_legs) in_owner[static_cast<std::size_t>(port)] = kf + c;
  for (int port = 1; port <= f.out(); ++port)
    parent[find(out_owner[static_cast<std::size_t>(port)])] = find(in_owner[static_cast<std::size_t>(port)]);

  std::vector<int> edges(n, 0), nodes(n, 0);
  std::vector<CobComponent> merged(n);
  for (int port = 1; port <= f.out(); ++port) ++edges[find(out_owner[static_cast<std::size_t>(port)])];
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t r = find(c);
    ++nodes[r];
    const CobComponent& src = c < kf ? fc[c] : gc[c - kf];
    merged[r].genus += src.genus;
    auto& legs = c < kf ? merged[r].in_legs : merged[r].out_legs;
    const auto& from = c < kf ? src.in_legs : src.out_legs;
    legs.insert(legs.end(), from.begin(), from.end());
  }
  std::vector<CobComponent> comps;
  for (std::size_t r = 0; r < n; ++r)
    if (find(r) == r) {
      merged[r].genus += edges[r] - nodes[r] + 1;
      comps.push_back(std::move(merged[r]));
    }
  Cobordism h(f.in(), g.out(), std::move(comps));
  if (euler_characteristic(h) != euler_characteristic(f) + euler_characteristic(g))
    throw std::logic_error("compose: Euler characteristic not additive");
  return h;
}

Cobordism tensor(const Cobordism& f, const Cobordism& g) {
  std::vector<CobComponent> comps = f.components();
  for (CobComponent c : g.components()) {
    for (int& port : c.in_legs) port += f.in();
    for (int& port : c.out_legs) port += f.out();
    comps.push_back(std::move(c));
  }
  return Cobordism(f.in() + g.in(), f.out() + g.out(), std::move(comps));
}

TQFTMap compose(const TQFTMap& f, const TQFTMap& g) {
  if (f.q != g.p) throw PreconditionError("compose: TQFT map arities do not match");
  return {f.p, g.q, g.matrix * f.matrix};
}

TQFTMap tensor(const TQFTMap& f, const TQFTMap& g) { return {f.p + g.p, f.q + g.q, kronecker(f.matrix, g.matrix)}; }

FrobeniusTQFT::FrobeniusTQFT(const FDAlgebra& a, const FrobeniusStructure& s) : a_(a) {
  if (a.is_graded()) throw ModelError("TQFT evaluation supports degree-0 algebras only");
  if (!a.is_commutative()) throw PreconditionError("TQFT evaluation needs a commutative algebra");
  const Matrix& P = s.pairing;
  if (P.rows() != a.dim() || P.cols() != a.dim()) throw PreconditionError("pairing has the wrong size");
  if (!is_invertible(P)) throw PreconditionError("degenerate pairing");
  if (!verify_frobenius(a, P).frobenius_identity) throw PreconditionError("pairing fails <ab,c> = <a,bc>");
  const Field f = a.field();
  const std::size_t n = a.dim();
  dual_ = inverse(P);
  counit_ = P * a.unit();
  handle_ = zero_vector(f, n);
  for (std::size_t i = 0; i < n; ++i) axpy(handle_, Scalar::one(f), a.multiply(a.basis_vector(i), dual_.column(i)));
}

Matrix FrobeniusTQFT::multiplication(int m) const {
  const std::size_t n = dim();
  std::vector<Vector> cols{a_.unit()};
  for (int step = 0; step < m; ++step) {
    std::vector<Vector> next;
    next.reserve(cols.size() * n);
    for (const auto& c : cols)
      for (std::size_t i = 0; i < n; ++i) next.push_back(step == 0 ? a_.basis_vector(i) : a_.multiply(c, a_.basis_vector(i)));
    cols = std::move(next);
  }
  return Matrix::from_columns(field(), n, cols);
}

Matrix FrobeniusTQFT::comultiplication(int k) const {
  const std::size_t n = dim();
  const Field f = field();
  if (k == 0) {
    Matrix e(f, 1, n);
    for (std::size_t j = 0; j < n; ++j) e(0, j) = counit_[j];
    return e;
  }
  Matrix d = Matrix::identity(f, n);
  if (k == 1) return d;
  // delta(e_j) = sum_i e_j e_i (x) e^i
  Matrix d2(f, n * n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const Vector left = a_.multiply(a_.basis_vector(j), a_.basis_vector(i));
      for (std::size_t x = 0; x < n; ++x) {
        if (left[x].is_zero()) continue;
        for (std::size_t y = 0; y < n; ++y) d2(x * n + y, j) += left[x] * dual_(y, i);
      }
    }
  d = d2;
  for (int step = 2; step < k; ++step) d = kronecker(d, Matrix::identity(f, n)) * d2;
  return d;
}

TQFTMap FrobeniusTQFT::evaluate(const Cobordism& c, bool strict) const {
  const std::size_t n = dim();
  const Field f = field();
  std::vector<Matrix> maps;
  for (const auto& comp : c.components()) {
    if (strict && (comp.in_legs.empty() || comp.out_legs.empty()))
      throw PreconditionError("strict positive boundary: a component lacks an in- or an out-circle");
    Matrix m = multiplication(static_cast<int>(comp.in_legs.size()));
    const Matrix h = a_.left_multiplication(handle_);
    for (int g = 0; g < comp.genus; ++g) m = h * m;
    maps.push_back(comultiplication(static_cast<int>(comp.out_legs.size())) * m);
  }
  const std::size_t cols = ipow(n, c.in()), rows = ipow(n, c.out());
  TQFTMap r{c.in(), c.out(), Matrix(f, rows, cols)};
  std::vector<std::size_t> din(static_cast<std::size_t>(c.in()) + 1), dout(static_cast<std::size_t>(c.out()) + 1);
  for (std::size_t col = 0; col < cols; ++col) {
    for (int k = c.in(), x = static_cast<int>(col); k >= 1; --k, x /= static_cast<int>(n)) din[static_cast<std::size_t>(k)] = x % n;
    for (std::size_t row = 0; row < rows; ++row) {
      for (int k = c.out(), x = static_cast<int>(row); k >= 1; --k, x /= static_cast<int>(n))
        dout[static_cast<std::size_t>(k)] = x % n;
      Scalar v = Scalar::one(f);
      for (std::size_t i = 0; i < maps.size() && !v.is_zero(); ++i) {
        const auto& comp = c.components()[i];
        std::size_t ci = 0, ri = 0;
        for (int port : comp.in_legs) ci = ci * n + din[static_cast<std::size_t>(port)];
        for (int port : comp.out_legs) ri = ri * n + dout[static_cast<std::size_t>(port)];
        v *= maps[i](ri, ci);
      }
      r.matrix(row, col) = v;
    }
  }
  return r;
}

TQFTMap tqft_evaluate(const FDAlgebra& a, const FrobeniusStructure& s, const Cobordism& c, bool strict) {
  return FrobeniusTQFT(a, s).evaluate(c, strict);
}

FrobeniusAlgebraFile load_frobenius_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open algebra file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("algebra file '" + path + "': " + e.what());
  }
  FDAlgebra a = FDAlgebra::from_json(j);
  if (!j.contains("pairing")) {
    FrobeniusStructure s = default_frobenius(a);
    return {std::move(a), std::move(s)};
  }
  Matrix p(a.field(), a.dim(), a.dim());
  try {
    for (const auto& t : j.at("pairing")) {
      if (t.size() != 3) throw ValidationError("algebra file: pairing entries are [i, j, coeff]");
      const auto r = t[0].get<std::size_t>(), c = t[1].get<std::size_t>();
      if (r >= a.dim() || c >= a.dim()) throw ValidationError("algebra file: pairing index out of range");
      p(r, c) = json_coeff(a.field(), t[2]);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("algebra file: ") + e.what());
  }
  FrobeniusStructure s = make_frobenius(a, std::move(p));
  return {std::move(a), std::move(s)};
}

DetLine det_line(const Cobordism& c, BigInt coeff, int power) {
  if (power < 0) throw PreconditionError("det line: negative power");
  return {c.in(), c.out(), -euler_characteristic(c), std::move(coeff), power};
}

DetLine det_compose(const DetLine& x, const DetLine& y) {
  if (x.out != y.in) throw PreconditionError("det_compose: boundary counts do not match");
  if (x.power != y.power) throw PreconditionError("det_compose: twisting powers differ");
  return {x.in, y.out, x.rank + y.rank, x.coeff * y.coeff, x.power};
}

DetLine det_compose_twisted(const DetLine& x, const DetLine& y) {
  DetLine r = det_compose(x, y);
  const auto d = static_cast<unsigned>(x.power);
  r.coeff = boost::multiprecision::pow(x.coeff, d) * boost::multiprecision::pow(y.coeff, d);
  return r;
}

FourTermReport check_four_term(const FourTermDiagram& dg) {
  for (const Matrix* m : {&dg.a, &dg.b, &dg.c, &dg.d})
    if (m->rows() != m->cols()) throw PreconditionError("four-term diagram: vertical maps must be square");
  const std::size_t A = dg.a.rows(), B = dg.b.rows(), C = dg.c.rows(), D = dg.d.rows();
  if (dg.i.rows() != B || dg.i.cols() != A || dg.j.rows() != C || dg.j.cols() != B || dg.k.rows() != D ||
      dg.k.cols() != C)
    throw PreconditionError("four-term diagram: horizontal maps have the wrong shape");
  FourTermReport r;
  const std::size_t ri = rank(dg.i), rj = rank(dg.j), rk = rank(dg.k);
  r.exact = ri == A && (dg.j * dg.i).is_zero() && ri + rj == B && (dg.k * dg.j).is_zero() && rj + rk == C && rk == D;
  r.commutes = dg.i * dg.a == dg.b * dg.i && dg.j * dg.b == dg.c * dg.j && dg.k * dg.c == dg.d * dg.k;
  r.det_a = determinant(dg.a).to_rational();
  r.det_b = determinant(dg.b).to_rational();
  r.det_c = determinant(dg.c).to_rational();
  r.det_d = determinant(dg.d).to_rational();
  r.identity = r.det_a * r.det_c == r.det_b * r.det_d;
  return r;
}

}  // namespace hbv
