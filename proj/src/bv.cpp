#include <stdexcept>
#include <string>

#include "hbv/errors.hpp"
#include "hbv/hochschild/hochschild.hpp"

namespace hbv {

namespace {

nlohmann::json coords_json(const Vector& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

struct Basis {
  std::vector<std::vector<Cochain>> classes;  // classes[n][i]
  std::vector<std::vector<int>> t;
};

Cochain combine(const Cochain& a, const Cochain& b, const Scalar& s) {
  Cochain out = a;
  if (a.degree != b.degree) throw std::logic_error("combining cochains of different degrees");
  axpy(out.values, s, b.values);
  return out;
}

class Checker {
 public:
  Checker(const Hochschild& h, std::string name) : h_(h) { r_.name = std::move(name); }

  // records a case; diff must be a coboundary
  void expect_coboundary(const Cochain& diff, nlohmann::json where) {
    ++r_.cases;
    if (!r_.passed) return;
    bool ok = false;
    if (diff.degree < 0 || is_zero(diff.values)) {
      ok = true;
    } else if (h_.is_cocycle(diff)) {
      ok = h_.is_coboundary(diff);
      if (!ok) where["residual"] = coords_json(h_.class_of(diff).coordinates);
    } else {
      where["residual"] = "not a cocycle";
    }
    if (!ok) fail(std::move(where));
  }

  void expect(bool ok, nlohmann::json where) {
    ++r_.cases;
    if (r_.passed && !ok) fail(std::move(where));
  }

  CheckResult result() const { return r_; }

 private:
  void fail(nlohmann::json where) {
    r_.passed = false;
    r_.witness = std::move(where);
  }

  const Hochschild& h_;
  CheckResult r_;
};

nlohmann::json at(int n, std::size_t i) { return nlohmann::json{{"degree", n}, {"index", i}}; }

}  // namespace

bool BVReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

nlohmann::json BVReport::to_json() const {
  nlohmann::json j;
  j["max_degree"] = max_degree;
  j["certified_degree"] = certified_degree;
  j["dimensions"] = dimensions;
  j["passed"] = passed();
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e{{"name", c.name}, {"passed", c.passed}, {"cases", c.cases}};
    if (!c.passed) e["witness"] = c.witness;
    cs.push_back(std::move(e));
  }
  j["checks"] = std::move(cs);
  return j;
}

BVReport bv_check(const FDAlgebra& a, const FrobeniusStructure& s, int N, BVSignConvention convention,
                  std::size_t budget) {
  if (N < 3) throw std::invalid_argument("bv_check needs truncation degree N >= 3");
  Hochschild h(a, N, budget);
  h.set_frobenius(s);
  const Field f = a.field();
  const Scalar one = Scalar::one(f);
  BVReport rep;
  rep.max_degree = N;
  rep.certified_degree = N - 2;
  rep.dimensions = h.dimensions(Coefficients::Self);

  // basis classes in degrees 0..N-1
  Basis B;
  for (int n = 0; n < N; ++n) {
    B.classes.emplace_back();
    B.t.emplace_back();
    for (std::size_t i = 0; i < h.cohomology(Coefficients::Self, n).dimension(); ++i) {
      B.classes.back().push_back(h.representative(Coefficients::Self, n, i));
      B.t.back().push_back(h.internal_degree(B.classes.back().back()));
    }
  }
  auto sgn = [&](long long k) { return odd_sign(k) ? -one : one; };

  {
    Checker c(h, "delta_unit");
    const Cochain d = h.delta(h.unit());
    c.expect(d.degree == -1 && d.values.empty(), nlohmann::json{{"degree", 0}});
    rep.checks.push_back(c.result());
  }
  {
    Checker c(h, "duality_invertible");
    for (int n = 0; n < N; ++n) {
      const Matrix m = h.induced_map(Coefficients::Self, n, Coefficients::Dual, n,
                                     [&](const Cochain& x) { return h.to_dual(x); });
      c.expect(m.rows() == m.cols() && (m.rows() == 0 || is_invertible(m)), nlohmann::json{{"degree", n}});
      for (const auto& x : B.classes[static_cast<std::size_t>(n)])
        c.expect(h.from_dual(h.to_dual(x)).values == x.values, nlohmann::json{{"degree", n}});
    }
    rep.checks.push_back(c.result());
  }
  {
    Checker descends(h, "delta_cocycle");
    Checker square(h, "delta_square");
    for (int n = 1; n < N; ++n)
      for (std::size_t i = 0; i < B.classes[static_cast<std::size_t>(n)].size(); ++i) {
        const Cochain d = h.delta(B.classes[static_cast<std::size_t>(n)][i]);
        descends.expect(h.is_cocycle(d), at(n, i));
        square.expect_coboundary(h.delta(d), at(n, i));
      }
    rep.checks.push_back(descends.result());
    rep.checks.push_back(square.result());
  }
  {
    Checker seven(h, "seven_term");
    Checker cupc(h, "cup_commutativity");
    Checker anti(h, "antisymmetry");
    Checker cocyc(h, "bracket_cocycle");
    const Scalar flip = convention == BVSignConvention::Standard ? one : -one;
    for (int p = 0; p < N; ++p)
      for (int q = 0; p + q <= N - 1; ++q)
        for (std::size_t i = 0; i < B.classes[static_cast<std::size_t>(p)].size(); ++i)
          for (std::size_t j = 0; j < B.classes[static_cast<std::size_t>(q)].size(); ++j) {
            const Cochain& x = B.classes[static_cast<std::size_t>(p)][i];
            const Cochain& y = B.classes[static_cast<std::size_t>(q)][j];
            const int tx = B.t[static_cast<std::size_t>(p)][i], ty = B.t[static_cast<std::size_t>(q)][j];
            nlohmann::json where{{"x", at(p, i)}, {"y", at(q, j)}};
            const Cochain br = h.gerstenhaber_bracket(x, y);
            cocyc.expect(h.is_cocycle(br), where);
            const Cochain rb = h.gerstenhaber_bracket(y, x);
            anti.expect_coboundary(combine(br, rb, sgn(static_cast<long long>(p - 1) * (q - 1) + tx * ty)), where);
            if (p + q > N - 2) continue;
            const Cochain xy = h.cup(x, y);
            cupc.expect_coboundary(combine(xy, h.cup(y, x), -sgn(static_cast<long long>(p) * q + tx * ty)), where);
            // rhs = (-1)^p (Delta(xy) - Delta(x) y - (-1)^p x Delta(y))
            Cochain rhs = h.delta(xy);
            rhs = combine(rhs, h.cup(h.delta(x), y), -one);
            rhs = combine(rhs, h.cup(x, h.delta(y)), -sgn(p));
            for (auto& v : rhs.values) v *= sgn(p) * flip;
            Cochain diff = combine(br, rhs, -one);
            if (diff.degree >= 0 && h.is_cocycle(br) && h.is_cocycle(rhs) && !h.is_coboundary(diff)) {
              where["bracket"] = coords_json(h.class_of(br).coordinates);
              where["bv_expression"] = coords_json(h.class_of(rhs).coordinates);
            }
            seven.expect_coboundary(diff, where);
          }
    rep.checks.push_back(seven.result());
    rep.checks.push_back(cupc.result());
    rep.checks.push_back(anti.result());
    rep.checks.push_back(cocyc.result());
  }
  {
    Checker jac(h, "jacobi");
    Checker poisson(h, "poisson");
    for (int p = 0; p < N; ++p)
      for (int q = 0; q < N; ++q)
        for (int r = 0; r < N && p + q + r <= N; ++r)
          for (std::size_t i = 0; i < B.classes[static_cast<std::size_t>(p)].size(); ++i)
            for (std::size_t j = 0; j < B.classes[static_cast<std::size_t>(q)].size(); ++j)
              for (std::size_t k = 0; k < B.classes[static_cast<std::size_t>(r)].size(); ++k) {
                const Cochain& x = B.classes[static_cast<std::size_t>(p)][i];
                const Cochain& y = B.classes[static_cast<std::size_t>(q)][j];
                const Cochain& z = B.classes[static_cast<std::size_t>(r)][k];
                const long long tx = B.t[static_cast<std::size_t>(p)][i];
                const long long ty = B.t[static_cast<std::size_t>(q)][j];
                const long long tz = B.t[static_cast<std::size_t>(r)][k];
                const nlohmann::json where{{"x", at(p, i)}, {"y", at(q, j)}, {"z", at(r, k)}};
                if (p + q + r >= 2) {
                  Cochain s1 = h.gerstenhaber_bracket(x, h.gerstenhaber_bracket(y, z));
                  for (auto& v : s1.values) v *= sgn(static_cast<long long>(p - 1) * (r - 1) + tx * tz);
                  s1 = combine(s1, h.gerstenhaber_bracket(y, h.gerstenhaber_bracket(z, x)),
                               sgn(static_cast<long long>(q - 1) * (p - 1) + ty * tx));
                  s1 = combine(s1, h.gerstenhaber_bracket(z, h.gerstenhaber_bracket(x, y)),
                               sgn(static_cast<long long>(r - 1) * (q - 1) + tz * ty));
                  jac.expect_coboundary(s1, where);
                }
                if (p + q + r <= N - 1) {
                  // [x, y u z] = [x,y] u z + (-1)^{(p-1)q + t_x t_y} y u [x,z]
                  Cochain lhs = h.gerstenhaber_bracket(x, h.cup(y, z));
                  lhs = combine(lhs, h.cup(h.gerstenhaber_bracket(x, y), z), -one);
                  lhs = combine(lhs, h.cup(y, h.gerstenhaber_bracket(x, z)),
                                -sgn(static_cast<long long>(p - 1) * q + tx * ty));
                  poisson.expect_coboundary(lhs, where);
                }
              }
    rep.checks.push_back(jac.result());
    rep.checks.push_back(poisson.result());
  }
  return rep;
}

}  // namespace hbv
