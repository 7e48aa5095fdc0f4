// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hbv/cyclic/cyclic.hpp"
#include "hbv/errors.hpp"
#include "hbv/tqft/tqft.hpp"
#include "tqft_random.hpp"

using namespace hbv;
using namespace hbv::testing;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);

FDAlgebra ga(const std::string& g, Field f) { return group_algebra(FiniteGroup::preset(g), f); }

std::string label(const std::string& g, Field f) { return f.name() + "[" + g + "]"; }

/// Collects failures of one criterion.
struct Ledger {
  std::vector<std::string> failures;
  std::size_t cases = 0;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (!ok) failures.push_back(what);
  }
};

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }
};

std::string dims(const std::vector<std::size_t>& d) {
  std::ostringstream s;
  for (std::size_t i = 0; i < d.size(); ++i) s << (i ? "," : "") << d[i];
  return s.str();
}

void semisimple_vanishing(Ledger& l, double& worst) {
  for (const char* g : {"Z2", "Z3", "S3"}) {
    Timer t;
    const auto a = ga(g, Q);
    const auto d = Hochschild(a, 4).dimensions(Coefficients::Dual);
    const std::size_t classes = a.group()->conjugacy_classes().size();
    bool ok = d.size() == 5 && d[0] == classes;
    for (std::size_t n = 1; n < d.size(); ++n) ok = ok && d[n] == 0;
    const double s = t.seconds();
    worst = std::max(worst, s);
    l.expect(ok, label(g, Q) + " dims " + dims(d));
    l.expect(s < 10.0, label(g, Q) + " took " + std::to_string(s) + " s");
  }
}

void bv_suite(Ledger& l) {
  const std::vector<std::tuple<std::string, FDAlgebra, int>> cases = {
      {"F2[Z2]", ga("Z2", F2), 4}, {"F3[Z3]", ga("Z3", F3), 4}, {"F3[S3]", ga("S3", F3), 3},
      {"L(x3)/Q", exterior_algebra({3}, Q), 3}};
  for (const auto& [name, a, N] : cases) {
    const BVReport r = bv_check(a, default_frobenius(a), N);
    std::string failed;
    for (const auto& c : r.checks)
      if (!c.passed) failed += " " + c.name;
    l.expect(r.passed(), name + " failed:" + failed);
  }
}

void oracle_equivalence(Ledger& l) {
  for (const char* g : {"Z2", "Z3", "Z4", "Z6", "S3", "D4", "Q8"})
    for (Field f : {F2, F3, Q}) {
      const auto a = ga(g, f);
      const auto hh = Hochschild(a, 4).dimensions(Coefficients::Self);
      const auto oracle = centralizer_oracle(*a.group(), f, 4);
      l.expect(hh == oracle, label(g, f) + " HH " + dims(hh) + " vs " + dims(oracle));
    }
}

void frobenius_hopf(Ledger& l) {
  for (const auto& name : FiniteGroup::preset_names())
    for (Field f : {F2, F3, Q}) {
      const auto a = ga(name, f);
      const IntegralReport ir = find_integrals(a);
      const Vector ones(a.dim(), Scalar::one(f));
      auto is_sum = [&](const std::vector<Vector>& vs) {
        if (vs.size() != 1) return false;
        std::size_t k = 0;
        while (k < a.dim() && vs[0][k].is_zero()) ++k;
        return k < a.dim() && scaled(vs[0], vs[0][k].inverse()) == ones;
      };
      l.expect(is_sum(ir.left) && is_sum(ir.right) && ir.unimodular, label(name, f) + " integrals");
      const LambdaL lam = lambda_L(a);
      bool inverse_pattern = true;
      for (std::size_t x = 0; x < a.dim(); ++x)
        inverse_pattern = inverse_pattern && lam.matrix(a.group()->inverse(x), x).is_one();
      const FrobeniusReport fr = verify_frobenius(a, group_frobenius(a).pairing);
      l.expect(lam.bimodule && inverse_pattern && fr.symmetric && fr.nondegenerate && fr.frobenius_identity,
               label(name, f) + " lambda_L pairing");
    }
  for (const std::vector<int>& degs : std::vector<std::vector<int>>{{1}, {3}, {1, 3}, {3, 5}, {1, 3, 5}})
    for (Field f : {F3, Q}) {
      const auto a = exterior_algebra(degs, f);
      const FrobeniusStructure s = lie_pairing(a);
      l.expect(s.flags.symmetric && s.flags.nondegenerate && s.flags.frobenius_identity,
               "exterior model over " + f.name() + " not symmetric Frobenius");
    }
  const FDAlgebra sw = load_algebra_file(std::string(HBV_DATA_DIR) + "/sweedler.json");
  const IntegralReport ir = find_integrals(sw);
  const SymmetricFormSearch sym = symmetric_form_exists(sw);
  const auto u = find_s2_conjugator(sw);
  const auto di = find_integrals(dual_hopf_algebra(sw));
  bool hopf_form_nonsymmetric = false;
  if (u && di.left.size() == 1) {
    const FrobeniusStructure s = frobenius_from_integral(sw, di.left[0], *u);
    hopf_form_nonsymmetric = s.flags.nondegenerate && s.flags.frobenius_identity && !s.flags.symmetric;
  }
  l.expect(!ir.unimodular, "Sweedler algebra reported unimodular");
  l.expect(sym.decided && !sym.exists, "Sweedler algebra reported symmetric");
  l.expect(hopf_form_nonsymmetric, "Sweedler Hopf Frobenius form");
}

void connes_sequence(Ledger& l) {
  for (const auto& [name, a] : {std::pair{std::string("F2[Z2]"), ga("Z2", F2)}, std::pair{std::string("F3[Z3]"), ga("Z3", F3)}}) {
    CyclicComplex c(a, 4);
    const ConnesMaps m = connes_maps(c);
    for (const auto& ch : m.checks) l.expect(ch.passed, name + " " + ch.name);
    const Hochschild& h = c.hochschild();
    for (int n = 1; n <= 4; ++n) {
      const Matrix bd = h.induced_map(Coefficients::Dual, n, Coefficients::Dual, n - 1,
                                      [&](const Cochain& x) { return h.connes_B_dual(x); });
      l.expect(m.I.at(n - 1) * m.boundary.at(n) == bd, name + " I o d != H(B^dual) in degree " + std::to_string(n));
    }
  }
}

void string_bracket(Ledger& l) {
  const auto a = ga("Z2", F2);
  const StringReport lie = string_bracket_check(a, default_frobenius(a), 4);
  const StringReport mor = lie_morphism_check(a, default_frobenius(a), 4);
  for (const auto* r : {&lie, &mor})
    for (const auto& c : r->checks) {
      l.expect(c.passed, "F2[Z2] " + c.name);
      l.expect(c.cases > 0, "F2[Z2] " + c.name + " ran no cases");
    }
}

void tqft_prop(Ledger& l) {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> ar(0, 3), gen(0, 2);
  const auto z3 = ga("Z3", Q);
  const FrobeniusTQFT t(z3, group_frobenius(z3));
  const auto dn = FDAlgebra::from_json(nlohmann::json::parse(R"({"field": {"type": "Q"},
      "basis": [{"name": "1"}, {"name": "x"}], "unit": [1, 0], "mult": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]]})"));
  const FrobeniusTQFT td(dn, make_frobenius(dn, Matrix::from_rows(Q, {{0, 1}, {1, 0}})));
  for (int trial = 0; trial < 200; ++trial) {
    const std::string at = "instance " + std::to_string(trial) + ": ";
    const FrobeniusTQFT& e = trial % 2 ? t : td;
    const int p = ar(rng), q = ar(rng), r = ar(rng), s = ar(rng);
    const Cobordism f = random_cobordism(rng, p, q), g = random_cobordism(rng, q, r), h = random_cobordism(rng, r, s);
    l.expect(compose(compose(f, g), h) == compose(f, compose(g, h)), at + "vertical associativity");
    l.expect(tensor(tensor(f, g), h) == tensor(f, tensor(g, h)), at + "horizontal associativity");
    l.expect(compose(Cobordism::identity(p), f) == f && compose(f, Cobordism::identity(q)) == f, at + "identity");
    const Cobordism f2 = random_cobordism(rng, s, p), g2 = random_cobordism(rng, p, r);
    l.expect(compose(tensor(f, f2), tensor(g, g2)) == tensor(compose(f, g), compose(f2, g2)), at + "interchange");
    l.expect(compose(tensor(f, h), block_braid(q, s)) == compose(block_braid(p, r), tensor(h, f)), at + "symmetry");
    l.expect(euler_characteristic(compose(f, g)) == euler_characteristic(f) + euler_characteristic(g) &&
                 euler_characteristic(tensor(f, h)) == euler_characteristic(f) + euler_characteristic(h),
             at + "chi additivity");
    l.expect(e.evaluate(compose(f, g)).matrix == compose(e.evaluate(f), e.evaluate(g)).matrix, at + "evaluate(g o f)");
    const Cobordism small = random_cobordism(rng, ar(rng) % 2, ar(rng) % 2);
    l.expect(e.evaluate(tensor(f, small)).matrix == tensor(e.evaluate(f), e.evaluate(small)).matrix,
             at + "evaluate(f u g)");
    l.expect(det_compose(det_line(f), det_line(g)).rank == -euler_characteristic(compose(f, g)), at + "det rank");
    const int gg = gen(rng), pp = ar(rng), qq = ar(rng);
    const Cobordism target = Cobordism::connected(gg, pp, qq);
    const Matrix expect = e.evaluate(target).matrix;
    for (int rep = 0; rep < 2; ++rep) {
      const auto word = random_decomposition(rng, gg, pp, qq);
      Cobordism c = word.front();
      TQFTMap v = e.evaluate(word.front());
      for (std::size_t i = 1; i < word.size(); ++i) {
        c = compose(c, word[i]);
        v = compose(v, e.evaluate(word[i]));
      }
      l.expect(c == target && v.matrix == expect, at + "decomposition invariance");
    }
  }
  std::int64_t scale = 1;
  for (int g = 0; g <= 3; ++g, scale *= 3)
    l.expect(t.evaluate(Cobordism::connected(g, 1, 1)).matrix == Matrix::identity(Q, 3).scaled(Scalar(Q, scale)),
             "genus " + std::to_string(g) + " on Q[Z3]");
  const FourTermDiagram dg{Matrix::from_rows(Q, {{1}, {0}}),      Matrix::from_rows(Q, {{0, 1}, {0, 0}}),
                           Matrix::from_rows(Q, {{0, 1}}),        Matrix::from_rows(Q, {{2}}),
                           Matrix::from_rows(Q, {{2, 5}, {0, 3}}), Matrix::from_rows(Q, {{3, -4}, {0, 1}}),
                           Matrix::from_rows(Q, {{1}})};
  const FourTermReport fr = check_four_term(dg);
  l.expect(fr.exact && fr.commutes && fr.det_b == 6 && fr.identity, "det(a)det(c) = det(b)det(d)");
}

struct Criterion {
  int index;
  std::string name;
  double limit;  // seconds
  std::function<void(Ledger&, double&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "semisimple vanishing: HH^n(Q[G]; Q[G]^dual) = 0 for 1<=n<=4, HH^0 = #classes (Z2, Z3, S3)", 30.0,
       [](Ledger& l, double& worst) { semisimple_vanishing(l, worst); }},
      {2, "BV suite: F2[Z2] N=4, F3[Z3] N=4, F3[S3] N=3, L(x3)/Q N=3", 120.0,
       [](Ledger& l, double&) { bv_suite(l); }},
      {3, "oracle equivalence: HH^n(F[G]; F[G]) = sum over classes of H^n(C_G(g); F), |G|<=8, F2/F3/Q, n<=4", 300.0,
       [](Ledger& l, double&) { oracle_equivalence(l); }},
      {4, "Frobenius/Hopf: integrals, lambda_L symmetric, exterior models symmetric, Sweedler non-symmetric", 60.0,
       [](Ledger& l, double&) { frobenius_hopf(l); }},
      {5, "Connes sequence: exactness and I o d = H(B^dual) for F2[Z2], F3[Z3], N=4", 60.0,
       [](Ledger& l, double&) { connes_sequence(l); }},
      {6, "string bracket: antisymmetry, Jacobi, Lie morphism on F2[Z2], N=4", 60.0,
       [](Ledger& l, double&) { string_bracket(l); }},
      {7, "TQFT/prop: 200 random instances, genus-g on Q[Z3] = 3^g id, four-term determinant", 60.0,
       [](Ledger& l, double&) { tqft_prop(l); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Ledger l;
    double worst = 0;
    Timer t;
    std::string error;
    try {
      c.run(l, worst);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double s = t.seconds();
    const bool ok = error.empty() && l.failures.empty() && s < c.limit;
    if (!ok) ++failed;
    std::printf("[%s] %d. %s (%zu cases, %.2f s", ok ? "PASS" : "FAIL", c.index, c.name.c_str(), l.cases, s);
    if (c.index == 1) std::printf(", slowest %.2f s", worst);
    std::printf(")\n");
    if (!error.empty()) std::printf("       exception: %s\n", error.c_str());
    if (s >= c.limit) std::printf("       over the %.0f s limit\n", c.limit);
    for (std::size_t i = 0; i < l.failures.size() && i < 10; ++i) std::printf("       %s\n", l.failures[i].c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
