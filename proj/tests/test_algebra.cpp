#include <algorithm>
#include <array>
#include <set>

#include "doctest.h"
#include "hbv/algebra/frobenius.hpp"
#include "hbv/errors.hpp"

using namespace hbv;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);

bool in_span(const std::vector<Vector>& basis, const Vector& v) {
  if (basis.empty()) return is_zero(v);
  Matrix m = Matrix::from_columns(v.front().field(), v.size(), basis);
  return solve(m, v).has_value();
}

Vector all_ones(Field f, std::size_t n) { return Vector(n, Scalar::one(f)); }

FDAlgebra sweedler() { return load_algebra_file(std::string(HBV_DATA_DIR) + "/sweedler.json"); }

}  // namespace

TEST_CASE("group presets are valid groups with the right class counts") {
  // class counts from the standard character tables
  const std::vector<std::pair<std::string, std::size_t>> expect = {{"Z2", 2}, {"Z3", 3}, {"Z4", 4}, {"Z6", 6},
                                                                   {"S3", 3}, {"D4", 5}, {"Q8", 5}};
  for (const auto& [name, classes] : expect) {
    const auto g = FiniteGroup::preset(name);
    CHECK(g.conjugacy_classes().size() == classes);
    for (std::size_t x = 0; x < g.order(); ++x) CHECK(g.mul(x, g.inverse(x)) == g.identity());
  }
  CHECK(FiniteGroup::preset("Q8").order() == 8);
  CHECK(!FiniteGroup::preset("D4").is_abelian());
  CHECK(FiniteGroup::preset("S3").centralizer(1).order() == 2);
  CHECK_THROWS_AS(FiniteGroup::preset("A5"), ValidationError);
}

TEST_CASE("malformed group tables name the failing axiom") {
  CHECK_THROWS_WITH_AS(FiniteGroup({"a", "b"}, {{0, 0}, {1, 1}}), "group: table is not a Latin square", ValidationError);
  CHECK_THROWS_WITH_AS(FiniteGroup({"a", "b"}, {{0, 2}, {1, 0}}), doctest::Contains("closure"), ValidationError);
  // Latin square without identity
  CHECK_THROWS_WITH_AS(FiniteGroup({"a", "b", "c"}, {{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}), doctest::Contains("identity"), ValidationError);
  // Latin square with identity but not associative (order-5 loop)
  std::vector<std::vector<std::size_t>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_WITH_AS(FiniteGroup({"e", "a", "b", "c", "d"}, loop), doctest::Contains("associativity"),
                       ValidationError);
  auto j = nlohmann::json::parse(R"({"elements":["1","g"],"table":[[0,1],[1,0]]})");
  CHECK(FiniteGroup::from_json(j).order() == 2);
  CHECK_THROWS_AS(FiniteGroup::from_json(nlohmann::json::parse(R"({"elements":["1"]})")), ValidationError);
}

TEST_CASE("group_algebra examples") {
  auto z2 = group_algebra(FiniteGroup::preset("Z2"), F2);
  CHECK(z2.dim() == 2);
  CHECK(z2.hopf().antipode == Matrix::identity(F2, 2));

  // center of Q[S3]: independent count of conjugacy classes of permutations of {0,1,2}
  std::array<int, 3> p = {0, 1, 2};
  std::vector<std::array<int, 3>> perms;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::set<std::vector<int>> cycle_types;
  for (const auto& q : perms) {
    std::vector<int> lens;
    std::array<bool, 3> seen{};
    for (int i = 0; i < 3; ++i) {
      int l = 0;
      for (int j = i; !seen[j]; j = q[j]) seen[j] = true, ++l;
      if (l) lens.push_back(l);
    }
    std::sort(lens.begin(), lens.end());
    cycle_types.insert(lens);
  }
  auto s3 = group_algebra(FiniteGroup::preset("S3"), Q);
  CHECK(s3.dim() == 6);
  CHECK(s3.center_dimension() == cycle_types.size());
  CHECK(s3.center_dimension() == 3);

  auto z3 = group_algebra(FiniteGroup::preset("Z3"), F3);
  Vector gm1 = z3.basis_vector(1) - z3.unit();  // g - 1
  Vector sq = z3.multiply(gm1, gm1);
  CHECK(!is_zero(sq));
  CHECK(is_zero(z3.multiply(sq, gm1)));
  CHECK(z3.is_commutative());
  CHECK(!s3.is_commutative());
}

TEST_CASE("exterior_algebra examples") {
  auto l3 = exterior_algebra({3}, Q);
  REQUIRE(l3.dim() == 2);
  CHECK(l3.degree(0) == 0);
  CHECK(l3.degree(1) == 3);
  CHECK(l3.top_degree() == 3);

  auto su3 = exterior_algebra({3, 5}, Q);
  std::vector<int> dims(9, 0);
  for (const auto& b : su3.basis()) ++dims.at(b.degree);
  CHECK(dims == std::vector<int>{1, 0, 0, 1, 0, 1, 0, 0, 1});
  CHECK(su3.top_degree() == 8);

  auto l1 = exterior_algebra({1}, Q);
  CHECK(is_zero(l1.multiply(l1.basis_vector(1), l1.basis_vector(1))));
  CHECK(su3.is_commutative());  // graded commutative

  CHECK_THROWS_AS(exterior_algebra({2}, Q), ModelError);
  CHECK_THROWS_AS(exterior_algebra({3}, F2), ModelError);
  CHECK(su3.hopf().antipode(1, 1) == Scalar(Q, -1));
}

TEST_CASE("find_integrals") {
  for (const auto& name : FiniteGroup::preset_names())
    for (Field f : {F2, F3, Q}) {
      auto a = group_algebra(FiniteGroup::preset(name), f);
      auto r = find_integrals(a);
      REQUIRE(r.left.size() == 1);
      REQUIRE(r.right.size() == 1);
      CHECK(in_span(r.left, all_ones(f, a.dim())));
      CHECK(in_span(r.right, all_ones(f, a.dim())));
      CHECK(r.unimodular);
    }
  auto l3 = exterior_algebra({3}, Q);
  auto r = find_integrals(l3);
  REQUIRE(r.left.size() == 1);
  CHECK(in_span(r.left, l3.basis_vector(1)));
  CHECK(r.unimodular);

  auto sw = sweedler();
  auto s = find_integrals(sw);
  // hand solution: left integral x + gx, right integral x - gx
  const Vector left = sw.basis_vector(2) + sw.basis_vector(3);
  const Vector right = sw.basis_vector(2) - sw.basis_vector(3);
  REQUIRE(s.left.size() == 1);
  REQUIRE(s.right.size() == 1);
  CHECK(in_span(s.left, left));
  CHECK(in_span(s.right, right));
  CHECK(!s.unimodular);
}

TEST_CASE("frobenius_from_integral examples") {
  for (const auto& name : FiniteGroup::preset_names())
    for (Field f : {F2, Q}) {
      const auto g = FiniteGroup::preset(name);
      auto a = group_algebra(g, f);
      auto fs = frobenius_from_integral(a, a.basis_vector(g.identity()), a.unit());
      for (std::size_t x = 0; x < g.order(); ++x)
        for (std::size_t y = 0; y < g.order(); ++y)
          CHECK(fs.pairing(x, y) == Scalar(f, g.mul(x, y) == g.identity() ? 1 : 0));
      CHECK(fs.flags.symmetric);
      CHECK(fs.flags.nondegenerate);
      CHECK(fs.flags.frobenius_identity);
      // permutation matrix of g -> g^{-1}
      Matrix perm(f, g.order(), g.order());
      for (std::size_t x = 0; x < g.order(); ++x) perm(x, g.inverse(x)) = Scalar::one(f);
      CHECK(fs.pairing == perm);
    }
  auto l3 = exterior_algebra({3}, Q);
  auto fs = frobenius_from_integral(l3, l3.basis_vector(1), l3.unit());
  CHECK(fs.pairing == Matrix::from_rows(Q, {{0, 1}, {1, 0}}));
  CHECK(fs.degree == 3);

  auto a = group_algebra(FiniteGroup::preset("S3"), Q);
  CHECK_THROWS_AS(frobenius_from_integral(a, a.basis_vector(0), a.basis_vector(1)), PreconditionError);
  CHECK_THROWS_AS(frobenius_from_integral(a, a.basis_vector(1), a.unit()), PreconditionError);
}

TEST_CASE("verify_frobenius examples") {
  auto a = group_algebra(FiniteGroup::preset("Z3"), Q);
  auto r = verify_frobenius(a, Matrix(Q, 3, 3));
  CHECK(!r.nondegenerate);
  auto m2 = matrix_algebra(2, Q);
  auto t = trace_frobenius(m2, 2);
  CHECK(t.flags.nondegenerate);
  CHECK(t.flags.frobenius_identity);
  CHECK(t.flags.symmetric);
  // a non-invariant pairing on M2 fails the identity
  auto bad = verify_frobenius(m2, Matrix::identity(Q, 4));
  CHECK(bad.nondegenerate);
  CHECK(!bad.frobenius_identity);
  CHECK(bad.identity_witness.has_value());
}

TEST_CASE("lambda_L") {
  auto z2 = lambda_L(group_algebra(FiniteGroup::preset("Z2"), F2));
  CHECK(z2.matrix == Matrix::identity(F2, 2));
  CHECK(z2.bimodule);
  auto z3 = lambda_L(group_algebra(FiniteGroup::preset("Z3"), Q));
  CHECK(z3.matrix == Matrix::from_rows(Q, {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}));
  for (const auto& name : FiniteGroup::preset_names()) {
    const auto g = FiniteGroup::preset(name);
    auto l = lambda_L(group_algebra(g, F3));
    CHECK(l.bimodule);
    for (std::size_t x = 0; x < g.order(); ++x) CHECK(l.matrix(g.inverse(x), x).is_one());
  }
}

TEST_CASE("lie_pairing on exterior models") {
  auto l3 = lie_pairing(exterior_algebra({3}, Q));
  CHECK(l3.pairing == Matrix::from_rows(Q, {{0, 1}, {1, 0}}));
  CHECK(l3.flags.symmetric);

  auto su3 = exterior_algebra({3, 5}, Q);
  auto lp = lie_pairing(su3);
  // basis 1, x3, x5, x3x5; x5 x3 = -x3 x5 (Koszul)
  CHECK(lp.pairing(1, 2) == Scalar(Q, 1));
  CHECK(lp.pairing(2, 1) == Scalar(Q, -1));
  CHECK(lp.pairing(0, 3) == Scalar(Q, 1));
  CHECK(rank(lp.pairing) == 4);
  CHECK(lp.degree == 8);
  CHECK(lp.flags.symmetric);
  CHECK(lp.flags.frobenius_identity);
  CHECK(lp.flags.nondegenerate);

  CHECK_THROWS_AS(lie_pairing(group_algebra(FiniteGroup::preset("Z2"), Q)), ModelError);
}

TEST_CASE("sweedler algebra is not symmetric") {
  auto sw = sweedler();
  auto sym = symmetric_form_exists(sw);
  CHECK(sym.decided);
  CHECK(!sym.exists);
  auto u = find_s2_conjugator(sw);
  REQUIRE(u);
  auto dual = dual_hopf_algebra(sw);
  auto di = find_integrals(dual);
  REQUIRE(di.left.size() == 1);
  auto fs = frobenius_from_integral(sw, di.left[0], *u);
  CHECK(fs.flags.nondegenerate);
  CHECK(fs.flags.frobenius_identity);
  CHECK(!fs.flags.symmetric);
}

TEST_CASE("property: symmetric Frobenius for connected graded models") {
  const std::vector<std::vector<int>> models = {{1}, {3}, {5}, {3, 5}, {1, 3}, {3, 3}, {1, 3, 5}, {3, 5, 7}};
  for (Field f : {Q, F3}) {
    for (const auto& m : models) {
      auto a = exterior_algebra(m, f);
      auto lp = lie_pairing(a);
      CHECK(lp.flags.symmetric);
      CHECK(lp.flags.nondegenerate);
      CHECK(lp.flags.frobenius_identity);
      int d = 0;
      for (int x : m) d += x;
      CHECK(lp.degree == d);
    }
  }
}

TEST_CASE("property: unimodular with inner S^2 gives a symmetric form") {
  std::vector<FDAlgebra> algs;
  for (const auto& name : FiniteGroup::preset_names())
    for (Field f : {F2, F3, Q}) algs.push_back(group_algebra(FiniteGroup::preset(name), f));
  for (const auto& m : std::vector<std::vector<int>>{{3}, {3, 5}, {1, 3, 5}}) algs.push_back(exterior_algebra(m, Q));
  for (const auto& a : algs) {
    auto ir = find_integrals(a);
    auto u = find_s2_conjugator(a);
    REQUIRE(ir.unimodular);
    REQUIRE(u);
    auto di = find_integrals(dual_hopf_algebra(a));
    REQUIRE(!di.left.empty());
    auto fs = frobenius_from_integral(a, di.left[0], *u);
    CHECK(fs.flags.symmetric);
    CHECK(fs.flags.nondegenerate);
  }
}

TEST_CASE("algebra JSON round trip and errors") {
  auto a = group_algebra(FiniteGroup::preset("S3"), F3);
  auto b = FDAlgebra::from_json(a.to_json());
  CHECK(b.dim() == 6);
  CHECK(b.to_json() == a.to_json());
  auto j = a.to_json();
  j["mult"][0][3] = "2";
  CHECK_THROWS_AS(FDAlgebra::from_json(j), ValidationError);
  auto e = exterior_algebra({3, 5}, Q);
  CHECK(FDAlgebra::from_json(e.to_json()).to_json() == e.to_json());
  CHECK_THROWS_AS(load_algebra_file("/nonexistent.json"), ValidationError);
}
