#include <random>

#include "doctest.h"
#include "hbv/errors.hpp"
#include "hbv/linalg/complex.hpp"

using namespace hbv;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);

Matrix random_matrix(std::mt19937& rng, Field f, std::size_t r, std::size_t c, int density = 2) {
  std::uniform_int_distribution<int> val(-3, 3), keep(0, density);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng) != 0) m(i, j) = Scalar(f, val(rng));
  return m;
}

// random complex C^0 -> C^1 -> C^2 with d1 d0 = 0, built as d1 = random * projection onto coker
Complex random_complex(std::mt19937& rng, Field f, std::size_t n0, std::size_t n1, std::size_t n2) {
  Matrix d0 = random_matrix(rng, f, n1, n0);
  // rows of d1 are functionals killing the image of d0: combinations of the left kernel basis
  auto left = kernel_basis(d0.transpose());
  Matrix d1(f, n2, n1);
  std::uniform_int_distribution<int> val(-2, 2);
  for (std::size_t i = 0; i < n2; ++i)
    for (const auto& v : left) {
      const Scalar c(f, val(rng));
      for (std::size_t j = 0; j < n1; ++j) d1(i, j) += c * v[j];
    }
  Complex c(f, 0, 1);
  c.set_space(0, n0);
  c.set_space(1, n1);
  c.set_space(2, n2);
  c.set_differential(0, SparseMatrix::from_dense(d0));
  c.set_differential(1, SparseMatrix::from_dense(d1));
  c.check_square_zero();
  return c;
}

}  // namespace

TEST_CASE("scalar arithmetic") {
  Scalar a(Q, 6, -4);
  CHECK(a.to_string() == "-3/2");
  CHECK((a * Scalar(Q, 2)).to_string() == "-3");
  CHECK(Scalar(F3, 5).residue() == 2);
  CHECK(Scalar(F3, -1).residue() == 2);
  CHECK((Scalar(F3, 2) * Scalar(F3, 2)).residue() == 1);
  CHECK(Scalar::parse(Q, "10/4").to_string() == "5/2");
  CHECK_THROWS_AS(Scalar::zero(Q).inverse(), std::domain_error);
  CHECK_THROWS(Field::prime(4));
  CHECK(Field::parse("Fp:7").characteristic() == 7);
  CHECK(Field::parse("Q").is_rational());
}

TEST_CASE("rational overflow falls back to big integers") {
  Scalar x(Q, 1);
  const Scalar big(Q, std::int64_t{1} << 40);
  for (int i = 0; i < 5; ++i) x *= big;
  CHECK(x.to_rational() == BigRational(BigInt(1) << 200));
  for (int i = 0; i < 5; ++i) x /= big;
  CHECK(x.is_one());
  Scalar h(Q, 1, 3);
  for (int i = 0; i < 60; ++i) h += Scalar(Q, 1, 3 + i);
  h -= h;
  CHECK(h.is_zero());
}

TEST_CASE("rref examples") {
  auto id = Matrix::identity(Q, 2);
  auto r = rref(id);
  CHECK(r.echelon == id);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1});
  CHECK(r.rank == 2);

  Matrix z(Q, 3, 2);
  r = rref(z);
  CHECK(r.echelon == z);
  CHECK(r.pivots.empty());
  CHECK(r.rank == 0);

  r = rref(Matrix::from_rows(Q, {{2, 4}, {1, 2}}));
  CHECK(r.echelon == Matrix::from_rows(Q, {{1, 2}, {0, 0}}));
  CHECK(r.pivots == std::vector<std::size_t>{0});
  CHECK(r.rank == 1);
}

TEST_CASE("kernel examples") {
  CHECK(kernel_basis(Matrix::identity(Q, 3)).empty());
  auto k = kernel_basis(Matrix(F3, 3, 3));
  REQUIRE(k.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(k[i] == unit_vector(F3, 3, i));
  k = kernel_basis(Matrix::from_rows(F2, {{1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == Vector{Scalar(F2, 1), Scalar(F2, 1)});
}

TEST_CASE("sparse and dense kernels agree") {
  std::mt19937 rng(7);
  for (Field f : {Q, F2, F3}) {
    for (int trial = 0; trial < 30; ++trial) {
      Matrix m = random_matrix(rng, f, 1 + rng() % 6, 1 + rng() % 7);
      auto sm = SparseMatrix::from_dense(m);
      CHECK(rank(sm) == rank(m));
      CHECK(kernel_basis(sm) == kernel_basis(m));
    }
  }
}

TEST_CASE("rank-nullity and rref idempotence") {
  std::mt19937 rng(11);
  for (Field f : {Q, F2, F3}) {
    for (int trial = 0; trial < 60; ++trial) {
      Matrix m = random_matrix(rng, f, 1 + rng() % 7, 1 + rng() % 7);
      auto r = rref(m);
      auto k = kernel_basis(m);
      CHECK(r.rank + k.size() == m.cols());
      CHECK(rref(r.echelon).echelon == r.echelon);
      for (const auto& v : k) CHECK(is_zero(m * v));
      for (std::size_t i = 1; i < r.pivots.size(); ++i) CHECK(r.pivots[i - 1] < r.pivots[i]);
    }
  }
}

TEST_CASE("inverse, solve and determinant") {
  auto m = Matrix::from_rows(Q, {{2, 1}, {7, 4}});
  CHECK(determinant(m) == Scalar(Q, 1));
  CHECK(inverse(m) * m == Matrix::identity(Q, 2));
  auto x = solve(m, Vector{Scalar(Q, 3), Scalar(Q, 11)});
  REQUIRE(x);
  CHECK(m * *x == Vector{Scalar(Q, 3), Scalar(Q, 11)});
  auto s = Matrix::from_rows(Q, {{1, 2}, {2, 4}});
  CHECK(!solve(s, Vector{Scalar(Q, 1), Scalar(Q, 0)}));
  CHECK_THROWS_AS(inverse(s), std::domain_error);
  CHECK(determinant(Matrix::from_rows(Q, {{2, 3}, {0, 3}})) == Scalar(Q, 6));
}

TEST_CASE("cohomology_at examples") {
  {
    // 0 -> F -> F -> 0 with identity: exact
    Complex c(Q, 0, 1);
    c.set_space(0, 1);
    c.set_space(1, 1);
    c.set_differential(0, SparseMatrix::from_dense(Matrix::identity(Q, 1)));
    c.set_differential(1, SparseMatrix(Q, 0, 1));
    CHECK(cohomology_at(c, 1).dimension() == 0);
    CHECK(cohomology_dimension(c, 1) == 0);
  }
  {
    Complex c(F3, 0, 2);
    for (int n = 0; n <= 3; ++n) c.set_space(n, 3);
    for (int n = 0; n <= 2; ++n) c.set_differential(n, SparseMatrix(F3, 3, 3));
    CHECK(cohomology_at(c, 1).dimension() == 3);
    CHECK(cohomology_at(c, 2).dimension() == 3);
  }
  {
    Complex c(Q, 0, 1);
    c.set_space(0, 2);
    c.set_space(1, 2);
    c.set_space(2, 2);
    c.set_differential(0, SparseMatrix::from_dense(Matrix(Q, 2, 2)));
    c.set_differential(1, SparseMatrix::from_dense(Matrix::from_rows(Q, {{1, 0}, {0, 0}})));
    c.check_square_zero();
    auto h = cohomology_at(c, 1);
    CHECK(h.dimension() == 1);
    CHECK(h.representatives()[0] == unit_vector(Q, 2, 1));
    CHECK(cohomology_dimension(c, 1) == 1);
    CHECK_THROWS_AS(cohomology_at(c, 2), WindowError);
  }
}

TEST_CASE("square-zero assertion names the degree") {
  Complex c(Q, 0, 1);
  c.set_space(0, 1);
  c.set_space(1, 1);
  c.set_space(2, 1);
  c.set_differential(0, SparseMatrix::from_dense(Matrix::identity(Q, 1)));
  c.set_differential(1, SparseMatrix::from_dense(Matrix::identity(Q, 1)));
  CHECK_THROWS_WITH_AS(c.check_square_zero(), "d^1 d^0 != 0", std::logic_error);
}

TEST_CASE("cohomology dimension is invariant under change of basis") {
  std::mt19937 rng(3);
  for (Field f : {Q, F2, F3}) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n0 = 1 + rng() % 4, n1 = 2 + rng() % 4, n2 = 1 + rng() % 4;
      Complex c = random_complex(rng, f, n0, n1, n2);
      Matrix p = random_matrix(rng, f, n1, n1, 3);
      while (!is_invertible(p)) p = random_matrix(rng, f, n1, n1, 3);
      Complex c2(f, 0, 1);
      c2.set_space(0, n0);
      c2.set_space(1, n1);
      c2.set_space(2, n2);
      c2.set_differential(0, SparseMatrix::from_dense(p * c.differential(0).to_dense()));
      c2.set_differential(1, SparseMatrix::from_dense(c.differential(1).to_dense() * inverse(p)));
      c2.check_square_zero();
      auto h = cohomology_at(c, 1);
      CHECK(h.dimension() == cohomology_at(c2, 1).dimension());
      CHECK(h.dimension() == cohomology_dimension(c, 1));
      // coordinates: representatives map to unit vectors, coboundaries to zero
      for (std::size_t i = 0; i < h.dimension(); ++i)
        CHECK(*h.coordinates(h.representatives()[i]) == unit_vector(f, h.dimension(), i));
      Vector b = c.differential(0) * unit_vector(f, n0, 0);
      CHECK(h.is_coboundary(b));
    }
  }
}
