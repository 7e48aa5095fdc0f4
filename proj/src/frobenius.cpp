#include "hbv/algebra/frobenius.hpp"

#include <functional>

#include "hbv/errors.hpp"

namespace hbv {

namespace {

bool odd_product(int a, int b) { return ((a * b) & 1) != 0; }

// Stacks the matrices vertically.
Matrix stack(const std::vector<Matrix>& blocks, Field f, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  Matrix m(f, rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) m(r0 + i, j) = b(i, j);
    r0 += b.rows();
  }
  return m;
}

Scalar apply_functional(const Vector& phi, const Vector& x) {
  Scalar s = Scalar::zero(phi.front().field());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) s += phi[i] * x[i];
  return s;
}

}  // namespace

IntegralReport find_integrals(const FDAlgebra& a) {
  const HopfData& h = a.hopf();
  const Field f = a.field();
  const std::size_t n = a.dim();
  std::vector<Matrix> left_sys, right_sys;
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix eps = Matrix::identity(f, n).scaled(h.counit[i]);
    left_sys.push_back(a.left_multiplication(a.basis_vector(i)) - eps);
    right_sys.push_back(a.right_multiplication(a.basis_vector(i)) - eps);
  }
  IntegralReport r;
  r.left = kernel_basis(stack(left_sys, f, n));
  r.right = kernel_basis(stack(right_sys, f, n));
  std::vector<Matrix> both = left_sys;
  both.insert(both.end(), right_sys.begin(), right_sys.end());
  r.two_sided = kernel_basis(stack(both, f, n));
  r.unimodular = !r.two_sided.empty();
  return r;
}

FrobeniusReport verify_frobenius(const FDAlgebra& a, const Matrix& p) {
  const std::size_t n = a.dim();
  if (p.rows() != n || p.cols() != n) throw std::invalid_argument("pairing matrix has wrong shape");
  FrobeniusReport r;
  r.nondegenerate = is_invertible(p);
  r.frobenius_identity = true;
  // <e_i, e_j e_k> = <e_i e_j, e_k>
  for (std::size_t i = 0; i < n && r.frobenius_identity; ++i)
    for (std::size_t j = 0; j < n && r.frobenius_identity; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Scalar lhs = Scalar::zero(a.field()), rhs = Scalar::zero(a.field());
        for (const auto& [m, c] : a.product(j, k)) lhs += c * p(i, m);
        for (const auto& [m, c] : a.product(i, j)) rhs += c * p(m, k);
        if (lhs != rhs) {
          r.frobenius_identity = false;
          r.identity_witness = std::array<std::size_t, 3>{i, j, k};
          break;
        }
      }
  r.symmetric = true;
  for (std::size_t i = 0; i < n && r.symmetric; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const Scalar other = odd_product(a.degree(i), a.degree(j)) ? -p(j, i) : p(j, i);
      if (p(i, j) != other) {
        r.symmetric = false;
        r.symmetry_witness = std::make_pair(i, j);
        break;
      }
    }
  return r;
}

FrobeniusStructure make_frobenius(const FDAlgebra& a, Matrix pairing) {
  FrobeniusStructure s;
  s.flags = verify_frobenius(a, pairing);
  s.degree = 0;
  bool set = false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!pairing(i, j).is_zero()) {
        const int d = a.degree(i) + a.degree(j);
        if (set && d != s.degree) throw PreconditionError("pairing is not homogeneous");
        s.degree = d;
        set = true;
      }
  s.pairing = std::move(pairing);
  return s;
}

std::optional<Vector> find_s2_conjugator(const FDAlgebra& a) {
  const HopfData& h = a.hopf();
  const Field f = a.field();
  const std::size_t n = a.dim();
  const Matrix s2 = h.antipode * h.antipode;
  // u -> S^2(e_i) u - u e_i
  std::vector<Matrix> sys;
  for (std::size_t i = 0; i < n; ++i)
    sys.push_back(a.left_multiplication(s2.column(i)) - a.right_multiplication(a.basis_vector(i)));
  const Matrix m = stack(sys, f, n);
  if (is_zero(m * a.unit())) return a.unit();
  const auto k = kernel_basis(m);
  if (k.empty()) return std::nullopt;
  for (const auto& v : k)
    if (a.is_invertible(v)) return v;
  // coefficient vectors with entries in {0..bound}, increasing max-norm
  const std::size_t bound = f.is_rational() ? 3 : std::min<std::size_t>(3, f.characteristic() - 1);
  std::size_t tried = 0;
  for (std::size_t level = 1; level <= bound; ++level) {
    std::vector<std::size_t> c(k.size(), 0);
    for (;;) {
      std::size_t i = 0;
      while (i < c.size() && c[i] == level) c[i++] = 0;
      if (i == c.size()) break;
      ++c[i];
      bool at_level = false;
      for (auto x : c) at_level = at_level || x == level;
      if (!at_level) continue;
      if (++tried > 20000) return std::nullopt;
      Vector v = zero_vector(f, n);
      for (std::size_t j = 0; j < k.size(); ++j) axpy(v, Scalar(f, static_cast<std::int64_t>(c[j])), k[j]);
      if (a.is_invertible(v)) return v;
    }
  }
  return std::nullopt;
}

FrobeniusStructure frobenius_from_integral(const FDAlgebra& a, const Vector& lambda, const Vector& u) {
  const std::size_t n = a.dim();
  const Field f = a.field();
  if (lambda.size() != n || u.size() != n) throw std::invalid_argument("lambda/u have wrong length");
  const FDAlgebra dual = dual_hopf_algebra(a);
  // left integral in the dual: phi * lambda = phi(1) lambda
  for (std::size_t i = 0; i < n; ++i) {
    const Vector prod = dual.multiply(dual.basis_vector(i), lambda);
    if (prod != scaled(lambda, dual.hopf().counit[i]))
      throw PreconditionError("lambda is not a left integral of the dual Hopf algebra");
  }
  if (is_zero(lambda)) throw PreconditionError("lambda is zero");
  if (!a.is_invertible(u)) throw PreconditionError("u is not invertible");
  const Matrix s2 = a.hopf().antipode * a.hopf().antipode;
  for (std::size_t i = 0; i < n; ++i)
    if (a.multiply(s2.column(i), u) != a.multiply(u, a.basis_vector(i)))
      throw PreconditionError("u does not satisfy S^2(h) u = u h at basis element '" + a.basis()[i].name + "'");
  Matrix p(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      p(i, j) = apply_functional(lambda, a.multiply(a.multiply(a.basis_vector(i), a.basis_vector(j)), u));
  return make_frobenius(a, std::move(p));
}

FrobeniusStructure group_frobenius(const FDAlgebra& a) {
  if (!a.group()) throw PreconditionError("not a group algebra");
  return frobenius_from_integral(a, a.basis_vector(a.group()->identity()), a.unit());
}

FrobeniusStructure trace_frobenius(const FDAlgebra& a, std::size_t n) {
  if (a.dim() != n * n) throw PreconditionError("not a matrix algebra of the given size");
  Vector tr = zero_vector(a.field(), a.dim());
  for (std::size_t i = 0; i < n; ++i) tr[i * n + i] = Scalar::one(a.field());
  Matrix p(a.field(), a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (const auto& [k, c] : a.product(i, j)) p(i, j) += c * tr[k];
  return make_frobenius(a, std::move(p));
}

LambdaL lambda_L(const FDAlgebra& a) {
  if (!a.group()) throw PreconditionError("lambda_L needs a group algebra");
  const FiniteGroup& g = *a.group();
  const std::size_t n = a.dim();
  const Field f = a.field();
  LambdaL r{Matrix(f, n, n), true, std::nullopt};
  for (std::size_t x = 0; x < n; ++x) r.matrix(g.inverse(x), x) = Scalar::one(f);
  // lambda(x a y)(b) == lambda(a)(y b x)
  for (std::size_t x = 0; x < n && r.bimodule; ++x)
    for (std::size_t el = 0; el < n && r.bimodule; ++el)
      for (std::size_t y = 0; y < n && r.bimodule; ++y) {
        const std::size_t xay = g.mul(g.mul(x, el), y);
        for (std::size_t b = 0; b < n; ++b) {
          const std::size_t ybx = g.mul(g.mul(y, b), x);
          if (r.matrix(b, xay) != r.matrix(ybx, el)) {
            r.bimodule = false;
            r.witness = std::array<std::size_t, 3>{x, el, y};
            break;
          }
        }
      }
  return r;
}

FrobeniusStructure lie_pairing(const FDAlgebra& a) {
  const int d = a.top_degree();
  std::vector<std::size_t> top;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (a.degree(i) == d) top.push_back(i);
  if (top.size() != 1) throw ModelError("top degree is not one-dimensional");
  std::size_t deg0 = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.degree(i) < 0) throw ModelError("negative degrees in a connected model");
    if (a.degree(i) == 0) ++deg0;
  }
  if (deg0 != 1) throw ModelError("model is not connected");
  const std::size_t t = top.front();
  Matrix p(a.field(), a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (const auto& [k, c] : a.product(i, j))
        if (k == t) p(i, j) = c;
  return make_frobenius(a, std::move(p));
}

SymmetricFormSearch symmetric_form_exists(const FDAlgebra& a) {
  const std::size_t n = a.dim();
  const Field f = a.field();
  // traces: t(e_i e_j) = (-1)^{|i||j|} t(e_j e_i)
  Matrix sys(f, n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& [k, c] : a.product(i, j)) sys(i * n + j, k) += c;
      const bool odd = odd_product(a.degree(i), a.degree(j));
      for (const auto& [k, c] : a.product(j, i)) sys(i * n + j, k) -= odd ? -c : c;
    }
  const auto traces = kernel_basis(sys);
  SymmetricFormSearch r;
  r.trace_dimension = traces.size();
  if (traces.empty()) {
    r.decided = true;
    return r;
  }
  auto form = [&](const Vector& t) {
    Matrix p(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [k, c] : a.product(i, j)) p(i, j) += c * t[k];
    return p;
  };
  // A nonzero polynomial of degree <= n in each variable does not vanish on
  // a grid S^m with |S| > n; over F_p with p <= n the grid is all of F_p^m.
  std::size_t side = n + 1;
  if (!f.is_rational() && f.characteristic() <= n) side = f.characteristic();
  std::size_t total = 1;
  bool overflow = false;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    total *= side;
    if (total > 50000) {
      overflow = true;
      break;
    }
  }
  std::vector<std::size_t> c(traces.size(), 0);
  std::size_t tried = 0;
  for (;;) {
    Vector t = zero_vector(f, n);
    for (std::size_t j = 0; j < traces.size(); ++j) axpy(t, Scalar(f, static_cast<std::int64_t>(c[j])), traces[j]);
    if (is_invertible(form(t))) {
      r.exists = true;
      r.decided = true;
      r.witness = t;
      return r;
    }
    if (++tried >= 50000) break;
    std::size_t i = 0;
    while (i < c.size() && c[i] == side - 1) c[i++] = 0;
    if (i == c.size()) break;
    ++c[i];
  }
  r.decided = !overflow;
  return r;
}

}  // namespace hbv
