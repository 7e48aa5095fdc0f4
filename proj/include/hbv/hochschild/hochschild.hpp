#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hbv/algebra/frobenius.hpp"
#include "hbv/hochschild/bar.hpp"

namespace hbv {

/// Tabulated cochain: coordinates on the basis of C^n of the matching bar
/// complex.  Degree -1 is the empty cochain (target of B^dual on C^0).
struct Cochain {
  Coefficients coeff = Coefficients::Self;
  int degree = 0;
  Vector values;
};

/// Cohomology class: coordinates in the stored basis of HH^n plus a
/// representative cocycle.
struct HHClass {
  Coefficients coeff = Coefficients::Self;
  int degree = 0;
  Vector coordinates;
  Cochain representative;
};

/// Cup, circle, bracket, B^dual and the Frobenius duality on the truncated
/// bar complexes of one algebra.  Bar complexes and cohomology groups are
/// built on first use and cached.
class Hochschild {
 public:
  Hochschild(const FDAlgebra& a, int max_degree, std::size_t budget = default_budget());
  ~Hochschild();
  Hochschild(Hochschild&&) noexcept;

  const FDAlgebra& algebra() const { return a_; }
  Field field() const { return a_.field(); }
  int max_degree() const { return N_; }
  /// Bracket and BV statements are asserted up to this degree.
  int certified_degree() const { return N_ - 2; }

  const BarComplex& bar(Coefficients c) const;
  const CohomologyGroup& cohomology(Coefficients c, int n) const;
  /// dim HH^n for n = 0..N, ranks only.
  std::vector<std::size_t> dimensions(Coefficients c) const;

  Cochain zero(Coefficients c, int n) const;
  /// The 0-cochain 1 in C^0(A;A).
  Cochain unit() const;
  Cochain representative(Coefficients c, int n, std::size_t i) const;
  /// Internal degree of a homogeneous cochain (0 for the zero cochain).
  int internal_degree(const Cochain& f) const;

  Cochain coboundary(const Cochain& f) const;
  bool is_cocycle(const Cochain& f) const;
  bool is_coboundary(const Cochain& f) const;
  /// Throws PreconditionError if f is not a cocycle.
  HHClass class_of(const Cochain& f) const;

  /// Self x self, or self x dual through the left action (a.xi)(x) = xi(x a).
  /// Degrees above N are refused with WindowError.
  Cochain cup(const Cochain& f, const Cochain& g) const;
  /// f o g = sum_i (-1)^{(q-1)(p-i) + t_g(|a_1|+..+|a_{i-1}|)} f(a_1,..,g(a_i,..),..).
  Cochain circle(const Cochain& f, const Cochain& g) const;
  Cochain gerstenhaber_bracket(const Cochain& f, const Cochain& g) const;

  /// Rows C^{n-1}(A;A^dual), columns C^n(A;A^dual); n >= 1.
  const SparseMatrix& connes_B_dual_matrix(int n) const;
  Cochain connes_B_dual(const Cochain& phi) const;

  /// Installs the pairing used by the duality; refuses structures that are
  /// degenerate, fail the Frobenius identity or are not graded symmetric.
  void set_frobenius(const FrobeniusStructure& s);
  bool has_frobenius() const { return pairing_.has_value(); }
  /// Degree of the installed pairing (D^{-1} lowers internal degree by it).
  int frobenius_degree() const { return pairing_degree_; }
  /// D^{-1}: C^n(A;A) -> C^n(A;A^dual), f -> <-, f(...)>.
  Cochain to_dual(const Cochain& f) const;
  /// D: the inverse of to_dual.
  Cochain from_dual(const Cochain& phi) const;
  /// Delta = D o B^dual o D^{-1}.
  Cochain delta(const Cochain& f) const;

  /// Matrix on cohomology bases (columns = images of the basis classes).
  Matrix induced_map(Coefficients from, int n, Coefficients to, int m,
                     const std::function<Cochain(const Cochain&)>& map) const;

 private:
  void check_coeff(const Cochain& f, Coefficients c, const char* what) const;

  FDAlgebra a_;
  int N_;
  std::size_t budget_;
  mutable std::unique_ptr<BarComplex> self_;
  mutable std::unique_ptr<BarComplex> dual_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<CohomologyGroup>> cohomology_;
  mutable std::map<int, SparseMatrix> b_dual_;
  std::optional<Matrix> pairing_;
  int pairing_degree_ = 0;
  std::vector<Matrix> pairing_inverse_;  // indexed by parity of the tuple degree
};

/// Symmetric Frobenius structure used for an algebra when none is given:
/// delta_1 for group algebras, the top-degree pairing for graded models,
/// otherwise a nondegenerate trace form found by search.
FrobeniusStructure default_frobenius(const FDAlgebra& a);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  nlohmann::json witness;  // null when passed
};

enum class BVSignConvention { Standard, Alternative };

struct BVReport {
  int max_degree = 0;
  int certified_degree = 0;
  std::vector<std::size_t> dimensions;
  std::vector<CheckResult> checks;
  bool passed() const;
  nlohmann::json to_json() const;
};

/// Delta(1)=0, D invertible on cohomology, Delta descends and squares to
/// zero, the seven-term identity
///   [x,y] = (-1)^{|x|} (Delta(xy) - Delta(x) y - (-1)^{|x|} x Delta(y)),
/// antisymmetry, Jacobi, Poisson and cup commutativity, all as classes on
/// basis pairs and triples inside the certified window.
BVReport bv_check(const FDAlgebra& a, const FrobeniusStructure& s, int max_degree,
                  BVSignConvention convention = BVSignConvention::Standard,
                  std::size_t budget = default_budget());

/// dim H^n(G; F) with trivial coefficients for n = 0..N, from the
/// normalized bar complex of G.
std::vector<std::size_t> group_cohomology_dimensions(const FiniteGroup& g, Field f, int max_degree,
                                                     std::size_t budget = default_budget());

/// Sum over conjugacy classes of dim H^n(C_G(g); F), n = 0..N.
std::vector<std::size_t> centralizer_oracle(const FiniteGroup& g, Field f, int max_degree,
                                            std::size_t budget = default_budget());

/// Sign (-1)^k as a bool test.
inline bool odd_sign(long long k) { return (k % 2) != 0; }

}  // namespace hbv
