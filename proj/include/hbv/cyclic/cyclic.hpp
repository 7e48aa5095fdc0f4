#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <vector>

#include <json.hpp>

#include "hbv/hochschild/hochschild.hpp"

namespace hbv {

/// Class in HC^n: coordinates in the stored basis and a total cocycle.
struct HCClass {
  int degree = 0;
  Vector coordinates;
  Vector representative;
};

/// Total complex of the dual (b, B)-bicomplex in degrees 0..N+1.
/// Tot^n = C^n + C^{n-2} + ... (column k holds C^{n-2k}(A; A^dual)), with
/// D = b^dual within a column plus B^dual from column k to column k+1.
/// Every column is kept, so HC^n is exact for n <= N.
class CyclicComplex {
 public:
  CyclicComplex(const FDAlgebra& a, int max_degree, std::size_t budget = default_budget());
  ~CyclicComplex();
  CyclicComplex(CyclicComplex&&) noexcept;

  const Hochschild& hochschild() const { return h_; }
  void set_frobenius(const FrobeniusStructure& s) { h_.set_frobenius(s); }
  int max_degree() const { return h_.max_degree(); }
  Field field() const { return h_.field(); }

  std::size_t columns(int n) const { return n < 0 ? 0 : static_cast<std::size_t>(n / 2) + 1; }
  /// Offset of column k inside Tot^n.
  std::size_t column_offset(int n, std::size_t k) const;
  const Complex& complex() const { return tot_; }

  const CohomologyGroup& cohomology(int n) const;
  std::vector<std::size_t> dimensions() const;
  HCClass representative(int n, std::size_t i) const;
  /// Throws PreconditionError unless z is a total cocycle.
  HCClass class_of(int n, const Vector& z) const;
  HCClass zero_class(int n) const;
  /// Internal degree of the class (0 when ungraded or zero).
  int internal_degree(const HCClass& c) const;

  /// Column k of a vector in Tot^n.
  Cochain column(int n, const Vector& z, std::size_t k) const;
  /// I: restriction to column 0.
  Cochain inclusion(const HCClass& c) const;
  /// S: column k -> column k+1, Tot^n -> Tot^{n+2}.
  HCClass shift(const HCClass& c) const;
  /// The connecting map HH^n(A; A^dual) -> HC^{n-1}: [phi] -> [(B^dual phi, 0, ..)].
  HCClass boundary(const Cochain& phi) const;

 private:
  Vector embed(int n, const Cochain& phi, std::size_t k) const;

  Hochschild h_;
  Complex tot_;
  mutable std::map<int, std::unique_ptr<CohomologyGroup>> cohomology_;
};

/// HC^n dimensions for n = 0..N.
std::vector<std::size_t> cyclic_cohomology(const FDAlgebra& a, int max_degree, std::size_t budget = default_budget());

/// Matrices on cohomology bases for the Connes sequence
///   ... -> HC^{n-2} -S-> HC^n -I-> HH^n(A;A^dual) -d-> HC^{n-1} -S-> HC^{n+1} -> ...
/// and the exactness report.
struct ConnesMaps {
  int max_degree = 0;
  std::vector<std::size_t> hc;  // dim HC^n
  std::vector<std::size_t> hh;  // dim HH^n(A;A^dual)
  std::map<int, Matrix> I;         // n -> HC^n -> HH^n
  std::map<int, Matrix> S;         // n -> HC^n -> HC^{n+2}
  std::map<int, Matrix> boundary;  // n -> HH^n -> HC^{n-1}
  std::map<int, Matrix> b_dual;    // n -> H(B^dual): HH^n -> HH^{n-1}
  std::vector<CheckResult> checks;
  bool passed() const;
  nlohmann::json to_json() const;
};

ConnesMaps connes_maps(const CyclicComplex& c);

/// {a, b} = (-1)^{|a|} d( D^{-1}( D I a  u  D I b ) ), |a| the cochain degree.
/// Needs a Frobenius structure and |a| + |b| <= N.
HCClass string_bracket(const CyclicComplex& c, const HCClass& a, const HCClass& b);

struct StringReport {
  int max_degree = 0;
  std::vector<std::size_t> dimensions;
  std::vector<CheckResult> checks;
  bool passed() const;
  nlohmann::json to_json() const;
};

/// Antisymmetry, Jacobi and unit vanishing of the string bracket on basis
/// classes with |a| + |b| <= N and |a| + |b| + |c| <= N + 1.
StringReport string_bracket_check(const FDAlgebra& a, const FrobeniusStructure& s, int max_degree,
                                  std::size_t budget = default_budget());

/// [D I a, D I b] = D I {a, b} in HH^*(A;A) on all basis pairs with |a| + |b| <= N.
StringReport lie_morphism_check(const FDAlgebra& a, const FrobeniusStructure& s, int max_degree,
                                std::size_t budget = default_budget());

}  // namespace hbv
