#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "hbv/algebra/group.hpp"
#include "hbv/linalg/matrix.hpp"
#include "hbv/linalg/sparse.hpp"

namespace hbv {

struct BasisElement {
  std::string name;
  int degree = 0;
};

/// (i, j, k, c): e_i * e_j has coefficient c on e_k.
using StructureConstants = std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Scalar>>;

/// Element of A (x) A as (left index, right index, coefficient) triples.
using TensorTerms = std::vector<std::tuple<std::uint32_t, std::uint32_t, Scalar>>;

/// Coproduct, counit and antipode.  antipode column j is S(e_j).
struct HopfData {
  std::vector<TensorTerms> coproduct;  // coproduct[i] = Delta(e_i)
  Vector counit;
  Matrix antipode;
};

/// Finite-dimensional graded unital associative algebra given by structure
/// constants.  Signs for graded tensor products follow the Koszul rule on
/// the integer degrees of the basis.
class FDAlgebra {
 public:
  /// Validates grading, associativity, unit and (if present) the Hopf axioms;
  /// throws ValidationError naming the first failing axiom.
  FDAlgebra(Field f, std::vector<BasisElement> basis, const StructureConstants& mult, Vector unit,
            std::optional<HopfData> hopf = std::nullopt);

  Field field() const { return field_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  int degree(std::size_t i) const { return basis_[i].degree; }
  bool is_graded() const;
  int top_degree() const;

  const Vector& unit() const { return unit_; }
  /// e_i * e_j.
  const SparseRow& product(std::size_t i, std::size_t j) const { return mult_[i * dim() + j]; }
  Vector multiply(const Vector& x, const Vector& y) const;
  Vector basis_vector(std::size_t i) const { return unit_vector(field_, dim(), i); }
  /// Matrix of y -> x*y (left) or y -> y*x (right).
  Matrix left_multiplication(const Vector& x) const;
  Matrix right_multiplication(const Vector& x) const;
  /// Graded commutativity: e_i e_j = (-1)^{|i||j|} e_j e_i.
  bool is_commutative() const;
  std::size_t center_dimension() const;
  bool is_invertible(const Vector& x) const;

  bool has_hopf() const { return hopf_.has_value(); }
  const HopfData& hopf() const;

  /// Set by group_algebra: basis index = group element index.
  const std::optional<FiniteGroup>& group() const { return group_; }
  void attach_group(FiniteGroup g);
  /// Free-form model label ("group", "exterior", "file", ...).
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }

  nlohmann::json to_json() const;
  static FDAlgebra from_json(const nlohmann::json& j);

 private:
  void validate_algebra() const;
  void validate_hopf() const;

  Field field_;
  std::vector<BasisElement> basis_;
  std::vector<SparseRow> mult_;
  Vector unit_;
  std::optional<HopfData> hopf_;
  std::optional<FiniteGroup> group_;
  std::string label_;
};

/// Group algebra F[G] with Delta(g)=g(x)g, eps(g)=1, S(g)=g^{-1}.
FDAlgebra group_algebra(const FiniteGroup& g, Field f);
/// Exterior algebra on odd-degree generators with primitive generators.
/// Basis: square-free monomials ordered by degree, then by generator indices.
/// Throws ModelError for even degrees or characteristic 2.
FDAlgebra exterior_algebra(const std::vector<int>& generator_degrees, Field f);
/// Full matrix algebra M_n(F) with basis E_ij (row-major).
FDAlgebra matrix_algebra(std::size_t n, Field f);
/// Dual Hopf algebra: product dual to the coproduct and vice versa.
FDAlgebra dual_hopf_algebra(const FDAlgebra& a);

/// Loads an algebra file; "group" files are also accepted and turned into F[G]
/// when a field is supplied.
FDAlgebra load_algebra_file(const std::string& path);

}  // namespace hbv
