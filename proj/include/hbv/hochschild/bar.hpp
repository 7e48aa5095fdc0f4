#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hbv/algebra/algebra.hpp"
#include "hbv/linalg/complex.hpp"

namespace hbv {

enum class Coefficients { Self, Dual };

/// Dimension cap for cochain spaces: HBV_BUDGET if set, else 20000.
std::size_t default_budget();

/// Normalized bar cochain complex C^n = Hom(Abar^{(x)n}, M), M = A or A^dual,
/// for 0 <= n <= N (the space C^{N+1} is built as the target of d^N).
///
/// Abar is spanned by the basis elements of A other than the first one on
/// which the unit has a nonzero coefficient.  A basis cochain is a pair
/// (tuple of reduced indices, m): for M = A it sends the tuple to e_m, for
/// M = A^dual it is the functional dual to the chain e_m[r_1|...|r_n].
/// Index = (tuple as a base-dim(Abar) number) * dim(M) + m.
///
/// Signs are bigraded: cochain degree and internal degree are kept apart,
/// with Koszul signs taken in the internal degree.
class BarComplex {
 public:
  /// Throws BudgetError if some C^n with n <= N exceeds the budget.
  BarComplex(const FDAlgebra& a, Coefficients coeff, int max_degree, std::size_t budget = default_budget());

  const FDAlgebra& algebra() const { return a_; }
  Coefficients coefficients() const { return coeff_; }
  int max_degree() const { return N_; }
  const Complex& complex() const { return complex_; }
  Field field() const { return a_.field(); }

  std::size_t reduced_dim() const { return rbasis_.size(); }
  /// Index in A of the reduced basis element r.
  std::size_t lift(std::size_t r) const { return rbasis_[r]; }
  /// Reduced coordinates of e_k modulo the unit.
  const SparseRow& projection(std::size_t k) const { return proj_[k]; }
  std::size_t unit_index() const { return unit_index_; }

  std::size_t dimension(int n) const;
  std::size_t tuple_count(int n) const { return pow_[static_cast<std::size_t>(n)]; }
  std::size_t index(const std::vector<std::size_t>& tuple, std::size_t m) const;
  /// Inverse of index: fills tuple (size n) and m.
  void decode(int n, std::size_t idx, std::vector<std::size_t>& tuple, std::size_t& m) const;
  /// Internal degree of the basis cochain idx in C^n.
  int internal_degree(int n, std::size_t idx) const;
  /// Sum of |r_i| over a tuple.
  int tuple_degree(const std::vector<std::size_t>& tuple) const;

  /// Predicted dimension of C^n for an algebra; used by the budget guard.
  static std::size_t predicted_dimension(const FDAlgebra& a, int n);

 private:
  SparseMatrix build_self(int n) const;
  SparseMatrix build_dual(int n) const;
  std::vector<int> weights(int n) const;

  FDAlgebra a_;
  Coefficients coeff_;
  int N_;
  std::size_t unit_index_ = 0;
  std::vector<std::size_t> rbasis_;
  std::vector<SparseRow> proj_;
  std::vector<std::size_t> pow_;
  std::vector<std::size_t> class_of_;  // group algebras only
  Complex complex_;
};

}  // namespace hbv
