#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hbv/algebra/algebra.hpp"

namespace hbv {

struct IntegralReport {
  std::vector<Vector> left;
  std::vector<Vector> right;
  std::vector<Vector> two_sided;
  bool unimodular = false;
};

/// Left integrals h*l = eps(h) l and right integrals l*h = eps(h) l.
IntegralReport find_integrals(const FDAlgebra& a);

struct FrobeniusReport {
  bool nondegenerate = false;
  bool frobenius_identity = false;
  /// Graded symmetry <a,b> = (-1)^{|a||b|} <b,a>.
  bool symmetric = false;
  std::optional<std::array<std::size_t, 3>> identity_witness;
  std::optional<std::pair<std::size_t, std::size_t>> symmetry_witness;
};

/// Exhaustive check on basis triples/pairs.
FrobeniusReport verify_frobenius(const FDAlgebra& a, const Matrix& pairing);

/// Pairing matrix P(i,j) = <e_i, e_j> together with its recomputed flags.
struct FrobeniusStructure {
  Matrix pairing;
  int degree = 0;  // the pairing is nonzero only when |a|+|b| = degree
  FrobeniusReport flags;
};

FrobeniusStructure make_frobenius(const FDAlgebra& a, Matrix pairing);

/// u with S^2(h) u = u h for all h, first invertible element of a fixed sweep
/// over the solution space (the unit is tried first).
std::optional<Vector> find_s2_conjugator(const FDAlgebra& a);

/// beta(h,k) = lambda(h k u).  lambda is given by its values on the basis and
/// must be a left integral of the dual Hopf algebra; u must conjugate S^2.
/// Throws PreconditionError otherwise.
FrobeniusStructure frobenius_from_integral(const FDAlgebra& a, const Vector& lambda, const Vector& u);

/// delta_1 pairing on a group algebra: <g,h> = 1 iff gh = 1.
FrobeniusStructure group_frobenius(const FDAlgebra& a);
/// <A,B> = tr(AB) on a matrix algebra built by matrix_algebra.
FrobeniusStructure trace_frobenius(const FDAlgebra& a, std::size_t n);

struct LambdaL {
  Matrix matrix;  // column g = coordinates of delta_{g^{-1}} in the dual basis
  bool bimodule = false;
  std::optional<std::array<std::size_t, 3>> witness;
};

/// g -> delta_{g^{-1}} with the bimodule identity checked on all basis triples.
LambdaL lambda_L(const FDAlgebra& a);

/// <a,b> = eta(ab), eta the dual functional of the first top-degree basis
/// element.  Throws ModelError unless the top degree is one-dimensional.
FrobeniusStructure lie_pairing(const FDAlgebra& a);

struct SymmetricFormSearch {
  bool exists = false;
  bool decided = false;
  std::size_t trace_dimension = 0;
  std::optional<Vector> witness;  // a trace t whose form t(ab) is nondegenerate
};

/// Searches the space of graded traces for one with nondegenerate form.
SymmetricFormSearch symmetric_form_exists(const FDAlgebra& a);

}  // namespace hbv
