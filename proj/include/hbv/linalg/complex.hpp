#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "hbv/linalg/sparse.hpp"

namespace hbv {

/// Cochain complex with differentials d^n : C^n -> C^{n+1} stored for n in
/// the closed window [lo, hi].  Spaces outside [lo, hi+1] are zero.  Each
/// basis element may carry an internal-degree weight; differentials are
/// expected to preserve weights.
class Complex {
 public:
  Complex(Field f, int lo, int hi);

  Field field() const { return field_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool in_window(int n) const { return n >= lo_ && n <= hi_; }

  void set_space(int n, std::size_t dim, std::vector<int> weights = {});
  void set_differential(int n, SparseMatrix d);

  std::size_t dimension(int n) const;
  const std::vector<int>& weights(int n) const;
  /// Throws WindowError outside [lo, hi].
  const SparseMatrix& differential(int n) const;

  /// rank d^n, computed block by block on the weights and cached.  Over Q a
  /// rank mod a large prime is accepted when it meets the upper bound coming
  /// from d^2 = 0; otherwise the elimination is exact.
  std::size_t rank_of(int n) const;

  /// Throws std::logic_error naming the degree if some d^{n+1} d^n != 0.
  void check_square_zero() const;

 private:
  Field field_;
  int lo_;
  int hi_;
  std::map<int, std::size_t> dims_;
  std::map<int, std::vector<int>> weights_;
  std::map<int, SparseMatrix> diffs_;
  mutable std::map<int, std::size_t> ranks_;
  mutable std::map<int, std::optional<std::size_t>> modular_ranks_;

  std::optional<std::size_t> modular_rank(int n) const;
};

/// Dense echelon basis whose vectors carry a coordinate tag, used to
/// express vectors modulo a subspace in terms of chosen representatives.
class TaggedEchelon {
 public:
  TaggedEchelon(Field f, std::size_t length, std::size_t tag_length);

  /// Inserts v with the given tag; false if v reduces to zero.
  bool insert(Vector v, Vector tag);
  /// Reduces v; returns the accumulated tag and leaves the remainder in v.
  Vector reduce(Vector& v) const;
  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    Vector vec;
    Vector tag;
  };
  Field field_;
  std::size_t length_;
  std::size_t tag_length_;
  std::vector<std::int64_t> lead_to_entry_;
  std::vector<Entry> entries_;
};

/// H^n of a complex with chosen cocycle representatives.  Coordinates of a
/// cocycle are unique; equality of classes is decided by reduction modulo
/// coboundaries, never by comparing representatives.
class CohomologyGroup {
 public:
  CohomologyGroup(int degree, std::size_t space_dim, std::vector<Vector> reps, std::vector<int> weights,
                  TaggedEchelon echelon);

  int degree() const { return degree_; }
  std::size_t dimension() const { return reps_.size(); }
  std::size_t space_dimension() const { return space_dim_; }
  const std::vector<Vector>& representatives() const { return reps_; }
  const std::vector<int>& weights() const { return weights_; }

  /// Coordinates of a cocycle; nothing if v is not in span(cocycles) i.e. the
  /// remainder after reduction is nonzero.
  std::optional<Vector> coordinates(const Vector& cocycle) const;
  bool is_coboundary(const Vector& v) const;

 private:
  int degree_;
  std::size_t space_dim_;
  std::vector<Vector> reps_;
  std::vector<int> weights_;
  TaggedEchelon echelon_;
};

/// Rank of a weight-preserving matrix, one elimination per weight block.
std::size_t blocked_rank(const SparseMatrix& d, const std::vector<int>& col_weights, const std::vector<int>& row_weights);

/// Full cohomology with representatives (dense; intended for spaces of a few
/// thousand dimensions).  Representatives are homogeneous in the weight.
CohomologyGroup cohomology_at(const Complex& c, int n);
/// Dimension only, through sparse ranks.
std::size_t cohomology_dimension(const Complex& c, int n);

}  // namespace hbv
