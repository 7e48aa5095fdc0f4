#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hbv/algebra/frobenius.hpp"

namespace hbv {

/// One path component: genus and the (global, 1-based) ports it touches.
struct CobComponent {
  int genus = 0;
  std::vector<int> in_legs;
  std::vector<int> out_legs;

  friend bool operator==(const CobComponent&, const CobComponent&) = default;
};

/// Morphism p -> q of the skeleton of 2-Cob, stored in normal form: legs
/// sorted, components ordered by (smallest in-port, else smallest out-port,
/// closed last; then genus).
class Cobordism {
 public:
  Cobordism() = default;  // the empty cobordism 0 -> 0
  /// Throws ValidationError unless the legs partition {1..p} and {1..q}.
  Cobordism(int p, int q, std::vector<CobComponent> components);

  static Cobordism identity(int n);
  /// Connected surface of genus g from p to q circles.
  static Cobordism connected(int genus, int p, int q);
  /// Cylinders joining in-port i to out-port sigma[i-1].
  static Cobordism permutation(const std::vector<int>& sigma);
  /// "cyl", "pants" (2->1), "copants" (1->2), "cap_in" (1->0), "cap_out" (0->1), "twist".
  static Cobordism preset(const std::string& name);

  static Cobordism from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  int in() const { return p_; }
  int out() const { return q_; }
  const std::vector<CobComponent>& components() const { return components_; }
  int genus() const;

  friend bool operator==(const Cobordism&, const Cobordism&) = default;

 private:
  int p_ = 0;
  int q_ = 0;
  std::vector<CobComponent> components_;
};

/// A preset name or a cobordism JSON file.
Cobordism load_cobordism(const std::string& name_or_path);

/// 2k - 2g - p - q.
int euler_characteristic(const Cobordism& c);

/// Glue f: p -> q and then g: q -> r.  Throws PreconditionError when q differs.
Cobordism compose(const Cobordism& f, const Cobordism& g);
/// Disjoint union, ports of g shifted after those of f.
Cobordism tensor(const Cobordism& f, const Cobordism& g);

/// Linear map A^{(x)p} -> A^{(x)q}; tuple (i_1..i_p) has index i_1 dim^{p-1} + .. + i_p.
struct TQFTMap {
  int p = 0;
  int q = 0;
  Matrix matrix;  // dim^q x dim^p
};

/// g after f.
TQFTMap compose(const TQFTMap& f, const TQFTMap& g);
TQFTMap tensor(const TQFTMap& f, const TQFTMap& g);

/// The TQFT of a commutative Frobenius algebra (degree-0 only).
class FrobeniusTQFT {
 public:
  /// PreconditionError for noncommutative algebras, degenerate pairings or a
  /// failing Frobenius identity; ModelError for graded algebras.
  FrobeniusTQFT(const FDAlgebra& a, const FrobeniusStructure& s);

  std::size_t dim() const { return a_.dim(); }
  Field field() const { return a_.field(); }
  /// mu(delta(1)) = sum_i e_i e^i.
  const Vector& handle() const { return handle_; }
  const Vector& counit() const { return counit_; }

  /// With strict set, every component needs an in- and an out-circle.
  TQFTMap evaluate(const Cobordism& c, bool strict = false) const;

 private:
  Matrix multiplication(int m) const;    // A^{(x)m} -> A
  Matrix comultiplication(int n) const;  // A -> A^{(x)n}

  FDAlgebra a_;
  Matrix dual_;  // column i = e^i
  Vector counit_;
  Vector handle_;
};

TQFTMap tqft_evaluate(const FDAlgebra& a, const FrobeniusStructure& s, const Cobordism& c, bool strict = false);

/// An algebra file with an optional "pairing": [[i, j, c], ...] entry list;
/// without it the default Frobenius structure is used.
struct FrobeniusAlgebraFile {
  FDAlgebra algebra;
  FrobeniusStructure frobenius;
};
FrobeniusAlgebraFile load_frobenius_algebra(const std::string& path);

/// Determinant line of a cobordism: coeff times the canonical generator of
/// det H_1(F, d_in F; Z)^{(x) power}, rank = -chi.
struct DetLine {
  int in = 0;
  int out = 0;
  int rank = 0;
  BigInt coeff = 1;
  int power = 1;
};

DetLine det_line(const Cobordism& c, BigInt coeff = 1, int power = 1);
/// Line of g after f: ranks add, coefficients multiply.  PreconditionError
/// on a boundary or power mismatch.
DetLine det_compose(const DetLine& x, const DetLine& y);
/// As det_compose, with each coefficient raised to the power d first.
DetLine det_compose_twisted(const DetLine& x, const DetLine& y);

/// Vertical maps a, b, c, d between two copies of an exact sequence
/// 0 -> A -i-> B -j-> C -k-> D -> 0 of free abelian groups (integer matrices).
struct FourTermDiagram {
  Matrix i, j, k;
  Matrix a, b, c, d;
};

struct FourTermReport {
  bool exact = false;
  bool commutes = false;
  BigRational det_a, det_b, det_c, det_d;
  bool identity = false;  // det(a) det(c) = det(b) det(d)
};

/// Exactness is checked on ranks over Q.
FourTermReport check_four_term(const FourTermDiagram& dg);

}  // namespace hbv
