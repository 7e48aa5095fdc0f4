#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hbv {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Ground field tag: the rationals, or the prime field F_p.
class Field {
 public:
  constexpr Field() = default;

  static constexpr Field rationals() { return Field(0); }
  /// Throws std::invalid_argument unless p is prime.
  static Field prime(std::uint32_t p);
  /// Parses "Q", "F2", "F3", "Fp:7" style names.
  static Field parse(const std::string& name);

  constexpr bool is_rational() const { return p_ == 0; }
  constexpr std::uint32_t characteristic() const { return p_; }
  std::string name() const;

  friend constexpr bool operator==(Field a, Field b) { return a.p_ == b.p_; }

 private:
  constexpr explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// Exact field element.  Rationals use a 64-bit fast path and fall back to
/// arbitrary precision on overflow; they are kept in lowest terms with a
/// positive denominator.  Prime-field values live in [0, p).
class Scalar {
 public:
  Scalar() = default;  // rational zero
  Scalar(Field f, std::int64_t value);
  Scalar(Field f, std::int64_t num, std::int64_t den);
  Scalar(Field f, const BigRational& q);

  static Scalar zero(Field f) { return Scalar(f, 0); }
  static Scalar one(Field f) { return Scalar(f, 1); }
  /// "n", "-n", "n/d" (rationals) or a residue (prime fields; rationals are reduced mod p).
  static Scalar parse(Field f, const std::string& text);

  Field field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar inverse() const;  // throws std::domain_error on zero
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Rational value (prime fields: the canonical residue as an integer).
  BigRational to_rational() const;
  /// Residue for prime fields; numerator for small rationals.
  std::int64_t residue() const { return num_; }
  /// "n/d" for rationals with d != 1, plain integer otherwise.
  std::string to_string() const;

 private:
  void set_big(BigRational q);
  void check_same_field(const Scalar& o) const;

  Field field_{};
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const BigRational> big_;
};

/// (-1)^k as a field element.
inline Scalar sign_scalar(Field f, long long k) { return Scalar(f, (k % 2 == 0) ? 1 : -1); }

}  // namespace hbv
