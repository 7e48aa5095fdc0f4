#include "hbv/linalg/scalar.hpp"

#include <numeric>
#include <stdexcept>

namespace hbv {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(i128 v) {
  return v >= static_cast<i128>(INT64_MIN) && v <= static_cast<i128>(INT64_MAX);
}

std::int64_t mod_p(i128 v, std::uint32_t p) {
  i128 r = v % static_cast<i128>(p);
  if (r < 0) r += p;
  return static_cast<std::int64_t>(r);
}

std::int64_t pow_mod(std::int64_t b, std::uint64_t e, std::uint32_t p) {
  i128 result = 1;
  i128 base = b % p;
  while (e > 0) {
    if (e & 1U) result = result * base % p;
    base = base * base % p;
    e >>= 1U;
  }
  return static_cast<std::int64_t>(result);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  return Field(p);
}

Field Field::parse(const std::string& name) {
  if (name == "Q" || name == "q") return rationals();
  std::string digits;
  if (name.rfind("Fp:", 0) == 0 || name.rfind("fp:", 0) == 0)
    digits = name.substr(3);
  else if (!name.empty() && (name[0] == 'F' || name[0] == 'f'))
    digits = name.substr(1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("unknown field '" + name + "' (expected Q, F<p> or Fp:<p>)");
  return prime(static_cast<std::uint32_t>(std::stoul(digits)));
}

std::string Field::name() const { return is_rational() ? "Q" : "F" + std::to_string(p_); }

Scalar::Scalar(Field f, std::int64_t value) : field_(f) {
  if (f.is_rational()) {
    num_ = value;
  } else {
    num_ = mod_p(value, f.characteristic());
  }
}

Scalar::Scalar(Field f, std::int64_t num, std::int64_t den) : field_(f) {
  if (den == 0) throw std::domain_error("zero denominator");
  if (f.is_rational()) {
    i128 n = num, d = den;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (fits64(n) && fits64(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
    } else {
      set_big(BigRational(BigInt(num), BigInt(den)));
    }
  } else {
    *this = Scalar(f, num) / Scalar(f, den);
  }
}

Scalar::Scalar(Field f, const BigRational& q) : field_(f) {
  if (f.is_rational()) {
    set_big(q);
  } else {
    const std::uint32_t p = f.characteristic();
    BigInt n = boost::multiprecision::numerator(q) % p;
    BigInt d = boost::multiprecision::denominator(q) % p;
    if (d == 0) throw std::domain_error("denominator divisible by the characteristic");
    Scalar sn(f, n.convert_to<std::int64_t>());
    Scalar sd(f, d.convert_to<std::int64_t>());
    *this = sn / sd;
  }
}

Scalar Scalar::parse(Field f, const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      BigInt n(text);
      return Scalar(f, BigRational(n));
    }
    BigInt n(text.substr(0, slash));
    BigInt d(text.substr(slash + 1));
    if (d == 0) throw std::domain_error("zero denominator");
    return Scalar(f, BigRational(n, d));
  } catch (const std::domain_error&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed coefficient '" + text + "'");
  }
}

void Scalar::set_big(BigRational q) {
  const BigInt& n = boost::multiprecision::numerator(q);
  const BigInt& d = boost::multiprecision::denominator(q);
  static const BigInt lo(INT64_MIN);
  static const BigInt hi(INT64_MAX);
  if (n >= lo && n <= hi && d <= hi) {
    num_ = n.convert_to<std::int64_t>();
    den_ = d.convert_to<std::int64_t>();
    big_.reset();
  } else {
    big_ = std::make_shared<const BigRational>(std::move(q));
  }
}

void Scalar::check_same_field(const Scalar& o) const {
  if (!(field_ == o.field_))
    throw std::logic_error("mixed-field arithmetic: " + field_.name() + " vs " + o.field_.name());
}

bool Scalar::is_zero() const { return !big_ && num_ == 0; }

bool Scalar::is_one() const { return !big_ && num_ == 1 && den_ == 1; }

BigRational Scalar::to_rational() const {
  if (big_) return *big_;
  return BigRational(BigInt(num_), BigInt(den_));
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (field_.is_rational()) {
    if (big_) {
      r.set_big(-*big_);
    } else if (num_ == INT64_MIN) {
      r.set_big(-to_rational());
    } else {
      r.num_ = -num_;
    }
  } else if (num_ != 0) {
    r.num_ = field_.characteristic() - num_;
  }
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (field_.is_rational()) {
    if (big_) {
      const BigRational& q = *big_;
      return Scalar(field_, BigRational(boost::multiprecision::denominator(q), boost::multiprecision::numerator(q)));
    }
    return Scalar(field_, den_, num_);
  }
  const std::uint32_t p = field_.characteristic();
  Scalar r(field_, 0);
  r.num_ = pow_mod(num_, p - 2, p);
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same_field(o);
  if (!field_.is_rational()) {
    num_ += o.num_;
    if (num_ >= field_.characteristic()) num_ -= field_.characteristic();
    return *this;
  }
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t s;
      if (!__builtin_add_overflow(num_, o.num_, &s)) {
        num_ = s;
        return *this;
      }
    }
    i128 n = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
    i128 d = static_cast<i128>(den_) * o.den_;
    i128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n == 0) d = 1;
    if (fits64(n) && fits64(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return *this;
    }
  }
  set_big(to_rational() + o.to_rational());
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same_field(o);
  if (!field_.is_rational()) {
    num_ = static_cast<std::int64_t>(static_cast<i128>(num_) * o.num_ % field_.characteristic());
    return *this;
  }
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t m;
      if (!__builtin_mul_overflow(num_, o.num_, &m)) {
        num_ = m;
        return *this;
      }
    }
    i128 n = static_cast<i128>(num_) * o.num_;
    i128 d = static_cast<i128>(den_) * o.den_;
    i128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n == 0) d = 1;
    if (fits64(n) && fits64(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return *this;
    }
  }
  set_big(to_rational() * o.to_rational());
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (!(a.field_ == b.field_)) return false;
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  return a.to_rational() == b.to_rational();
}

std::string Scalar::to_string() const {
  if (big_) {
    const BigRational& q = *big_;
    if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
  }
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace hbv
