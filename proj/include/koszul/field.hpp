#ifndef KOSZUL_FIELD_HPP
#define KOSZUL_FIELD_HPP

#include <cstdint>
#include <ostream>
#include <string>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include "koszul/errors.hpp"

namespace koszul {

/// Exact rationals, always kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

inline bool is_zero(const Rational& x) { return x.is_zero(); }

/// Characteristic of the base field: 0 means Q, otherwise a prime below 2^31.
struct FieldSpec {
  std::uint32_t characteristic = 0;

  void validate() const;
  bool is_rational() const { return characteristic == 0; }
  bool operator==(const FieldSpec&) const = default;
};

bool is_prime(std::uint32_t n);

/**
 * Element of the prime field F_p with the modulus carried at runtime.
 *
 * Values built from a plain integer (Eigen's Scalar(0) and Scalar(1)) are
 * "unbound": they hold the raw integer and adopt the modulus of whatever they
 * are combined with. Every value produced by a Field<Fp> is bound.
 */
class Fp {
 public:
  constexpr Fp() = default;
  constexpr Fp(int literal) : value_(literal) {}  // NOLINT: implicit for Eigen literals
  Fp(std::int64_t value, std::uint32_t modulus)
      : value_(reduce(value, modulus)), modulus_(modulus) {}

  std::uint32_t modulus() const { return modulus_; }
  bool is_bound() const { return modulus_ != 0; }
  /// Representative in [0, p) when bound, the raw literal otherwise.
  std::int64_t value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  Fp inverse() const;

  Fp operator-() const {
    if (!is_bound()) return Fp(static_cast<int>(-value_));
    return Fp(value_ == 0 ? 0 : modulus_ - value_, modulus_, Normalized{});
  }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    const std::uint32_t p = common_modulus(a, b);
    if (p == 0) return Fp(static_cast<int>(a.value_ + b.value_));
    std::uint64_t s = static_cast<std::uint64_t>(a.in(p)) + static_cast<std::uint64_t>(b.in(p));
    if (s >= p) s -= p;
    return Fp(static_cast<std::int64_t>(s), p, Normalized{});
  }
  friend Fp operator-(const Fp& a, const Fp& b) { return a + (-b); }
  friend Fp operator*(const Fp& a, const Fp& b) {
    const std::uint32_t p = common_modulus(a, b);
    if (p == 0) return Fp(static_cast<int>(a.value_ * b.value_));
    const std::uint64_t prod =
        static_cast<std::uint64_t>(a.in(p)) * static_cast<std::uint64_t>(b.in(p));
    return Fp(static_cast<std::int64_t>(prod % p), p, Normalized{});
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

  friend bool operator==(const Fp& a, const Fp& b) {
    const std::uint32_t p = common_modulus(a, b);
    if (p == 0) return a.value_ == b.value_;
    return a.in(p) == b.in(p);
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.value_; }

 private:
  struct Normalized {};
  Fp(std::int64_t value, std::uint32_t modulus, Normalized) : value_(value), modulus_(modulus) {}

  static std::int64_t reduce(std::int64_t v, std::uint32_t p) {
    if (p == 0) return v;
    const std::int64_t r = v % static_cast<std::int64_t>(p);
    return r < 0 ? r + p : r;
  }
  static std::uint32_t common_modulus(const Fp& a, const Fp& b) {
    if (a.modulus_ != 0 && b.modulus_ != 0 && a.modulus_ != b.modulus_)
      throw InternalError("mixing elements of F_" + std::to_string(a.modulus_) + " and F_" +
                          std::to_string(b.modulus_));
    return a.modulus_ != 0 ? a.modulus_ : b.modulus_;
  }
  std::int64_t in(std::uint32_t p) const { return is_bound() ? value_ : reduce(value_, p); }

  std::int64_t value_ = 0;
  std::uint32_t modulus_ = 0;
};

inline bool is_zero(const Fp& x) { return x.is_zero(); }

/**
 * Runtime field context for a scalar type: converts exact rational input
 * coefficients and small integers into field elements.
 */
template <class Scalar>
class Field;

template <>
class Field<Rational> {
 public:
  using Scalar = Rational;
  std::uint32_t characteristic() const { return 0; }
  FieldSpec spec() const { return {}; }
  Rational from_int(std::int64_t v) const { return Rational(v); }
  Rational from_rational(const Rational& q) const { return q; }
  bool is_invertible(std::int64_t) const { return true; }
};

template <>
class Field<Fp> {
 public:
  using Scalar = Fp;
  explicit Field(std::uint32_t p) : p_(p) {
    FieldSpec{p}.validate();
    if (p == 0) throw ValidationError("F_p needs a prime characteristic");
  }
  std::uint32_t characteristic() const { return p_; }
  FieldSpec spec() const { return {p_}; }
  Fp from_int(std::int64_t v) const { return Fp(v, p_); }
  Fp from_rational(const Rational& q) const;
  bool is_invertible(std::int64_t v) const { return v % static_cast<std::int64_t>(p_) != 0; }

 private:
  std::uint32_t p_;
};

/// Calls f with Field<Rational> or Field<Fp> according to the spec.
template <class F>
decltype(auto) visit_field(const FieldSpec& spec, F&& f) {
  spec.validate();
  if (spec.characteristic == 0) return f(Field<Rational>{});
  return f(Field<Fp>{spec.characteristic});
}

std::string to_string(const Rational& q);
std::string to_string(const Fp& x);

}  // namespace koszul

namespace Eigen {

template <>
struct NumTraits<koszul::Fp> : GenericNumTraits<koszul::Fp> {
  using Real = koszul::Fp;
  using NonInteger = koszul::Fp;
  using Literal = koszul::Fp;
  using Nested = koszul::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // KOSZUL_FIELD_HPP
