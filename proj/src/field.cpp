#include "koszul/field.hpp"

#include <sstream>
#include <tuple>

namespace koszul {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

void FieldSpec::validate() const {
  if (characteristic == 0) return;
  if (characteristic >= (1u << 31))
    throw ValidationError("characteristic " + std::to_string(characteristic) + " is not below 2^31");
  if (!is_prime(characteristic))
    throw ValidationError("characteristic " + std::to_string(characteristic) +
                          " is neither 0 nor a prime");
}

Fp Fp::inverse() const {
  if (!is_bound()) {
    if (value_ == 1 || value_ == -1) return *this;
    throw InternalError("cannot invert an unbound F_p literal");
  }
  if (value_ == 0) throw InternalError("division by zero in F_" + std::to_string(modulus_));
  // Extended Euclid on (value, p).
  std::int64_t r0 = modulus_, r1 = value_, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - q * t1};
  }
  return Fp(t0, modulus_);
}

Fp Field<Fp>::from_rational(const Rational& q) const {
  const BigInt p(p_);
  BigInt num = boost::multiprecision::numerator(q) % p;
  BigInt den = boost::multiprecision::denominator(q) % p;
  if (den == 0)
    throw ValidationError("coefficient " + to_string(q) + " has a denominator divisible by " +
                          std::to_string(p_));
  const Fp n(num.convert_to<std::int64_t>(), p_);
  const Fp d(den.convert_to<std::int64_t>(), p_);
  return n / d;
}

std::string to_string(const Rational& q) { return q.str(); }

std::string to_string(const Fp& x) { return std::to_string(x.value()); }

}  // namespace koszul
