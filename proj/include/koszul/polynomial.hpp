#ifndef KOSZUL_POLYNOMIAL_HPP
#define KOSZUL_POLYNOMIAL_HPP

#include <compare>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "koszul/field.hpp"

namespace koszul {

/// Exponent vector of a monomial, one entry per declared variable.
using Exponents = std::vector<int>;

Exponents operator+(const Exponents& a, const Exponents& b);

/// (symmetric degree, internal weight). Plain algebras and modules live in sym degree 0.
struct Bidegree {
  int sym = 0;
  int weight = 0;

  friend Bidegree operator+(Bidegree a, Bidegree b) { return {a.sym + b.sym, a.weight + b.weight}; }
  friend Bidegree operator-(Bidegree a, Bidegree b) { return {a.sym - b.sym, a.weight - b.weight}; }
  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

std::string to_string(const Bidegree& d);

/**
 * Polynomial with exact rational coefficients in a fixed number of variables.
 * Terms are ordered lexicographically descending in the exponent vector.
 */
class Polynomial {
 public:
  using Terms = std::map<Exponents, Rational, std::greater<>>;

  Polynomial() = default;
  explicit Polynomial(std::size_t variables) : variables_(variables) {}

  static Polynomial constant(std::size_t variables, const Rational& c);
  static Polynomial monomial(Exponents e, const Rational& c = Rational(1));
  static Polynomial variable(std::size_t variables, std::size_t index);

  std::size_t variable_count() const { return variables_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Exponents& e, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const { return *this * Rational(-1); }
  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  Polynomial derivative(std::size_t var) const;

  std::string to_string(std::span<const std::string> names) const;

 private:
  std::size_t variables_ = 0;
  Terms terms_;
};

std::string monomial_to_string(const Exponents& e, std::span<const std::string> names);

/**
 * Parses `2*x^2*y - u*s_1 + 1/3*v` over the given variable names. Grammar:
 * sums of products of rational constants and variables with optional
 * nonnegative integer powers. Throws ParseError with a 1-based column.
 */
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names);

}  // namespace koszul

#endif  // KOSZUL_POLYNOMIAL_HPP
