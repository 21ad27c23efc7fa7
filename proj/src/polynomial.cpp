#include "koszul/polynomial.hpp"

#include <cctype>
#include <sstream>

namespace koszul {

Exponents operator+(const Exponents& a, const Exponents& b) {
  Exponents out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

std::string to_string(const Bidegree& d) {
  return "(" + std::to_string(d.sym) + "," + std::to_string(d.weight) + ")";
}

Polynomial Polynomial::constant(std::size_t variables, const Rational& c) {
  Polynomial p(variables);
  p.add_term(Exponents(variables, 0), c);
  return p;
}

Polynomial Polynomial::monomial(Exponents e, const Rational& c) {
  Polynomial p(e.size());
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t variables, std::size_t index) {
  Exponents e(variables, 0);
  e.at(index) = 1;
  return monomial(std::move(e));
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (koszul::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (koszul::is_zero(it->second)) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (koszul::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out(std::max(a.variables_, b.variables_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial out(variables_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents d(e);
    --d[var];
    out.add_term(d, c * e[var]);
  }
  return out;
}

std::string monomial_to_string(const Exponents& e, std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names[i];
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    const std::string mono = monomial_to_string(e, names);
    if (mono == "1")
      out += mag.str();
    else if (mag == 1)
      out += mono;
    else
      out += mag.str() + "*" + mono;
  }
  return out;
}

namespace {

class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, std::span<const std::string> names)
      : text_(text), names_(names) {}

  Polynomial parse() {
    Polynomial result(names_.size());
    skip_space();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      Rational sign(1);
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = -1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      Polynomial term = parse_product();
      result += term * sign;
      first = false;
      skip_space();
    }
    return result;
  }

 private:
  Polynomial parse_product() {
    Rational coeff(1);
    Exponents exps(names_.size(), 0);
    while (true) {
      skip_space();
      if (at_end()) fail("expected a factor");
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= parse_number();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = pos_;
        const std::size_t var = parse_variable();
        int power = 1;
        skip_space();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_space();
          if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected a nonnegative integer exponent");
          power = parse_integer(start);
        }
        exps[var] += power;
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    Polynomial p(names_.size());
    p.add_term(exps, coeff);
    return p;
  }

  Rational parse_number() {
    const std::size_t start = pos_;
    const int num = parse_integer(start);
    skip_space();
    if (!at_end() && peek() == '/') {
      ++pos_;
      skip_space();
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
        fail("expected a denominator");
      const int den = parse_integer(pos_);
      if (den == 0) fail("zero denominator");
      return Rational(num) / Rational(den);
    }
    return Rational(num);
  }

  int parse_integer(std::size_t start) {
    long long v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > 1'000'000'000) {
        pos_ = start;
        fail("integer too large");
      }
      ++pos_;
    }
    return static_cast<int>(v);
  }

  std::size_t parse_variable() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    pos_ = start;
    fail("unknown variable '" + std::string(name) + "'");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " in polynomial \"" + std::string(text_) + "\"", 0, pos_ + 1);
  }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names) {
  return PolynomialParser(text, names).parse();
}

}  // namespace koszul
