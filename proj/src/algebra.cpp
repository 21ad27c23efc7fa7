#include "koszul/algebra.hpp"

#include <cctype>
#include <set>

namespace koszul {

AlgebraSpec AlgebraSpec::polynomial_ring(FieldSpec field, const std::vector<std::string>& names) {
  AlgebraSpec a;
  a.field = field;
  for (const auto& n : names) a.variables.push_back({n, 1, 0});
  return a;
}

std::vector<std::string> AlgebraSpec::names() const {
  std::vector<std::string> out;
  for (const auto& v : variables) out.push_back(v.name);
  return out;
}

Bidegree AlgebraSpec::degree(const Exponents& e) const {
  Bidegree d;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    d.sym += e[i] * variables[i].sym;
    d.weight += e[i] * variables[i].weight;
  }
  return d;
}

bool AlgebraSpec::is_homogeneous(const Polynomial& f) const {
  std::optional<Bidegree> seen;
  for (const auto& [e, c] : f.terms()) {
    const Bidegree d = degree(e);
    if (seen && *seen != d) return false;
    seen = d;
  }
  return true;
}

std::optional<Bidegree> AlgebraSpec::degree(const Polynomial& f) const {
  if (f.is_zero()) return std::nullopt;
  if (!is_homogeneous(f)) throw ValidationError("polynomial " + f.to_string(names()) + " is not homogeneous");
  return degree(f.terms().begin()->first);
}

namespace {

// Exponent vectors on the variables listed in `vars` whose weights sum to `target`.
void enumerate(const std::vector<std::size_t>& vars, const std::vector<int>& step, std::size_t pos,
               int remaining, Exponents& current, std::vector<Exponents>& out) {
  if (pos == vars.size()) {
    if (remaining == 0) out.push_back(current);
    return;
  }
  const int w = step[pos];
  for (int e = remaining / w; e >= 0; --e) {
    current[vars[pos]] = e;
    enumerate(vars, step, pos + 1, remaining - e * w, current, out);
  }
  current[vars[pos]] = 0;
}

}  // namespace

std::vector<Exponents> AlgebraSpec::monomials(Bidegree d) const {
  std::vector<std::size_t> base, fibre;
  std::vector<int> base_w, fibre_s;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].sym == 0) {
      base.push_back(i);
      base_w.push_back(variables[i].weight);
    } else {
      fibre.push_back(i);
      fibre_s.push_back(variables[i].sym);
    }
  }
  std::vector<Exponents> out;
  if (d.sym < 0) return out;
  Exponents current(variables.size(), 0);
  std::vector<Exponents> fibre_parts;
  enumerate(fibre, fibre_s, 0, d.sym, current, fibre_parts);
  for (Exponents& f : fibre_parts) {
    const int rest = d.weight - degree(f).weight;
    if (rest < 0) continue;
    std::vector<Exponents> base_parts;
    Exponents cur(f);
    enumerate(base, base_w, 0, rest, cur, base_parts);
    for (auto& m : base_parts) out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

int AlgebraSpec::max_weight() const {
  int w = 0;
  for (const auto& v : variables)
    if (v.sym == 0) w = std::max(w, v.weight);
  return w;
}

bool AlgebraSpec::has_sym_variables() const {
  return std::any_of(variables.begin(), variables.end(), [](const Variable& v) { return v.sym > 0; });
}

std::pair<int, int> AlgebraSpec::sym_variable_weight_range() const {
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  for (const auto& v : variables)
    if (v.sym > 0) {
      lo = std::min(lo, v.weight);
      hi = std::max(hi, v.weight);
    }
  if (lo > hi) return {0, 0};
  return {lo, hi};
}

void AlgebraSpec::validate() const {
  field.validate();
  std::set<std::string> seen;
  for (const auto& v : variables) {
    if (v.name.empty() || !(std::isalpha(static_cast<unsigned char>(v.name[0])) || v.name[0] == '_'))
      throw ValidationError("invalid variable name '" + v.name + "'");
    for (char c : v.name)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw ValidationError("invalid variable name '" + v.name + "'");
    if (!seen.insert(v.name).second) throw ValidationError("duplicate variable '" + v.name + "'");
    if (v.sym < 0) throw ValidationError("variable '" + v.name + "' has negative symmetric degree");
    if (v.sym == 0 && v.weight <= 0)
      throw ValidationError("variable '" + v.name + "' must have a positive weight (got " +
                            std::to_string(v.weight) + ")");
  }
  for (const auto& g : relators) {
    if (g.variable_count() != variables.size() && !g.is_zero())
      throw ValidationError("relator has the wrong number of variables");
    if (!is_homogeneous(g)) throw ValidationError("relator " + g.to_string(names()) + " is not homogeneous");
    if (!g.is_zero() && degree(g)->sym == 0 && degree(g)->weight == 0)
      throw ValidationError("relator " + g.to_string(names()) + " is a nonzero constant");
  }
}

void check_piece_limit(const Limits& limits, Index ambient, const std::string& what) {
  if (ambient > limits.max_piece_dim)
    throw ResourceLimitExceeded(what + " has ambient dimension " + std::to_string(ambient) +
                                ", above the limit " + std::to_string(limits.max_piece_dim));
}

}  // namespace koszul
