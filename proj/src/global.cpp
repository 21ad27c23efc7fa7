#include "koszul/global.hpp"

#include <set>

namespace koszul {

namespace {

Polynomial widen(const Polynomial& f, std::size_t vars) {
  Polynomial out(vars);
  for (const auto& [e, c] : f.terms()) {
    Exponents w(vars, 0);
    std::copy(e.begin(), e.end(), w.begin());
    out.add_term(w, c);
  }
  return out;
}

}  // namespace

RelativeSetup make_relative_setup(std::shared_ptr<const ModuleSpec> m) {
  m->validate();
  const AlgebraSpec& a = *m->algebra;
  if (a.has_sym_variables()) throw ValidationError("base algebra must not have sym-degree variables");
  AlgebraSpec b;
  b.field = a.field;
  b.variables = a.variables;
  std::set<std::string> used;
  for (const auto& v : a.variables) used.insert(v.name);
  for (const Generator& g : m->generators) {
    if (g.degree.sym != 0) throw ValidationError("module generators must have sym-degree 0");
    std::string name = g.name;
    while (used.count(name)) name += "_y";
    used.insert(name);
    b.variables.push_back({name, g.degree.weight, 1});
  }
  const std::size_t vars = b.variables.size();
  for (const Polynomial& f : a.relators) b.relators.push_back(widen(f, vars));
  for (const auto& rel : m->relations) {
    Polynomial f(vars);
    for (std::size_t i = 0; i < rel.size(); ++i) {
      Exponents y(vars, 0);
      y[a.variable_count() + i] = 1;
      f += widen(rel[i], vars) * Polynomial::monomial(y);
    }
    b.relators.push_back(std::move(f));
  }
  b.validate();
  return RelativeSetup{m->algebra, std::move(m), std::make_shared<const AlgebraSpec>(std::move(b))};
}

ModuleSpec omega_Bk(const RelativeSetup& setup) {
  const AlgebraSpec& b = *setup.total;
  ModuleSpec out{setup.total, {}, {}};
  for (const Variable& v : b.variables) out.generators.push_back({"d" + v.name, Bidegree{v.sym, v.weight}});
  for (const Polynomial& g : b.relators) {
    std::vector<Polynomial> rel;
    for (std::size_t v = 0; v < b.variable_count(); ++v) rel.push_back(widen(g.derivative(v), b.variable_count()));
    out.relations.push_back(std::move(rel));
  }
  out.validate();
  return out;
}

}  // namespace koszul
