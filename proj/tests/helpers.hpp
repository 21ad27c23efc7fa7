#ifndef KOSZUL_TESTS_HELPERS_HPP
#define KOSZUL_TESTS_HELPERS_HPP

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "koszul/global.hpp"
#include "koszul/koszul.hpp"
#include "koszul/problem.hpp"

namespace kt {

using namespace koszul;

using AlgebraPtr = std::shared_ptr<const AlgebraSpec>;
using ModulePtr = std::shared_ptr<const ModuleSpec>;

inline AlgebraPtr ring(std::uint32_t ch, const std::vector<std::string>& names,
                       const std::vector<std::string>& relators = {}) {
  AlgebraSpec a = AlgebraSpec::polynomial_ring(FieldSpec{ch}, names);
  for (const auto& r : relators) a.relators.push_back(parse_polynomial(r, a.names()));
  a.validate();
  return std::make_shared<const AlgebraSpec>(std::move(a));
}

inline AlgebraPtr weighted_ring(std::uint32_t ch, const std::vector<std::pair<std::string, int>>& vars,
                                const std::vector<std::string>& relators = {}) {
  AlgebraSpec a;
  a.field = FieldSpec{ch};
  for (const auto& [name, w] : vars) a.variables.push_back({name, w, 0});
  for (const auto& r : relators) a.relators.push_back(parse_polynomial(r, a.names()));
  a.validate();
  return std::make_shared<const AlgebraSpec>(std::move(a));
}

/// Module with generator degrees `degs` and relations given as strings over the algebra.
inline ModulePtr module(AlgebraPtr a, const std::vector<int>& degs,
                        const std::vector<std::vector<std::string>>& relations = {}) {
  ModuleSpec m;
  m.algebra = a;
  for (std::size_t i = 0; i < degs.size(); ++i) m.generators.push_back({"g" + std::to_string(i + 1), Bidegree{0, degs[i]}});
  const auto names = a->names();
  for (const auto& rel : relations) {
    std::vector<Polynomial> row;
    for (const auto& e : rel) row.push_back(parse_polynomial(e, names));
    m.relations.push_back(std::move(row));
  }
  m.validate();
  return std::make_shared<const ModuleSpec>(std::move(m));
}

inline ModulePtr free_rank(AlgebraPtr a, int rank, int degree) {
  return module(a, std::vector<int>(static_cast<std::size_t>(rank), degree));
}

template <class S>
std::shared_ptr<const GradedAlgebra<S>> realize(AlgebraPtr a, Field<S> f, Limits limits = {}) {
  return std::make_shared<const GradedAlgebra<S>>(a, f, limits);
}

inline std::shared_ptr<const GradedAlgebra<Rational>> realize_q(AlgebraPtr a) {
  return realize(a, Field<Rational>{});
}

inline std::vector<Index> piece_dims(const ModuleSpec& m, int lo, int hi) {
  return visit_field(m.algebra->field, [&](auto f) {
    using S = typename decltype(f)::Scalar;
    GradedModule<S> g(std::make_shared<const ModuleSpec>(m), realize(m.algebra, f));
    std::vector<Index> out;
    for (int d = lo; d <= hi; ++d) out.push_back(g.piece(d).dim());
    return out;
  });
}

inline long long choose(long long a, long long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  long long r = 1;
  for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

/**
 * Random homogeneous module over the given algebra: up to `max_gens` generators
 * in degrees 0..max_deg and up to `max_rels` relations whose entries are random
 * combinations of monomials of the matching degree.
 */
inline ModulePtr random_module(std::mt19937_64& rng, AlgebraPtr a, int max_gens, int max_rels, int max_deg) {
  std::uniform_int_distribution<int> gens_d(1, max_gens), rels_d(0, max_rels), deg_d(0, max_deg), coeff_d(-2, 2);
  ModuleSpec m;
  m.algebra = a;
  const int g = gens_d(rng);
  for (int i = 0; i < g; ++i) m.generators.push_back({"g" + std::to_string(i + 1), Bidegree{0, deg_d(rng)}});
  const int r = rels_d(rng);
  const std::size_t vars = a->variable_count();
  for (int j = 0; j < r; ++j) {
    int lo = 0;
    for (const auto& gen : m.generators) lo = std::max(lo, gen.degree.weight);
    std::uniform_int_distribution<int> rel_deg(lo, lo + max_deg);
    const int delta = rel_deg(rng);
    std::vector<Polynomial> row;
    for (const auto& gen : m.generators) {
      Polynomial p(vars);
      for (const Exponents& mu : a->monomials(Bidegree{0, delta - gen.degree.weight}))
        if (const int c = coeff_d(rng); c != 0) p.add_term(mu, Rational(c));
      row.push_back(std::move(p));
    }
    m.relations.push_back(std::move(row));
  }
  m.validate();
  return std::make_shared<const ModuleSpec>(std::move(m));
}

}  // namespace kt

#endif  // KOSZUL_TESTS_HELPERS_HPP
