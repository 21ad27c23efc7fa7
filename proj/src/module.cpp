#include "koszul/module.hpp"

#include <set>

namespace koszul {

namespace {

std::vector<Polynomial> zero_vector(std::size_t vars, std::size_t len) {
  return std::vector<Polynomial>(len, Polynomial(vars));
}

std::string join(const std::vector<int>& idx, const std::vector<Generator>& gens, const std::string& sep) {
  if (idx.empty()) return "1";
  std::string out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) out += sep;
    out += gens[static_cast<std::size_t>(idx[k])].name;
  }
  return out;
}

Bidegree total_degree(const std::vector<int>& idx, const std::vector<Generator>& gens) {
  Bidegree d;
  for (int i : idx) d = d + gens[static_cast<std::size_t>(i)].degree;
  return d;
}

void multisets_rec(int m, int n, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < m; ++i) {
    cur.push_back(i);
    multisets_rec(m, n, i, cur, out);
    cur.pop_back();
  }
}

void tuples_rec(int m, int p, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == p) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < m; ++i) {
    cur.push_back(i);
    tuples_rec(m, p, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::optional<Bidegree> ModuleSpec::relation_degree(std::size_t j) const {
  const auto& rel = relations.at(j);
  for (std::size_t i = 0; i < rel.size(); ++i) {
    const auto d = algebra->degree(rel[i]);
    if (d) return *d + generators[i].degree;
  }
  return std::nullopt;
}

std::vector<std::string> ModuleSpec::generator_names() const {
  std::vector<std::string> out;
  for (const auto& g : generators) out.push_back(g.name);
  return out;
}

void ModuleSpec::validate() const {
  if (!algebra) throw ValidationError("module has no algebra");
  for (std::size_t j = 0; j < relations.size(); ++j) {
    if (relations[j].size() != generators.size())
      throw ValidationError("relation " + std::to_string(j + 1) + " has " + std::to_string(relations[j].size()) +
                            " entries, expected " + std::to_string(generators.size()));
    const auto deg = relation_degree(j);
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const auto d = algebra->degree(relations[j][i]);
      if (d && *d + generators[i].degree != *deg)
        throw ValidationError("relation " + std::to_string(j + 1) + " is not homogeneous: entry for generator '" +
                              generators[i].name + "' has degree " + to_string(*d + generators[i].degree) +
                              ", expected " + to_string(*deg));
    }
  }
}

ModuleSpec free_module(std::shared_ptr<const AlgebraSpec> algebra, const std::vector<Generator>& generators) {
  return ModuleSpec{std::move(algebra), generators, {}};
}

ModuleSpec tensor(const ModuleSpec& m, const ModuleSpec& n) {
  if (!(*m.algebra == *n.algebra)) throw ValidationError("tensor product of modules over different algebras");
  const std::size_t vars = m.algebra->variable_count();
  const std::size_t rn = n.rank();
  ModuleSpec out{m.algebra, {}, {}};
  for (const auto& g : m.generators)
    for (const auto& h : n.generators) out.generators.push_back({g.name + "⊗" + h.name, g.degree + h.degree});
  for (const auto& r : m.relations)
    for (std::size_t j = 0; j < rn; ++j) {
      auto rel = zero_vector(vars, out.rank());
      for (std::size_t i = 0; i < m.rank(); ++i) rel[i * rn + j] = r[i];
      out.relations.push_back(std::move(rel));
    }
  for (std::size_t i = 0; i < m.rank(); ++i)
    for (const auto& s : n.relations) {
      auto rel = zero_vector(vars, out.rank());
      for (std::size_t j = 0; j < rn; ++j) rel[i * rn + j] = s[j];
      out.relations.push_back(std::move(rel));
    }
  return out;
}

std::vector<std::vector<int>> multisets(int m, int n) {
  std::vector<std::vector<int>> out;
  if (n < 0) return out;
  std::vector<int> cur;
  multisets_rec(m, n, 0, cur, out);
  return out;
}

std::vector<std::vector<int>> increasing_tuples(int m, int p) {
  std::vector<std::vector<int>> out;
  if (p < 0) return out;
  std::vector<int> cur;
  tuples_rec(m, p, 0, cur, out);
  return out;
}

ModuleSpec sym_power(const ModuleSpec& m, int n) {
  const std::size_t vars = m.algebra->variable_count();
  const int rank = static_cast<int>(m.rank());
  ModuleSpec out{m.algebra, {}, {}};
  if (n < 0) return out;
  const auto gens = multisets(rank, n);
  std::map<std::vector<int>, std::size_t> index;
  for (const auto& s : gens) {
    index.emplace(s, out.generators.size());
    out.generators.push_back({join(s, m.generators, "·"), total_degree(s, m.generators)});
  }
  if (n == 0) return out;
  for (const auto& r : m.relations)
    for (const auto& u : multisets(rank, n - 1)) {
      auto rel = zero_vector(vars, out.rank());
      for (int i = 0; i < rank; ++i) {
        std::vector<int> s(u);
        s.insert(std::upper_bound(s.begin(), s.end(), i), i);
        rel[index.at(s)] += r[static_cast<std::size_t>(i)];
      }
      out.relations.push_back(std::move(rel));
    }
  return out;
}

ModuleSpec ext_power(const ModuleSpec& m, int p) {
  const std::size_t vars = m.algebra->variable_count();
  const int rank = static_cast<int>(m.rank());
  ModuleSpec out{m.algebra, {}, {}};
  if (p < 0) return out;
  const auto gens = increasing_tuples(rank, p);
  std::map<std::vector<int>, std::size_t> index;
  for (const auto& t : gens) {
    index.emplace(t, out.generators.size());
    out.generators.push_back({join(t, m.generators, "∧"), total_degree(t, m.generators)});
  }
  if (p == 0 || gens.empty()) return out;
  for (const auto& r : m.relations)
    for (const auto& v : increasing_tuples(rank, p - 1)) {
      auto rel = zero_vector(vars, out.rank());
      for (int i = 0; i < rank; ++i) {
        const auto pos = std::lower_bound(v.begin(), v.end(), i);
        if (pos != v.end() && *pos == i) continue;
        // Moving g_i past the smaller factors costs one sign per transposition.
        const auto before = pos - v.begin();
        std::vector<int> t(v);
        t.insert(t.begin() + before, i);
        rel[index.at(t)] += before % 2 == 0 ? r[static_cast<std::size_t>(i)] : -r[static_cast<std::size_t>(i)];
      }
      out.relations.push_back(std::move(rel));
    }
  return out;
}

RegularIdealModule regular_ideal_module(std::shared_ptr<const AlgebraSpec> algebra,
                                        const std::vector<Polynomial>& sequence, int check_bound) {
  RegularIdealModule out;
  ModuleSpec& m = out.module;
  m.algebra = algebra;
  const std::size_t vars = algebra->variable_count();
  std::vector<Bidegree> degrees;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const auto d = algebra->degree(sequence[i]);
    if (!d) throw ValidationError("regular sequence contains the zero element");
    degrees.push_back(*d);
    m.generators.push_back({"g" + std::to_string(i + 1), *d});
  }
  for (std::size_t i = 0; i < sequence.size(); ++i)
    for (std::size_t j = i + 1; j < sequence.size(); ++j) {
      auto rel = zero_vector(vars, sequence.size());
      rel[i] = sequence[j];
      rel[j] = -sequence[i];
      m.relations.push_back(std::move(rel));
    }
  m.validate();

  visit_field(algebra->field, [&](auto field) {
    using Scalar = typename decltype(field)::Scalar;
    auto alg = std::make_shared<const GradedAlgebra<Scalar>>(algebra, field);
    GradedModule<Scalar> mod(std::make_shared<const ModuleSpec>(m), alg);
    for (int d = 0; d <= check_bound && out.presentation_ok; ++d) {
      const auto& target = alg->piece(d);
      std::vector<Vector<Scalar>> cols;
      for (std::size_t i = 0; i < sequence.size(); ++i) {
        const auto& mult = alg->piece(Bidegree{0, d} - degrees[i]);
        for (Index k = 0; k < mult.dim(); ++k) {
          Polynomial prod = Polynomial::monomial(mult.basis_monomial(k)) * sequence[i];
          cols.push_back(alg->reduce(prod, Bidegree{0, d}));
        }
      }
      Matrix<Scalar> span(target.dim(), static_cast<Index>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c) span.col(static_cast<Index>(c)) = cols[c];
      const Index ideal_dim = cols.empty() ? 0 : rank(span);
      const Index module_dim = mod.piece(d).dim();
      if (ideal_dim != module_dim) {
        out.presentation_ok = false;
        out.diagnostic = "presentation mismatch in degree " + std::to_string(d) + ": module piece has dimension " +
                         std::to_string(module_dim) + " but the ideal piece has dimension " +
                         std::to_string(ideal_dim) + " (sequence is not regular)";
      }
    }
  });
  return out;
}

}  // namespace koszul
