// Acceptance suite: one PASS/FAIL line per criterion. Each criterion yields a
// JSON report; the determinism criterion recomputes all of them and compares bytes.

#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "koszul/bott.hpp"
#include "koszul/global.hpp"
#include "koszul/koszul.hpp"
#include "koszul/problem.hpp"
#include "koszul/report.hpp"

using namespace koszul;

namespace {

struct Outcome {
  bool pass = true;
  Json report = Json::object();
};

void fail(Outcome& o, Json where) {
  o.pass = false;
  if (!o.report.contains("failures")) o.report["failures"] = Json::array();
  if (o.report["failures"].size() < 20) o.report["failures"].push_back(std::move(where));
}

// Closed form written out independently of the library.
long long closed_form(int r, int p, int n) { return binom(n + r - p, n) * binom(n - 1, p); }

template <class S>
std::shared_ptr<const GradedAlgebra<S>> realize(std::shared_ptr<const AlgebraSpec> a, Field<S> f) {
  return std::make_shared<const GradedAlgebra<S>>(a, f);
}

Outcome bott_oracle() {
  Outcome o;
  long long checked = 0;
  for (int r = 0; r <= 3; ++r)
    for (int n = 1; n <= 4; ++n)
      for (int p = 0; p <= r; ++p, ++checked)
        if (const long long got = k_dim_engine(r, p, n); got != closed_form(r, p, n))
          fail(o, {{"r", r}, {"p", p}, {"n", n}, {"engine", got}, {"closed_form", closed_form(r, p, n)}});
  o.report["checked"] = checked;
  return o;
}

Outcome binomial_identity() {
  Outcome o;
  long long checked = 0;
  for (int r = 0; r <= 8; ++r)
    for (int p = 0; p <= r + 1; ++p)
      for (int n = 1; n <= 12; ++n, ++checked)
        if (!binomial_identity_check(r, p, n)) fail(o, {{"r", r}, {"p", p}, {"n", n}});
  o.report["checked"] = checked;
  return o;
}

Outcome verdier() {
  Outcome o;
  long long checked = 0;
  for (int r = 0; r <= 8; ++r)
    for (int p = 0; p <= r + 1; ++p)
      for (int n = 1; n <= 12; ++n, ++checked)
        if (const long long v = verdier_sum(r, p, n).value; v != closed_form(r, p, n))
          fail(o, {{"r", r}, {"p", p}, {"n", n}, {"verdier", v}});
  o.report["checked"] = checked;
  return o;
}

Outcome splitting() {
  Outcome o;
  long long checked = 0;
  for (int r = 0; r <= 3; ++r)
    for (int n = 1; n <= 4; ++n)
      for (int p = 0; p <= r + 1; ++p, ++checked) {
        const long long sum = k_dim_engine(r, p, n) + (p > 0 ? k_dim_engine(r, p - 1, n) : 0);
        const long long expected = binom(r + 1, p) * binom(n - p + r, r);
        if (sum != expected || !splitting_dim_check(r, p, n))
          fail(o, {{"r", r}, {"p", p}, {"n", n}, {"sum", sum}, {"expected", expected}});
      }
  o.report["checked"] = checked;
  return o;
}

Outcome cartan_all() {
  Outcome o;
  long long slices = 0;
  for (const auto& [name, text] : bundled_problems()) {
    const Problem base = parse_problem(text, name);
    for (std::uint32_t ch : {0u, 2u, 3u}) {
      const Problem pr = with_characteristic(base, ch);
      visit_field(pr.algebra->field, [&](auto f) {
        using S = typename decltype(f)::Scalar;
        auto alg = realize(pr.algebra, f);
        for (int n = 0; n <= 4; ++n) {
          RelativeKoszul<S> k(pr.module, n, alg);
          const CartanReport r = cartan_check(k, 6);
          slices += static_cast<long long>(r.slices_checked);
          if (!r.holds()) fail(o, {{"problem", name}, {"characteristic", ch}, {"n", n}, {"report", to_json(r)}});
        }
      });
    }
  }
  o.report["slices_checked"] = slices;
  return o;
}

Outcome homotopy_char0() {
  Outcome o;
  Json covered = Json::array();
  for (const auto& [name, text] : bundled_problems()) {
    const Problem pr = parse_problem(text, name);
    if (pr.algebra->field.characteristic != 0) continue;
    covered.push_back(name);
    auto alg = realize(pr.algebra, Field<Rational>{});
    const int bound = pr.task.degree_bound.value_or(6);
    for (int n = 1; n <= 4; ++n) {
      RelativeKoszul<Rational> k(pr.module, n, alg);
      const HomotopyReport r = homotopy_triviality_check(k, bound);
      if (!r.holds() || !r.homology.acyclic())
        fail(o, {{"problem", name}, {"n", n}, {"holds", r.holds()}, {"acyclic", r.homology.acyclic()}});
    }
  }
  o.report["problems"] = covered;
  return o;
}

Outcome regular_ideals() {
  Outcome o;
  for (const char* name : {"regular-ideal-xy", "regular-ideal-xyz"}) {
    const Problem pr = parse_problem(*bundled_problem(name), name);
    if (!pr.regular_ideal || !pr.regular_ideal->presentation_ok) fail(o, {{"problem", name}, {"detail", "presentation"}});
    auto alg = realize(pr.algebra, Field<Rational>{});
    for (int n = 1; n <= 3; ++n) {
      RelativeKoszul<Rational> k(pr.module, n, alg);
      const HomologyReport r = homology_table(k, 6);
      o.report[name].push_back(to_json(r));
      if (!r.acyclic()) fail(o, {{"problem", name}, {"n", n}});
    }
  }
  return o;
}

// Random presentation over k[x, y]: generators and relations all in degrees <= 2.
std::shared_ptr<const ModuleSpec> random_presentation(std::mt19937_64& rng, std::shared_ptr<const AlgebraSpec> a) {
  std::uniform_int_distribution<int> gens_d(1, 3), rels_d(0, 2), deg_d(0, 2), coeff_d(-2, 2);
  ModuleSpec m;
  m.algebra = a;
  const int g = gens_d(rng);
  int top = 0;
  for (int i = 0; i < g; ++i) {
    const int d = deg_d(rng);
    top = std::max(top, d);
    m.generators.push_back({"g" + std::to_string(i + 1), Bidegree{0, d}});
  }
  const int r = rels_d(rng);
  for (int j = 0; j < r; ++j) {
    const int delta = std::uniform_int_distribution<int>(top, 2)(rng);
    std::vector<Polynomial> row;
    for (const auto& gen : m.generators) {
      Polynomial p(a->variable_count());
      for (const Exponents& mu : a->monomials(Bidegree{0, delta - gen.degree.weight}))
        if (const int c = coeff_d(rng); c != 0) p.add_term(mu, Rational(c));
      row.push_back(std::move(p));
    }
    m.relations.push_back(std::move(row));
  }
  m.validate();
  return std::make_shared<const ModuleSpec>(std::move(m));
}

Outcome top_homology() {
  Outcome o;
  std::mt19937_64 rng(20070101);
  Json counts = Json::object();
  for (std::uint32_t ch : {2u, 0u}) {
    AlgebraSpec spec = AlgebraSpec::polynomial_ring(FieldSpec{ch}, {"x", "y"});
    spec.validate();
    auto a = std::make_shared<const AlgebraSpec>(std::move(spec));
    long long tried = 0;
    for (int trial = 0; trial < 30; ++trial, ++tried) {
      const auto m = random_presentation(rng, a);
      visit_field(a->field, [&](auto f) {
        const ScanSummary s = acyclicity_scan(m, realize(a, f), 0, 6);
        if (s.mu.possible_undercount || s.top_homology_vanishes == false)
          fail(o, {{"characteristic", ch}, {"trial", trial}, {"mu", to_json(s.mu)}});
      });
    }
    counts[std::to_string(ch)] = tried;
  }
  o.report["modules_by_characteristic"] = counts;
  return o;
}

Outcome free_modules() {
  Outcome o;
  for (const std::vector<std::string>& vars : {std::vector<std::string>{}, std::vector<std::string>{"x", "y"}}) {
    AlgebraSpec spec = AlgebraSpec::polynomial_ring(FieldSpec{0}, vars);
    spec.validate();
    auto a = std::make_shared<const AlgebraSpec>(std::move(spec));
    auto alg = realize(a, Field<Rational>{});
    for (int rank = 1; rank <= 4; ++rank) {
      ModuleSpec m;
      m.algebra = a;
      for (int i = 0; i < rank; ++i) m.generators.push_back({"e" + std::to_string(i), Bidegree{0, 0}});
      m.validate();
      auto mp = std::make_shared<const ModuleSpec>(std::move(m));
      for (int n = 1; n <= 4; ++n) {
        RelativeKoszul<Rational> k(mp, n, alg);
        const HomologyReport r = homology_table(k, vars.empty() ? 4 : 3);
        if (!r.acyclic()) fail(o, {{"variables", vars.size()}, {"rank", rank}, {"n", n}});
      }
    }
  }
  return o;
}

Outcome global_degeneration() {
  Outcome o;
  Json covered = Json::array();
  for (const auto& [name, text] : bundled_problems()) {
    const Problem pr = parse_problem(text, name);
    if (pr.algebra->variable_count() != 0) continue;
    covered.push_back(name);
    const auto setup = make_relative_setup(pr.module);
    auto total = realize(setup.total, Field<Rational>{});
    auto base = realize(pr.algebra, Field<Rational>{});
    for (int n = 0; n <= 3; ++n) {
      GlobalKoszul<Rational> g(setup, n, total);
      RelativeKoszul<Rational> k(pr.module, n, base);
      if (to_json(global_homology_table(g, 6).homology) != to_json(homology_table(k, 6)))
        fail(o, {{"problem", name}, {"n", n}, {"detail", "tables differ"}});
      for (int d = -1; d <= 6; ++d)
        for (int q = 0; q <= n; ++q)
          if (g.term_dim(q, d) != k.term_dim(q, d) || !exactly_equal(g.contraction(q, d), k.contraction(q, d)) ||
              !exactly_equal(g.exterior(q, d), k.exterior(q, d)))
            fail(o, {{"problem", name}, {"n", n}, {"p", q}, {"degree", d}});
    }
  }
  o.report["problems"] = covered;
  if (covered.empty()) fail(o, {{"detail", "no bundled module over a field"}});
  return o;
}

Outcome point_reduction() {
  Outcome o;
  long long checked = 0;
  for (int r = 0; r <= 3; ++r)
    for (int n = 1; n <= 4; ++n) {
      const BundleCohomologyTable t = point_table(r, n);
      for (int p = 0; p <= r; ++p, ++checked) {
        const long long rel = relative_bundle_cohomology(t, 0, p).value;
        const long long abs = absolute_bundle_cohomology(t, 0, p).value;
        if (rel != closed_form(r, p, n) || abs != closed_form(r, p, n))
          fail(o, {{"r", r}, {"p", p}, {"n", n}, {"relative", rel}, {"absolute", abs}});
      }
    }
  o.report["checked"] = checked;
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::string(argv[1]) == "--verbose";
  const std::vector<Criterion> criteria{
      {1, "kernel dimensions match the Bott closed form", bott_oracle},
      {2, "binomial identity, r <= 8, n <= 12", binomial_identity},
      {3, "alternating sum equals the closed form", verdier},
      {4, "kernel splitting dimensions over Q", splitting},
      {5, "Cartan identity, bundled problems, chars 0/2/3", cartan_all},
      {6, "homotopy triviality over Q", homotopy_char0},
      {7, "regular ideals (x,y) and (x,y,z) are acyclic", regular_ideals},
      {8, "top homology vanishes on random presentations", top_homology},
      {9, "free modules are acyclic", free_modules},
      {10, "global tables equal relative tables over a field", global_degeneration},
      {11, "bundle calculators reduce to Bott at a point", point_reduction},
  };

  bool all = true;
  std::vector<std::string> first;
  for (const auto& c : criteria) {
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.report["exception"] = e.what();
    }
    first.push_back(dump(out.report));
    all = all && out.pass;
    std::cout << (out.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << "\n";
    if (!out.pass || verbose) std::cout << first.back();
    std::cout.flush();
  }

  bool identical = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string again;
    try {
      again = dump(criteria[i].run().report);
    } catch (const std::exception& e) {
      again = e.what();
    }
    if (again != first[i]) {
      identical = false;
      std::cout << "  criterion " << criteria[i].id << " report differs between runs\n";
    }
  }
  all = all && identical;
  std::cout << (identical ? "PASS" : "FAIL") << "  criterion 12: byte-identical reports across two runs\n";
  return all ? 0 : 1;
}
