#include <doctest.h>

#include "helpers.hpp"

using namespace kt;

namespace {

template <class S>
GlobalKoszul<S> global(ModulePtr m, int n, Field<S> f, const RelativeSetup& setup) {
  return GlobalKoszul<S>(setup, n, realize(setup.total, f));
}

// Ω_{A/k} as its own graded A-module: the setup of the zero module has B = A.
std::vector<Index> omega_a_dims(AlgebraPtr a, int lo, int hi) {
  const RelativeSetup s = make_relative_setup(std::make_shared<const ModuleSpec>(free_module(a, {})));
  const ModuleSpec om = omega_Bk(s);
  GradedModule<Rational> g(std::make_shared<const ModuleSpec>(om), realize_q(s.total));
  std::vector<Index> out;
  for (int d = lo; d <= hi; ++d) out.push_back(g.piece(Bidegree{0, d}).dim());
  return out;
}

}  // namespace

TEST_CASE("presentation of B and its differentials") {
  auto a = ring(0, {"x"}, {"x^2"});
  const auto setup = make_relative_setup(free_rank(a, 1, 0));
  CHECK(setup.total->variable_count() == 2);
  CHECK(setup.total->variables[1].sym == 1);
  const ModuleSpec om = omega_Bk(setup);
  CHECK(om.rank() == 2);
  CHECK(om.relations.size() == setup.total->relators.size());

  // d(x^2) = 2x dx: x dx dies over Q and survives over F_2.
  for (std::uint32_t ch : {0u, 2u}) {
    const Problem p = with_characteristic(parse_problem(*bundled_problem("dual-numbers"), "dual-numbers"), ch);
    auto m = free_module(p.algebra, {{"e", Bidegree{0, 0}}});
    const auto s = make_relative_setup(std::make_shared<const ModuleSpec>(m));
    visit_field(FieldSpec{ch}, [&](auto f) {
      using S = typename decltype(f)::Scalar;
      GradedModule<S> g(std::make_shared<const ModuleSpec>(omega_Bk(s)), realize(s.total, f));
      CHECK(g.piece(Bidegree{0, 1}).dim() == 1);
      CHECK(g.piece(Bidegree{0, 2}).dim() == (ch == 2 ? 1 : 0));
    });
  }
  CHECK(omega_a_dims(ring(0, {"x", "y"}), 0, 3) == std::vector<Index>{0, 2, 4, 6});
}

TEST_CASE("global pieces") {
  auto a = ring(0, {"x", "y"}, {"x*y"});
  const auto m = free_rank(a, 1, 0);
  const auto setup = make_relative_setup(m);
  auto g0 = global(m, 0, Field<Rational>{}, setup);
  auto alg = realize_q(a);
  for (int d = 0; d <= 4; ++d) CHECK(g0.term_dim(0, d) == alg->piece(d).dim());
  CHECK(g0.top() == 2);

  SUBCASE("additivity for free modules") {
    // dim [Ω_B]_{1,d} = dim (Ω_A ⊗ M)_d + dim M_d with M = A.
    for (auto base : {ring(0, {"x"}), ring(0, {"x"}, {"x^2"}), ring(0, {"x", "y"}, {"x*y"})}) {
      const auto mm = free_rank(base, 1, 0);
      auto g1 = global(mm, 1, Field<Rational>{}, make_relative_setup(mm));
      const auto om = omega_a_dims(base, 0, 5);
      const auto md = piece_dims(*mm, 0, 5);
      for (int d = 0; d <= 5; ++d)
        CHECK(g1.term_dim(1, d) == om[static_cast<std::size_t>(d)] + md[static_cast<std::size_t>(d)]);
    }
  }
}

TEST_CASE("global contraction") {
  auto a = ring(0, {"x"});
  const auto m = free_rank(a, 1, 0);
  const auto setup = make_relative_setup(m);
  auto g0 = global(m, 0, Field<Rational>{}, setup);
  for (int d = 0; d <= 3; ++d) CHECK(is_zero_matrix(g0.contraction(1, d)));

  // i_D(a dx + b dy) = b y on the span of x^{d-1} y dx and x^d dy: only the dy term survives.
  auto g1 = global(m, 1, Field<Rational>{}, setup);
  for (int d = 1; d <= 4; ++d) {
    const auto& c = g1.contraction(1, d);
    CHECK(c.rows() == 1);
    CHECK(c.cols() == 2);
    CHECK(rank(c) == 1);
  }
}

TEST_CASE("global Cartan and homotopy") {
  for (const char* name : {"dual-numbers", "cyclic-x", "regular-ideal-xy", "quotient-field"}) {
    const Problem base = parse_problem(*bundled_problem(name), name);
    for (std::uint32_t ch : {0u, 2u, 3u}) {
      const Problem p = with_characteristic(base, ch);
      visit_field(p.algebra->field, [&](auto f) {
        const auto setup = make_relative_setup(p.module);
        auto total = realize(setup.total, f);
        for (int n = 0; n <= 2; ++n) {
          using S = typename decltype(f)::Scalar;
          GlobalKoszul<S> g(setup, n, total);
          const auto r = global_homology_table(g, 4);
          CHECK_MESSAGE(r.cartan->holds(), name, " ch=", ch, " n=", n);
          if (r.homotopy) {
            CHECK(r.homotopy->holds());
            CHECK(r.homology.acyclic());
          }
          CHECK(r.homotopy.has_value() == (n > 0 && f.is_invertible(n)));
        }
      });
    }
  }
}

TEST_CASE("polynomial base, free module") {
  auto a = ring(0, {"x"});
  const auto m = free_rank(a, 1, 0);
  const auto setup = make_relative_setup(m);
  for (int n = 1; n <= 2; ++n) CHECK(global_homology_table(global(m, n, Field<Rational>{}, setup), 5).homology.acyclic());
}

TEST_CASE("global equals relative over a field") {
  for (const char* name : {"free-rank3-field", "quotient-field"}) {
    const Problem p = parse_problem(*bundled_problem(name), name);
    const auto setup = make_relative_setup(p.module);
    auto total = realize_q(setup.total);
    auto base = realize_q(p.algebra);
    for (int n = 0; n <= 3; ++n) {
      GlobalKoszul<Rational> g(setup, n, total);
      RelativeKoszul<Rational> k(p.module, n, base);
      CHECK(g.top() == k.top());
      for (int d = -1; d <= 6; ++d)
        for (int q = 0; q <= n; ++q) {
          CHECK(g.term_dim(q, d) == k.term_dim(q, d));
          CHECK(exactly_equal(g.contraction(q, d), k.contraction(q, d)));
          CHECK(exactly_equal(g.exterior(q, d), k.exterior(q, d)));
        }
    }
  }
}
