#include <doctest.h>

#include <thread>

#include "helpers.hpp"
#include "koszul/bott.hpp"

using namespace kt;

namespace {

template <class S>
Matrix<S> scaled_identity(Index n, const S& c) {
  Matrix<S> m = Matrix<S>::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

// Dense re-derivation of ∂² = 0 and the Cartan identity, independent of cartan_check.
template <class S>
void check_identities_dense(const KoszulFamily<S>& k, int lo, int hi) {
  const S n = k.field().from_int(k.n());
  for (int d = lo; d <= hi; ++d)
    for (int p = 0; p <= k.top(); ++p) {
      const Index dim = k.term_dim(p, d);
      if (p >= 2) CHECK(is_zero_matrix(Matrix<S>(k.contraction(p - 1, d) * k.contraction(p, d))));
      if (p + 2 <= k.top()) CHECK(is_zero_matrix(Matrix<S>(k.exterior(p + 1, d) * k.exterior(p, d))));
      Matrix<S> sum = Matrix<S>::Zero(dim, dim);
      if (p + 1 <= k.top()) sum += k.contraction(p + 1, d) * k.exterior(p, d);
      if (p >= 1) sum += k.exterior(p - 1, d) * k.contraction(p, d);
      CHECK_MESSAGE(exactly_equal(sum, scaled_identity(dim, n)), "p=", p, " d=", d, " n=", k.n());
    }
}

template <class S>
RelativeKoszul<S> family(ModulePtr m, int n, Field<S> f) {
  return RelativeKoszul<S>(m, n, realize(m->algebra, f));
}

ModulePtr ideal_xy() { return module(ring(0, {"x", "y"}), {1, 1}, {{"y", "-x"}}); }

}  // namespace

TEST_CASE("koszul terms of free modules") {
  auto k = ring(0, {});
  for (int r = 0; r <= 3; ++r)
    for (int n = 1; n <= 4; ++n) {
      auto e = free_rank(k, r + 1, 1);
      auto fam = family(e, n, Field<Rational>{});
      for (int p = 0; p <= n; ++p) CHECK(fam.term_dim(p, n) == choose(r + 1, p) * choose(n - p + r, r));
    }
  const auto t = koszul_term(*ideal_xy(), 1, 2);
  CHECK(t.module.rank() == 4);
  CHECK(koszul_term(*ideal_xy(), 3, 2).module.rank() == 0);
  CHECK(piece_dims(koszul_term(*ideal_xy(), 1, 2).module, 2, 4) == std::vector<Index>{4, 4, 5});
}

TEST_CASE("contraction matrices") {
  auto k = ring(0, {});
  SUBCASE("rank one is an isomorphism at p = 1") {
    auto a = ring(0, {"x"});
    for (int n = 1; n <= 3; ++n) {
      auto fam = family(free_rank(a, 1, 0), n, Field<Rational>{});
      for (int d = 0; d <= 4; ++d) {
        const auto& m = fam.contraction(1, d);
        CHECK(m.rows() == m.cols());
        CHECK(rank(m) == m.rows());
      }
    }
  }
  SUBCASE("p = 0 maps to zero") {
    auto fam = family(free_rank(k, 2, 1), 2, Field<Rational>{});
    CHECK(fam.contraction(0, 2).rows() == 0);
    CHECK(fam.contraction(0, 2).cols() == 3);
  }
  SUBCASE("E = k^2, p = 1, n = 2") {
    auto fam = family(free_rank(k, 2, 1), 2, Field<Rational>{});
    const auto& m = fam.contraction(1, 2);
    CHECK(m.rows() == 3);
    CHECK(m.cols() == 4);
    CHECK(rank(m) == 3);
    // e_i ⊗ e_j ↦ e_i e_j; multisets in order e0², e0e1, e1².
    CHECK(m(0, 0) == Rational(1));
    CHECK(m(1, 1) == Rational(1));
    CHECK(m(1, 2) == Rational(1));
    CHECK(m(2, 3) == Rational(1));
  }
}

TEST_CASE("exterior derivative matrices") {
  auto k = ring(0, {});
  auto fam2 = family(free_rank(k, 2, 1), 2, Field<Rational>{});
  CHECK(fam2.exterior(2, 2).rows() == 0);
  // e0² ↦ 2 e0⊗e0 and e0e1 ↦ e0⊗e1 + e1⊗e0.
  const auto& d0 = fam2.exterior(0, 2);
  CHECK(d0.rows() == 4);
  CHECK(d0.cols() == 3);
  CHECK(d0(0, 0) == Rational(2));
  CHECK(d0(1, 1) == Rational(1));
  CHECK(d0(2, 1) == Rational(1));
  CHECK(d0(3, 2) == Rational(2));

  auto fam1 = family(free_rank(k, 3, 1), 1, Field<Rational>{});
  CHECK(exactly_equal(fam1.exterior(0, 1), Matrix<Rational>::Identity(3, 3)));
}

TEST_CASE("differentials square to zero and satisfy Cartan") {
  for (const auto& [name, text] : bundled_problems()) {
    const Problem base = parse_problem(text, name);
    for (std::uint32_t ch : {0u, 2u, 3u}) {
      const Problem pr = with_characteristic(base, ch);
      visit_field(pr.algebra->field, [&](auto f) {
        for (int n = 0; n <= 3; ++n) {
          auto fam = family(pr.module, n, f);
          check_identities_dense(fam, fam.window(4).lowest, 4);
        }
      });
    }
  }
}

TEST_CASE("random modules satisfy the identities") {
  std::mt19937_64 rng(314159);
  const std::vector<AlgebraPtr> algebras{ring(0, {"x", "y"}), ring(2, {"x", "y"}, {"x^2"}),
                                         ring(3, {"x", "y"}, {"x*y"})};
  for (const auto& a : algebras)
    for (int trial = 0; trial < 5; ++trial) {
      const auto m = random_module(rng, a, 3, 2, 1);
      visit_field(a->field, [&](auto f) {
        for (int n = 1; n <= 3; ++n) {
          auto fam = family(m, n, f);
          check_identities_dense(fam, fam.window(4).lowest, 4);
          const auto rep = homology_table(fam, 4);
          for (const auto& row : rep.rows) {
            long long chi = 0;
            for (std::size_t p = 0; p < row.homology.size(); ++p) {
              CHECK(row.homology[p] >= 0);
              chi += (p % 2 ? -1 : 1) * row.homology[p];
            }
            // Euler-Poincaré: the alternating sum of homology equals that of the terms.
            CHECK(chi == row.euler);
          }
          CHECK(cartan_check(fam, 4).holds());
        }
      });
    }
}

TEST_CASE("homology tables") {
  SUBCASE("free rank one") {
    auto a = ring(0, {"x", "y"});
    for (int n = 1; n <= 3; ++n) CHECK(homology_table(family(free_rank(a, 1, 0), n, Field<Rational>{}), 5).acyclic());
  }
  SUBCASE("the ideal (x, y)") {
    for (int n = 1; n <= 3; ++n) {
      const auto rep = homology_table(family(ideal_xy(), n, Field<Rational>{}), 6);
      CHECK(rep.acyclic());
      CHECK_FALSE(rep.complete);
      for (const auto& row : rep.rows) CHECK(row.euler == 0);
    }
  }
  SUBCASE("the residue field over A = k") {
    auto k = ring(0, {});
    for (int n = 1; n <= 4; ++n) {
      auto fam = family(free_rank(k, 1, 0), n, Field<Rational>{});
      const auto rep = homology_table(fam, 3);
      CHECK(rep.complete);
      CHECK(rep.acyclic());
      for (int p = 2; p <= n; ++p) CHECK(fam.term_dim(p, 0) == 0);
    }
  }
  SUBCASE("n = 0 is never exact") {
    const auto rep = homology_table(family(ideal_xy(), 0, Field<Rational>{}), 3);
    CHECK(rep.higher_vanishes());
    CHECK_FALSE(rep.cokernel_vanishes());
  }
  SUBCASE("a cyclic module in characteristic 2") {
    // M = k[x]/(x^2): Λ^{>=2} M = 0 and M ⊗ S^{n-1} M -> S^n M is the identity of A/I,
    // so the complex is exact even though the Cartan scalar is 0.
    auto a = ring(2, {"x"});
    auto fam = family(module(a, {0}, {{"x^2"}}), 2, Field<Fp>{2});
    const auto rep = homology_table(fam, 4);
    CHECK(cartan_check(fam, 4).holds());
    CHECK(cartan_check(fam, 4).scalar == 0);
    CHECK(rep.acyclic());
    CHECK(fam.term_dim(2, 1) == 0);
  }
}

TEST_CASE("homotopy triviality") {
  auto remark = parse_problem(*bundled_problem("remark-ring"), "remark-ring");
  auto fam1 = family(remark.module, 1, Field<Rational>{});
  const auto r1 = homotopy_triviality_check(fam1, 4);
  CHECK(r1.holds());
  CHECK(r1.homology.acyclic());

  const auto r2 = homotopy_triviality_check(family(ideal_xy(), 2, Field<Rational>{}), 6);
  CHECK(r2.holds());

  auto a3 = ring(3, {"x", "y"});
  auto fam3 = family(module(a3, {1, 1}, {{"y", "-x"}}), 3, Field<Fp>{3});
  CHECK_THROWS_AS(homotopy_triviality_check(fam3, 4), PreconditionError);
  CHECK_THROWS_AS(homotopy_triviality_check(family(ideal_xy(), 0, Field<Rational>{}), 4), PreconditionError);
  // The engine still computes homology where the homotopy is unavailable.
  CHECK(homology_table(fam3, 5).acyclic());
}

TEST_CASE("kernel dimensions match the closed form") {
  for (int r = 0; r <= 3; ++r)
    for (int n = 1; n <= 4; ++n)
      for (int p = 0; p <= r; ++p) CHECK(k_dim_engine(r, p, n) == bott_h0(r, p, n));
}

TEST_CASE("acyclicity scan") {
  auto a = ring(0, {"x", "y"});
  auto alg = realize_q(a);
  const auto free_scan = acyclicity_scan(free_rank(a, 2, 0), alg, 3, 4);
  CHECK_FALSE(free_scan.largest_non_acyclic.has_value());
  CHECK(free_scan.mu.count == 2);
  CHECK(free_scan.top_homology_vanishes == true);

  const auto ideal_scan = acyclicity_scan(ideal_xy(), alg, 3, 5);
  CHECK_FALSE(ideal_scan.largest_non_acyclic.has_value());
  CHECK(ideal_scan.nonzero_homology.empty());
  CHECK(ideal_scan.mu.count == 2);
  CHECK(ideal_scan.top_homology_vanishes == true);

  // M = F_2[x]/(x^2) is cyclic: μ = 1 and every Kos_n is exact.
  auto a2 = ring(2, {"x"});
  const auto torsion = acyclicity_scan(module(a2, {0}, {{"x^2"}}), realize(a2, Field<Fp>{2}), 3, 4);
  CHECK(torsion.mu.count == 1);
  CHECK(torsion.top_homology_vanishes == true);
  CHECK_FALSE(torsion.largest_non_acyclic.has_value());
}

TEST_CASE("homology is the same when slices are computed concurrently") {
  auto remark = parse_problem(*bundled_problem("remark-ring"), "remark-ring");
  auto fam = family(remark.module, 2, Field<Rational>{});
  std::vector<HomologyReport> reports(4);
  std::vector<std::thread> workers;
  for (std::size_t t = 0; t < reports.size(); ++t)
    workers.emplace_back([&, t] { reports[t] = homology_table(fam, 4); });
  for (auto& w : workers) w.join();
  const auto serial = homology_table(family(remark.module, 2, Field<Rational>{}), 4);
  for (const auto& r : reports) {
    REQUIRE(r.rows.size() == serial.rows.size());
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      CHECK(r.rows[i].homology == serial.rows[i].homology);
      CHECK(r.rows[i].ranks == serial.rows[i].ranks);
    }
  }
}
