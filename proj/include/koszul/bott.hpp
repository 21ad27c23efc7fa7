#ifndef KOSZUL_BOTT_HPP
#define KOSZUL_BOTT_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koszul/koszul.hpp"

namespace koszul {

/// a choose b; 0 when a < 0, b < 0 or a < b. Throws ValidationError past 64 bits.
long long binom(long long a, long long b);

/// dim H^0(P^r, Ω^p(n)) = C(n+r-p, n) C(n-1, p), n > 0.
long long bott_h0(int r, int p, int n);
/// dim H^r(P^r, Ω^p(-n)) = C(n+p, n) C(n-1, r-p), n > 0.
long long bott_hr(int r, int p, int n);
/// dim H^p(P^r, Ω^p) = 1 for 0 <= p <= r.
long long bott_h_diag(int r, int p);

struct SignedTerm {
  int sign = 1;
  long long value = 0;
  std::string label;
};

struct DimensionResult {
  long long value = 0;
  std::vector<SignedTerm> trace;
};

/// Σ_{i=0}^p (-1)^i C(r+1, p-i) C(n+r-p+i, r).
DimensionResult verdier_sum(int r, int p, int n);

/// C(n+r-p,n)C(n-1,p) + C(n+r-p+1,n)C(n-1,p-1) == C(r+1,p)C(n-p+r,r).
bool binomial_identity_check(int r, int p, int n);

/**
 * dim K_{p,n}: kernel of i_D at position p of Kos(E)_n in internal degree n,
 * for E = k^{r+1} in degree 1 over A = k. K_{0,n} is all of S^n E.
 */
template <class Scalar = Rational>
long long k_dim_engine(int r, int p, int n, Field<Scalar> field = {}) {
  if (n <= 0) throw PreconditionError("k_dim_engine needs n > 0");
  if (p < 0 || p > n) return 0;
  auto algebra = std::make_shared<const AlgebraSpec>(AlgebraSpec::polynomial_ring(field.spec(), {}));
  std::vector<Generator> gens;
  for (int i = 0; i <= r; ++i) gens.push_back({"e" + std::to_string(i), Bidegree{0, 1}});
  auto e = std::make_shared<const ModuleSpec>(free_module(algebra, gens));
  RelativeKoszul<Scalar> k(e, n, std::make_shared<const GradedAlgebra<Scalar>>(algebra, field));
  return static_cast<long long>(k.term_dim(p, n) - rank(k.contraction(p, n)));
}

/// K_{p,n} + K_{p-1,n} == C(r+1,p) C(n-p+r,r) using engine kernels over Q.
bool splitting_dim_check(int r, int p, int n);

/**
 * h[q][j]: dim H^q(X, Λ^j E ⊗ S^{n-j} E) for the relative calculators, or
 * dim H^q(X, [Ω^j_{B/k}]_n) for the absolute ones.
 */
struct BundleCohomologyTable {
  int r = 0;
  int n = 0;
  bool characteristic_zero = true;
  std::map<std::pair<int, int>, long long> h;
  std::string note;
  /// Declared dimension d of a smooth base X; required by the smooth negative-twist formula.
  std::optional<int> smooth_dimension;

  /// Entry (q, j); zero for q < 0 or j outside [0, max_j]; throws when a needed entry is absent.
  long long at(int q, int j, int max_j) const;
};

/// h[0][j] = C(r+1, j) C(n-j+r, r): the table of a point.
BundleCohomologyTable point_table(int r, int n);

/// dim H^q(P, Ω^p_{P/X}(n)) = Σ_{i=0}^p (-1)^i h[q][p-i].
DimensionResult relative_bundle_cohomology(const BundleCohomologyTable& table, int q, int p);
/// dim H^q(P, Ω^p_{P/X}(-n)) = Σ_{i=0}^p (-1)^i h*[q-r][p̄+i], p̄ = r+1-p, from the table of E*.
DimensionResult relative_bundle_cohomology_negative(const BundleCohomologyTable& dual_table, int q, int p);
/// H^q(P, Ω^p_{P/X}) = H^{q-p}(X, O); structure[i] = dim H^i(X, O).
long long relative_untwisted(const std::vector<long long>& structure, int q, int p);

/// dim H^q(P, Ω^p_{P/k}(n)) = Σ_{i=0}^p (-1)^i h[q][p-i].
DimensionResult absolute_bundle_cohomology(const BundleCohomologyTable& table, int q, int p);
/// dim H^q(P, Ω^p_{P/k}(-n)) = Σ_{i=0}^{d+r-p} (-1)^i h[d+r-q][d+r-p-i] for smooth X of dimension d.
DimensionResult absolute_bundle_cohomology_negative(const BundleCohomologyTable& table, int q, int p);
/**
 * dim H^q(X, R^r π_* Ω̃^p_{B/k}(-n)) as Σ_{j=0}^p mixed[(p-j, r+1-j)], where
 * mixed[(a, b)] = dim H^q(X, Ω^a_X ⊗ Λ^b E* ⊗ S^{n-b} E*). Only valid when the
 * direct-sum decomposition holds globally, which the caller must assert.
 */
DimensionResult absolute_rr_split_sum(const std::map<std::pair<int, int>, long long>& mixed, int r, int p,
                                      bool assume_locally_trivial);
/// H^q(P, Ω^p_{P/k}) = ⊕_{i=0}^r H^{q-i}(X, Ω^{p-i}_{X/k}); hodge[(a, b)] = dim H^a(X, Ω^b).
DimensionResult hodge_sum(const std::map<std::pair<int, int>, long long>& hodge, int r, int q, int p);

}  // namespace koszul

#endif  // KOSZUL_BOTT_HPP
