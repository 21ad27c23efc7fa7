#ifndef KOSZUL_GLOBAL_HPP
#define KOSZUL_GLOBAL_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "koszul/koszul.hpp"

namespace koszul {

/**
 * B = S_A(M) presented over k: the variables of A with bidegree (0, wt), then
 * one y_j per generator of M with bidegree (1, deg g_j). Relators are those of
 * A plus Σ_i r_i y_i for each relation r of M.
 */
struct RelativeSetup {
  std::shared_ptr<const AlgebraSpec> base;
  std::shared_ptr<const ModuleSpec> module;
  std::shared_ptr<const AlgebraSpec> total;

  std::size_t base_variables() const { return base->variable_count(); }
  std::size_t y_index(std::size_t j) const { return base_variables() + j; }
};

RelativeSetup make_relative_setup(std::shared_ptr<const ModuleSpec> m);

/// Ω_{B/k} over B: generators dz for every variable of B, one relation dγ per relator γ.
ModuleSpec omega_Bk(const RelativeSetup& setup);

/// The family [Ω^p_{B/k}]_n, p = 0 .. n + (number of variables of A).
template <class Scalar>
class GlobalKoszul final : public KoszulFamily<Scalar> {
 public:
  GlobalKoszul(const RelativeSetup& setup, int n, std::shared_ptr<const GradedAlgebra<Scalar>> total)
      : setup_(setup), n_(n), algebra_(std::move(total)) {
    if (n < 0) throw ValidationError("sym-degree n must be nonnegative");
    if (!(algebra_->spec() == *setup_.total)) throw ValidationError("algebra realization does not match B");
    omega_ = std::make_shared<const ModuleSpec>(omega_Bk(setup_));
    top_ = n + static_cast<int>(setup_.base_variables());
    const int rank = static_cast<int>(omega_->rank());
    for (int p = 0; p <= top_; ++p) {
      tuples_.push_back(increasing_tuples(rank, p));
      std::map<std::vector<int>, std::size_t> idx;
      for (std::size_t i = 0; i < tuples_.back().size(); ++i) idx.emplace(tuples_.back()[i], i);
      index_.push_back(std::move(idx));
      terms_.push_back(
          std::make_unique<GradedModule<Scalar>>(std::make_shared<const ModuleSpec>(ext_power(*omega_, p)), algebra_));
    }
  }

  int n() const override { return n_; }
  int top() const override { return top_; }
  const Field<Scalar>& field() const override { return algebra_->field(); }
  const ModuleSpec& omega() const { return *omega_; }
  const GradedModule<Scalar>& term(int p) const { return *terms_.at(static_cast<std::size_t>(p)); }
  Index term_dim(int p, int d) const override {
    if (p < 0 || p > top_) return 0;
    return term(p).piece(Bidegree{n_, d}).dim();
  }

  DegreeWindow window(int degree_bound) const override {
    std::vector<Bidegree> degrees;
    for (const auto& t : terms_)
      for (const Generator& g : t->spec().generators) degrees.push_back(g.degree);
    return degree_window(degrees, n_, setup_.total->sym_variable_weight_range(),
                         algebra_->vanishing_degree(degree_bound + 1), degree_bound);
  }

 protected:
  // i_D(dx) = 0 and i_D(dy_j) = y_j, extended as an antiderivation.
  Matrix<Scalar> compute_contraction(int p, int d) const override {
    if (p == 0) return Matrix<Scalar>::Zero(0, term_dim(0, d));
    const auto& src = tuples_[static_cast<std::size_t>(p)];
    std::vector<std::vector<ImageTerm<Scalar>>> images(src.size());
    const std::size_t vars = algebra_->spec().variable_count();
    for (std::size_t a = 0; a < src.size(); ++a) {
      const auto& w = src[a];
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (static_cast<std::size_t>(w[k]) < setup_.base_variables()) continue;
        std::vector<int> rest(w);
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
        Exponents y(vars, 0);
        y[static_cast<std::size_t>(w[k])] = 1;
        images[a].push_back({index_[static_cast<std::size_t>(p - 1)].at(rest), field().from_int(k % 2 == 0 ? 1 : -1), y});
      }
    }
    return term(p).map_to(term(p - 1), images, Bidegree{n_, d}, "global i_D at p=" + std::to_string(p));
  }

  // d(b dz_I) = Σ_v ∂b/∂z_v dz_v ∧ dz_I; only k-linear.
  Matrix<Scalar> compute_exterior(int p, int d) const override {
    if (p == top_) return Matrix<Scalar>::Zero(0, term_dim(p, d));
    const auto& src = tuples_[static_cast<std::size_t>(p)];
    const auto& targets = index_[static_cast<std::size_t>(p + 1)];
    return term(p).linear_map(
        term(p + 1), Bidegree{n_, d}, "global d at p=" + std::to_string(p),
        [&](std::size_t i, const Exponents& beta, auto&& emit) {
          const auto& w = src[i];
          for (std::size_t v = 0; v < beta.size(); ++v) {
            if (beta[v] == 0) continue;
            const int z = static_cast<int>(v);
            const auto pos = std::lower_bound(w.begin(), w.end(), z);
            if (pos != w.end() && *pos == z) continue;
            const auto before = pos - w.begin();
            const Scalar coeff = field().from_int(before % 2 == 0 ? beta[v] : -beta[v]);
            if (is_zero(coeff)) continue;
            std::vector<int> wedge(w);
            wedge.insert(wedge.begin() + before, z);
            Exponents rest(beta);
            --rest[v];
            emit(targets.at(wedge), coeff, rest);
          }
        });
  }

 private:
  RelativeSetup setup_;
  int n_;
  int top_ = 0;
  std::shared_ptr<const GradedAlgebra<Scalar>> algebra_;
  std::shared_ptr<const ModuleSpec> omega_;
  std::vector<std::vector<std::vector<int>>> tuples_;
  std::vector<std::map<std::vector<int>, std::size_t>> index_;
  std::vector<std::unique_ptr<GradedModule<Scalar>>> terms_;
};

/// Piece of Λ^p Ω_{B/k} in bidegree (n, d).
template <class Scalar>
const ModulePiece<Scalar>& global_koszul_piece(const GlobalKoszul<Scalar>& g, int p, int d) {
  return g.term(p).piece(Bidegree{g.n(), d});
}

struct GlobalHomologyReport {
  HomologyReport homology;
  std::optional<CartanReport> cartan;
  /// Present in characteristic 0 (or when n is invertible) for n > 0.
  std::optional<HomotopyReport> homotopy;
};

template <class Scalar>
GlobalHomologyReport global_homology_table(const GlobalKoszul<Scalar>& g, int degree_bound) {
  GlobalHomologyReport r;
  r.homology = homology_table(g, degree_bound);
  r.cartan = cartan_check(g, degree_bound);
  if (g.n() > 0 && g.field().is_invertible(g.n())) r.homotopy = homotopy_triviality_check(g, degree_bound);
  return r;
}

}  // namespace koszul

#endif  // KOSZUL_GLOBAL_HPP
