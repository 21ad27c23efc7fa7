#ifndef KOSZUL_ALGEBRA_HPP
#define KOSZUL_ALGEBRA_HPP

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "koszul/linalg.hpp"
#include "koszul/polynomial.hpp"

namespace koszul {

/// A variable of positive weight (sym = 0), or a symmetric-degree variable (sym >= 1, any weight).
struct Variable {
  std::string name;
  int weight = 1;
  int sym = 0;

  bool operator==(const Variable&) const = default;
};

/**
 * k[x_1..x_m] / (g_1..g_t) with weighted variables and bihomogeneous relators.
 * The symmetric-degree 0 part is connected: every sym-0 variable has weight >= 1.
 */
struct AlgebraSpec {
  FieldSpec field;
  std::vector<Variable> variables;
  std::vector<Polynomial> relators;

  static AlgebraSpec polynomial_ring(FieldSpec field, const std::vector<std::string>& names);

  std::vector<std::string> names() const;
  std::size_t variable_count() const { return variables.size(); }
  Bidegree degree(const Exponents& e) const;
  bool is_homogeneous(const Polynomial& f) const;
  /// Degree of a nonzero homogeneous polynomial; nullopt for zero. Throws when inhomogeneous.
  std::optional<Bidegree> degree(const Polynomial& f) const;
  /// All monomials of bidegree d, lexicographically descending in the declared variable order.
  std::vector<Exponents> monomials(Bidegree d) const;
  int max_weight() const;
  bool has_sym_variables() const;
  std::pair<int, int> sym_variable_weight_range() const;
  void validate() const;

  bool operator==(const AlgebraSpec& o) const {
    return field == o.field && variables == o.variables && relators == o.relators;
  }
};

/// Guard against runaway piece sizes; exceeded ambient dimensions throw ResourceLimitExceeded.
struct Limits {
  Index max_piece_dim = std::numeric_limits<Index>::max();
};

void check_piece_limit(const Limits& limits, Index ambient, const std::string& what);

/// One homogeneous component A_d: ambient monomials and the chosen normal-form basis.
template <class Scalar>
struct AlgebraPiece {
  Bidegree degree;
  std::vector<Exponents> monomials;
  std::map<Exponents, Index> index;
  QuotientBasis<Scalar> quotient;
  /// basis_position[i] is the basis coordinate of monomial i, or -1 if it is not a basis monomial.
  std::vector<Index> basis_position;

  Index dim() const { return quotient.dim(); }
  Index ambient_dim() const { return static_cast<Index>(monomials.size()); }
  const Exponents& basis_monomial(Index i) const {
    return monomials[static_cast<std::size_t>(quotient.kept[static_cast<std::size_t>(i)])];
  }
  const Matrix<Scalar>& projection() const { return quotient.projection; }
  std::vector<std::string> basis_labels(std::span<const std::string> names) const {
    std::vector<std::string> out;
    for (Index i = 0; i < dim(); ++i) out.push_back(monomial_to_string(basis_monomial(i), names));
    return out;
  }
};

/**
 * Degreewise realization of an AlgebraSpec over a concrete field. Pieces are
 * computed on demand and memoized; concurrent readers are safe and a piece is
 * computed at most once per stored key.
 */
template <class Scalar>
class GradedAlgebra {
 public:
  GradedAlgebra(std::shared_ptr<const AlgebraSpec> spec, Field<Scalar> field, Limits limits = {})
      : spec_(std::move(spec)), field_(field), limits_(limits) {
    spec_->validate();
    for (const Polynomial& g : spec_->relators) {
      const auto deg = spec_->degree(g);
      if (!deg) continue;
      std::vector<std::pair<Exponents, Scalar>> terms;
      for (const auto& [e, c] : g.terms()) {
        Scalar v = field_.from_rational(c);
        if (!is_zero(v)) terms.emplace_back(e, v);
      }
      if (!terms.empty()) relators_.push_back({*deg, std::move(terms)});
    }
  }

  const AlgebraSpec& spec() const { return *spec_; }
  std::shared_ptr<const AlgebraSpec> spec_ptr() const { return spec_; }
  const Field<Scalar>& field() const { return field_; }
  const Limits& limits() const { return limits_; }

  const AlgebraPiece<Scalar>& piece(Bidegree d) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = pieces_.find(d); it != pieces_.end()) return *it->second;
    }
    auto computed = compute(d);
    std::lock_guard lock(mutex_);
    auto [it, inserted] = pieces_.try_emplace(d, std::move(computed));
    return *it->second;
  }
  const AlgebraPiece<Scalar>& piece(int d) const { return piece(Bidegree{0, d}); }

  /// Calls f(coordinate, value) for the nonzero coordinates of a monomial in its degree's basis.
  template <class F>
  void for_each_coordinate(const Exponents& m, F&& f) const {
    const AlgebraPiece<Scalar>& pc = piece(spec_->degree(m));
    const auto it = pc.index.find(m);
    if (it == pc.index.end()) throw InternalError("monomial missing from its degree piece");
    const Index pos = pc.basis_position[static_cast<std::size_t>(it->second)];
    if (pos >= 0) {
      f(pos, Scalar(1));
      return;
    }
    const auto col = pc.quotient.projection.col(it->second);
    for (Index k = 0; k < col.size(); ++k)
      if (!is_zero(col(k))) f(k, col(k));
  }

  /// Coordinates of a homogeneous polynomial of degree d in the basis of A_d.
  Vector<Scalar> reduce(const Polynomial& f, Bidegree d) const {
    Vector<Scalar> out = Vector<Scalar>::Zero(piece(d).dim());
    for (const auto& [e, c] : f.terms()) {
      if (spec_->degree(e) != d) throw ValidationError("polynomial is not homogeneous of degree " + to_string(d));
      const Scalar coeff = field_.from_rational(c);
      for_each_coordinate(e, [&](Index k, const Scalar& v) { out(k) += coeff * v; });
    }
    return out;
  }

  /// Structure matrix of A_d x A_e -> A_{d+e}; column i*dim(A_e)+j is the product of basis elements i and j.
  Matrix<Scalar> multiply(Bidegree d, Bidegree e) const {
    const auto& pd = piece(d);
    const auto& pe = piece(e);
    const auto& target = piece(d + e);
    Matrix<Scalar> out = Matrix<Scalar>::Zero(target.dim(), pd.dim() * pe.dim());
    for (Index i = 0; i < pd.dim(); ++i)
      for (Index j = 0; j < pe.dim(); ++j)
        for_each_coordinate(pd.basis_monomial(i) + pe.basis_monomial(j),
                            [&](Index k, const Scalar& v) { out(k, i * pe.dim() + j) = v; });
    return out;
  }
  Matrix<Scalar> multiply(int d, int e) const { return multiply(Bidegree{0, d}, Bidegree{0, e}); }

  /**
   * Smallest t >= 1 with A_{(0,D)} = 0 for all D >= t, detected as a window of
   * max_weight consecutive zero pieces. nullopt if none is found up to search_limit.
   */
  std::optional<int> vanishing_degree(int search_limit) const {
    const int window = std::max(1, spec_->max_weight());
    int run = 0;
    for (int d = 1; d <= search_limit + window; ++d) {
      if (piece(d).dim() == 0) {
        if (++run == window) return d - window + 1;
      } else {
        run = 0;
      }
    }
    return std::nullopt;
  }

 private:
  struct Relator {
    Bidegree degree;
    std::vector<std::pair<Exponents, Scalar>> terms;
  };

  std::unique_ptr<const AlgebraPiece<Scalar>> compute(Bidegree d) const {
    auto pc = std::make_unique<AlgebraPiece<Scalar>>();
    pc->degree = d;
    pc->monomials = spec_->monomials(d);
    check_piece_limit(limits_, pc->ambient_dim(), "algebra piece " + to_string(d));
    for (std::size_t i = 0; i < pc->monomials.size(); ++i) pc->index.emplace(pc->monomials[i], static_cast<Index>(i));

    // Degree-d part of the ideal, spanned by monomial multiples of the relators.
    std::vector<std::vector<std::pair<Index, Scalar>>> rows;
    for (const Relator& g : relators_) {
      for (const Exponents& mu : spec_->monomials(d - g.degree)) {
        std::vector<std::pair<Index, Scalar>> row;
        for (const auto& [e, c] : g.terms) row.emplace_back(pc->index.at(mu + e), c);
        rows.push_back(std::move(row));
      }
    }
    RowMatrix<Scalar> rel = RowMatrix<Scalar>::Zero(static_cast<Index>(rows.size()), pc->ambient_dim());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& [k, v] : rows[r]) rel(static_cast<Index>(r), k) += v;
    pc->quotient = quotient_by_rows<Scalar>(std::move(rel), pc->ambient_dim());

    pc->basis_position.assign(pc->monomials.size(), -1);
    for (Index k = 0; k < pc->dim(); ++k)
      pc->basis_position[static_cast<std::size_t>(pc->quotient.kept[static_cast<std::size_t>(k)])] = k;
    return pc;
  }

  std::shared_ptr<const AlgebraSpec> spec_;
  Field<Scalar> field_;
  Limits limits_;
  std::vector<Relator> relators_;
  mutable std::mutex mutex_;
  mutable std::map<Bidegree, std::unique_ptr<const AlgebraPiece<Scalar>>> pieces_;
};

}  // namespace koszul

#endif  // KOSZUL_ALGEBRA_HPP
