#ifndef KOSZUL_MODULE_HPP
#define KOSZUL_MODULE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "koszul/algebra.hpp"

namespace koszul {

struct Generator {
  std::string name;
  Bidegree degree;

  bool operator==(const Generator&) const = default;
};

/**
 * Finitely presented graded module: coker(⊕_j A(-δ_j) → ⊕_i A(-deg g_i)).
 * relations[j][i] is the coefficient of generator i in relation j; every
 * relation vector has one entry per generator.
 */
struct ModuleSpec {
  std::shared_ptr<const AlgebraSpec> algebra;
  std::vector<Generator> generators;
  std::vector<std::vector<Polynomial>> relations;

  std::size_t rank() const { return generators.size(); }
  /// Degree of relation j; nullopt when the relation vector is zero.
  std::optional<Bidegree> relation_degree(std::size_t j) const;
  void validate() const;
  std::vector<std::string> generator_names() const;
};

ModuleSpec free_module(std::shared_ptr<const AlgebraSpec> algebra, const std::vector<Generator>& generators);
/// M ⊗_A N with generator (i, j) at index i * rank(N) + j.
ModuleSpec tensor(const ModuleSpec& m, const ModuleSpec& n);
/// S^n M = S^n F / (R · S^{n-1} F); generators are size-n multisets in lex order.
ModuleSpec sym_power(const ModuleSpec& m, int n);
/// Λ^p M = Λ^p F / (R ∧ Λ^{p-1} F); generators are increasing p-tuples in lex order.
ModuleSpec ext_power(const ModuleSpec& m, int p);

/// Sorted size-n multisets of {0..m-1}, lexicographic.
std::vector<std::vector<int>> multisets(int m, int n);
/// Strictly increasing p-tuples of {0..m-1}, lexicographic.
std::vector<std::vector<int>> increasing_tuples(int m, int p);

struct RegularIdealModule {
  ModuleSpec module;
  bool presentation_ok = true;
  std::string diagnostic;
};

/**
 * The ideal (f_1..f_c) presented by its Koszul syzygies f_j g_i - f_i g_j.
 * Regularity is the caller's claim; dim M_d is compared with dim I_d for
 * d <= check_bound and a mismatch is reported, not thrown.
 */
RegularIdealModule regular_ideal_module(std::shared_ptr<const AlgebraSpec> algebra,
                                        const std::vector<Polynomial>& sequence, int check_bound = 6);

/// M_d as a quotient of ⊕_i A_{d - deg g_i}, written in A-basis coordinates block by block.
template <class Scalar>
struct ModulePiece {
  Bidegree degree;
  std::vector<Index> block_offset;
  std::vector<Index> block_dim;
  QuotientBasis<Scalar> quotient;
  /// Degree-d relation vectors in ambient coordinates (unreduced spanning set).
  std::vector<SparseRow<Scalar>> relations;

  Index dim() const { return quotient.dim(); }
  Index ambient_dim() const { return quotient.ambient_dim(); }
  /// Ambient index of A-basis element k times generator i.
  Index locate(std::size_t generator, Index k) const { return block_offset[generator] + k; }
  /// (generator, A-basis index) of an ambient coordinate.
  std::pair<std::size_t, Index> owner(Index a) const {
    const auto it = std::upper_bound(block_offset.begin(), block_offset.end(), a);
    const std::size_t i = static_cast<std::size_t>(it - block_offset.begin()) - 1;
    return {i, a - block_offset[i]};
  }
};

/// One term of a generator image: coeff * multiplier * g_target.
template <class Scalar>
struct ImageTerm {
  std::size_t target;
  Scalar coeff;
  Exponents multiplier;
};

template <class Scalar>
class GradedModule {
 public:
  GradedModule(std::shared_ptr<const ModuleSpec> spec, std::shared_ptr<const GradedAlgebra<Scalar>> algebra)
      : spec_(std::move(spec)), algebra_(std::move(algebra)) {
    spec_->validate();
    if (!(*spec_->algebra == algebra_->spec())) throw ValidationError("module and algebra realization disagree");
    const Field<Scalar>& f = algebra_->field();
    for (std::size_t j = 0; j < spec_->relations.size(); ++j) {
      const auto deg = spec_->relation_degree(j);
      if (!deg) continue;
      Relation rel{*deg, {}};
      for (std::size_t i = 0; i < spec_->rank(); ++i)
        for (const auto& [e, c] : spec_->relations[j][i].terms()) {
          Scalar v = f.from_rational(c);
          if (!is_zero(v)) rel.terms.push_back({i, v, e});
        }
      if (!rel.terms.empty()) relations_.push_back(std::move(rel));
    }
  }

  const ModuleSpec& spec() const { return *spec_; }
  const GradedAlgebra<Scalar>& algebra() const { return *algebra_; }

  const ModulePiece<Scalar>& piece(Bidegree d) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = pieces_.find(d); it != pieces_.end()) return *it->second;
    }
    auto computed = compute(d);
    std::lock_guard lock(mutex_);
    auto [it, inserted] = pieces_.try_emplace(d, std::move(computed));
    return *it->second;
  }
  const ModulePiece<Scalar>& piece(int d) const { return piece(Bidegree{0, d}); }

  /// Adds coeff * (monomial m) * g_i, a degree-d element, to an ambient vector of piece(d).
  template <class Sink>
  void add_term(const ModulePiece<Scalar>& pc, std::size_t i, const Exponents& m, const Scalar& coeff,
                Sink&& sink) const {
    algebra_->for_each_coordinate(m, [&](Index k, const Scalar& v) { sink(pc.locate(i, k), coeff * v); });
  }

  /**
   * Matrix in the chosen bases of a degree-preserving k-linear map to `target`.
   * image(i, beta, emit) describes the image of beta * g_i, where beta runs over
   * the A-basis monomials of A_{d - deg g_i}, by calls emit(target_generator,
   * coeff, monomial). Throws InternalError if a relation of this module in
   * degree d is not sent to zero.
   */
  template <class Image>
  Matrix<Scalar> linear_map(const GradedModule& target, Bidegree d, const std::string& what, Image&& image) const {
    const ModulePiece<Scalar>& src = piece(d);
    const ModulePiece<Scalar>& dst = target.piece(d);
    const Matrix<Scalar>& proj = dst.quotient.projection;
    const auto& kept = dst.quotient.kept;
    std::vector<Index> kept_position(static_cast<std::size_t>(dst.ambient_dim()), -1);
    for (std::size_t k = 0; k < kept.size(); ++k) kept_position[static_cast<std::size_t>(kept[k])] = static_cast<Index>(k);

    // Map from ambient source coordinates to target quotient coordinates.
    Matrix<Scalar> full = Matrix<Scalar>::Zero(dst.dim(), src.ambient_dim());
    if (dst.dim() > 0) {
      for (std::size_t i = 0; i < spec_->rank(); ++i) {
        if (src.block_dim[i] == 0) continue;
        const AlgebraPiece<Scalar>& ap = algebra_->piece(d - spec_->generators[i].degree);
        for (Index k = 0; k < src.block_dim[i]; ++k) {
          const Index col = src.locate(i, k);
          auto emit = [&](std::size_t t, const Scalar& coeff, const Exponents& m) {
            target.add_term(dst, t, m, coeff, [&](Index a, const Scalar& v) {
              const Index pos = kept_position[static_cast<std::size_t>(a)];
              if (pos >= 0) {
                full(pos, col) += v;
                return;
              }
              for (Index r = 0; r < proj.rows(); ++r)
                if (!is_zero(proj(r, a))) full(r, col) += v * proj(r, a);
            });
          };
          image(i, ap.basis_monomial(k), emit);
        }
      }
      for (const SparseRow<Scalar>& rel : src.relations) {
        for (Index r = 0; r < full.rows(); ++r) {
          Scalar acc(0);
          for (const auto& [a, v] : rel) acc += v * full(r, a);
          if (!is_zero(acc))
            throw InternalError(what + " does not descend to the quotient in degree " + to_string(d));
        }
      }
    }
    Matrix<Scalar> out(dst.dim(), src.dim());
    for (Index k = 0; k < src.dim(); ++k) out.col(k) = full.col(src.quotient.kept[static_cast<std::size_t>(k)]);
    return out;
  }

  /// The A-linear map sending g_i to Σ coeff * multiplier * g'_target.
  Matrix<Scalar> map_to(const GradedModule& target, const std::vector<std::vector<ImageTerm<Scalar>>>& images,
                        Bidegree d, const std::string& what) const {
    return linear_map(target, d, what, [&](std::size_t i, const Exponents& beta, auto&& emit) {
      for (const ImageTerm<Scalar>& t : images[i]) emit(t.target, t.coeff, beta + t.multiplier);
    });
  }

 private:
  struct Relation {
    Bidegree degree;
    std::vector<ImageTerm<Scalar>> terms;
  };

  std::unique_ptr<const ModulePiece<Scalar>> compute(Bidegree d) const {
    auto pc = std::make_unique<ModulePiece<Scalar>>();
    pc->degree = d;
    Index offset = 0;
    for (const Generator& g : spec_->generators) {
      const Index dim = algebra_->piece(d - g.degree).dim();
      pc->block_offset.push_back(offset);
      pc->block_dim.push_back(dim);
      offset += dim;
    }
    check_piece_limit(algebra_->limits(), offset, "module piece " + to_string(d));

    for (const Relation& rel : relations_) {
      const AlgebraPiece<Scalar>& mult = algebra_->piece(d - rel.degree);
      for (Index k = 0; k < mult.dim(); ++k) {
        const Exponents& mu = mult.basis_monomial(k);
        std::map<Index, Scalar> row;
        for (const ImageTerm<Scalar>& t : rel.terms)
          add_term(*pc, t.target, mu + t.multiplier, t.coeff, [&](Index a, const Scalar& v) { row[a] += v; });
        SparseRow<Scalar> sparse;
        for (auto& [a, v] : row)
          if (!is_zero(v)) sparse.emplace_back(a, std::move(v));
        if (!sparse.empty()) pc->relations.push_back(std::move(sparse));
      }
    }
    RowMatrix<Scalar> rows = RowMatrix<Scalar>::Zero(static_cast<Index>(pc->relations.size()), offset);
    for (std::size_t r = 0; r < pc->relations.size(); ++r)
      for (const auto& [a, v] : pc->relations[r]) rows(static_cast<Index>(r), a) = v;
    pc->quotient = quotient_by_rows<Scalar>(std::move(rows), offset);
    return pc;
  }

  std::shared_ptr<const ModuleSpec> spec_;
  std::shared_ptr<const GradedAlgebra<Scalar>> algebra_;
  std::vector<Relation> relations_;
  mutable std::mutex mutex_;
  mutable std::map<Bidegree, std::unique_ptr<const ModulePiece<Scalar>>> pieces_;
};

struct GeneratorCount {
  std::size_t count = 0;
  /// Set when a presentation generator sits at or beyond the bound; the count may then miss generators.
  bool possible_undercount = false;
  std::map<int, std::size_t> by_degree;
};

/**
 * μ(M) = Σ_d dim (M / A_+ M)_d over d <= degree_bound (graded Nakayama).
 * Only meaningful for sym-degree-0 modules over a connected algebra.
 */
template <class Scalar>
GeneratorCount minimal_generator_count(const GradedModule<Scalar>& m, int degree_bound) {
  const ModuleSpec& spec = m.spec();
  const AlgebraSpec& alg = m.algebra().spec();
  if (alg.has_sym_variables()) throw PreconditionError("minimal generator count needs a connected (sym-degree 0) algebra");
  GeneratorCount out;
  if (spec.rank() == 0) return out;
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  for (const Generator& g : spec.generators) {
    if (g.degree.sym != 0) throw PreconditionError("minimal generator count needs sym-degree 0 generators");
    lo = std::min(lo, g.degree.weight);
    hi = std::max(hi, g.degree.weight);
  }
  out.possible_undercount = hi >= degree_bound;
  for (int d = lo; d <= degree_bound; ++d) {
    const ModulePiece<Scalar>& target = m.piece(d);
    if (target.dim() == 0) continue;
    // Image of ⊕_v x_v · M_{d - w_v} inside M_d.
    std::vector<Vector<Scalar>> images;
    for (std::size_t v = 0; v < alg.variable_count(); ++v) {
      const int w = alg.variables[v].weight;
      const ModulePiece<Scalar>& src = m.piece(d - w);
      Exponents xv(alg.variable_count(), 0);
      xv[v] = 1;
      for (Index k = 0; k < src.dim(); ++k) {
        const auto [gen, idx] = src.owner(src.quotient.kept[static_cast<std::size_t>(k)]);
        const Exponents& beta =
            m.algebra().piece(Bidegree{0, d - w} - spec.generators[gen].degree).basis_monomial(idx);
        Vector<Scalar> amb = Vector<Scalar>::Zero(target.ambient_dim());
        m.add_term(target, gen, beta + xv, Scalar(1), [&](Index a, const Scalar& c) { amb(a) += c; });
        images.push_back(target.quotient.projection * amb);
      }
    }
    Matrix<Scalar> span(target.dim(), static_cast<Index>(images.size()));
    for (std::size_t c = 0; c < images.size(); ++c) span.col(static_cast<Index>(c)) = images[c];
    const std::size_t here = static_cast<std::size_t>(target.dim() - (images.empty() ? 0 : rank(span)));
    if (here > 0) out.by_degree[d] = here;
    out.count += here;
  }
  return out;
}

}  // namespace koszul

#endif  // KOSZUL_MODULE_HPP
