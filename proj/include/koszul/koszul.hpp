#ifndef KOSZUL_KOSZUL_HPP
#define KOSZUL_KOSZUL_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/SparseCore>

#include "koszul/module.hpp"

namespace koszul {

/// Λ^p M ⊗ S^{n-p} M with the tuple/multiset behind each generator (index a * |syms| + b).
struct KoszulTermLayout {
  ModuleSpec module;
  std::vector<std::vector<int>> wedges;
  std::vector<std::vector<int>> syms;
};

/// Term p of Kos(M)_n; an empty module outside 0 <= p <= n.
KoszulTermLayout koszul_term(const ModuleSpec& m, int p, int n);

/// Internal degrees a report covers; `complete` means every nonzero piece lies inside.
struct DegreeWindow {
  int lowest = 0;
  bool complete = false;
};

/**
 * A family of complexes T_0 .. T_top in one sym-degree n, graded by internal
 * degree, carrying the contraction i_D (p -> p-1) and the exterior
 * derivative d (p -> p+1). Matrices are memoized per (p, d).
 */
template <class Scalar>
class KoszulFamily {
 public:
  virtual ~KoszulFamily() = default;

  virtual int n() const = 0;
  virtual int top() const = 0;
  virtual const Field<Scalar>& field() const = 0;
  virtual Index term_dim(int p, int d) const = 0;
  virtual DegreeWindow window(int degree_bound) const = 0;

  /// i_D : T_p -> T_{p-1}; for p = 0 the map to the zero space.
  const Matrix<Scalar>& contraction(int p, int d) const { return cached(0, p, d); }
  /// d : T_p -> T_{p+1}; for p = top the map to the zero space.
  const Matrix<Scalar>& exterior(int p, int d) const { return cached(1, p, d); }

 protected:
  virtual Matrix<Scalar> compute_contraction(int p, int d) const = 0;
  virtual Matrix<Scalar> compute_exterior(int p, int d) const = 0;

 private:
  const Matrix<Scalar>& cached(int kind, int p, int d) const {
    const auto key = std::make_tuple(kind, p, d);
    {
      std::lock_guard lock(mutex_);
      if (auto it = cache_.find(key); it != cache_.end()) return *it->second;
    }
    auto m = std::make_unique<const Matrix<Scalar>>(kind == 0 ? compute_contraction(p, d) : compute_exterior(p, d));
    std::lock_guard lock(mutex_);
    return *cache_.try_emplace(key, std::move(m)).first->second;
  }

  mutable std::mutex mutex_;
  mutable std::map<std::tuple<int, int, int>, std::unique_ptr<const Matrix<Scalar>>> cache_;
};

/**
 * Degree window for terms whose generators have the given bidegrees, over an
 * algebra whose sym-1 variables have weights in [ymin, ymax] and whose
 * sym-degree-0 part vanishes from degree t on (nullopt when not found).
 */
DegreeWindow degree_window(const std::vector<Bidegree>& generator_degrees, int n, std::pair<int, int> y_weights,
                           std::optional<int> vanishing, int degree_bound);

template <class Scalar>
class RelativeKoszul final : public KoszulFamily<Scalar> {
 public:
  RelativeKoszul(std::shared_ptr<const ModuleSpec> m, int n, std::shared_ptr<const GradedAlgebra<Scalar>> algebra)
      : module_(std::move(m)), n_(n), algebra_(std::move(algebra)) {
    if (n < 0) throw ValidationError("sym-degree n must be nonnegative");
    if (module_->algebra->has_sym_variables())
      throw ValidationError("the relative Koszul complex needs an algebra without sym-degree variables");
    for (const Generator& g : module_->generators)
      if (g.degree.sym != 0) throw ValidationError("module generators must have sym-degree 0");
    for (int p = 0; p <= n; ++p) {
      layouts_.push_back(koszul_term(*module_, p, n));
      terms_.push_back(std::make_unique<GradedModule<Scalar>>(
          std::make_shared<const ModuleSpec>(layouts_.back().module), algebra_));
    }
    for (const auto& l : layouts_) {
      std::map<std::vector<int>, std::size_t> w, s;
      for (std::size_t i = 0; i < l.wedges.size(); ++i) w.emplace(l.wedges[i], i);
      for (std::size_t i = 0; i < l.syms.size(); ++i) s.emplace(l.syms[i], i);
      wedge_index_.push_back(std::move(w));
      sym_index_.push_back(std::move(s));
    }
  }

  int n() const override { return n_; }
  int top() const override { return n_; }
  const Field<Scalar>& field() const override { return algebra_->field(); }
  const GradedModule<Scalar>& term(int p) const { return *terms_.at(static_cast<std::size_t>(p)); }
  const KoszulTermLayout& layout(int p) const { return layouts_.at(static_cast<std::size_t>(p)); }
  Index term_dim(int p, int d) const override {
    if (p < 0 || p > n_) return 0;
    return term(p).piece(d).dim();
  }

  DegreeWindow window(int degree_bound) const override {
    std::vector<Bidegree> degrees;
    for (const auto& l : layouts_)
      for (const Generator& g : l.module.generators) degrees.push_back(g.degree);
    return degree_window(degrees, n_, {0, 0}, vanishing(degree_bound), degree_bound);
  }

 protected:
  Matrix<Scalar> compute_contraction(int p, int d) const override {
    if (p == 0) return Matrix<Scalar>::Zero(0, term_dim(0, d));
    const KoszulTermLayout& src = layout(p);
    const Index width = static_cast<Index>(layout(p - 1).syms.size());
    std::vector<std::vector<ImageTerm<Scalar>>> images(src.module.rank());
    const Exponents one(algebra_->spec().variable_count(), 0);
    for (std::size_t a = 0; a < src.wedges.size(); ++a)
      for (std::size_t b = 0; b < src.syms.size(); ++b) {
        auto& img = images[a * src.syms.size() + b];
        const auto& w = src.wedges[a];
        for (std::size_t k = 0; k < w.size(); ++k) {
          std::vector<int> rest(w);
          rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
          std::vector<int> s(src.syms[b]);
          s.insert(std::upper_bound(s.begin(), s.end(), w[k]), w[k]);
          const auto t = wedge_index_[static_cast<std::size_t>(p - 1)].at(rest) * static_cast<std::size_t>(width) +
                         sym_index_[static_cast<std::size_t>(p - 1)].at(s);
          img.push_back({t, field().from_int(k % 2 == 0 ? 1 : -1), one});
        }
      }
    return term(p).map_to(term(p - 1), images, Bidegree{0, d}, "i_D at p=" + std::to_string(p));
  }

  Matrix<Scalar> compute_exterior(int p, int d) const override {
    if (p == n_) return Matrix<Scalar>::Zero(0, term_dim(p, d));
    const KoszulTermLayout& src = layout(p);
    const Index width = static_cast<Index>(layout(p + 1).syms.size());
    std::vector<std::vector<ImageTerm<Scalar>>> images(src.module.rank());
    const Exponents one(algebra_->spec().variable_count(), 0);
    for (std::size_t a = 0; a < src.wedges.size(); ++a)
      for (std::size_t b = 0; b < src.syms.size(); ++b) {
        auto& img = images[a * src.syms.size() + b];
        const auto& w = src.wedges[a];
        const auto& s = src.syms[b];
        for (std::size_t k = 0; k < s.size(); ++k) {
          if (k > 0 && s[k] == s[k - 1]) continue;
          const int j = s[k];
          const auto pos = std::lower_bound(w.begin(), w.end(), j);
          if (pos != w.end() && *pos == j) continue;
          // d(m_1..m_q) = Σ_j dm_j · (m_1..m̂_j..m_q); dm_j is then moved into sorted position.
          const auto before = pos - w.begin();
          const auto mult = std::count(s.begin(), s.end(), j);
          std::vector<int> wedge(w);
          wedge.insert(wedge.begin() + before, j);
          std::vector<int> rest(s);
          rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
          const Scalar coeff = field().from_int(before % 2 == 0 ? mult : -mult);
          if (is_zero(coeff)) continue;
          const auto t = wedge_index_[static_cast<std::size_t>(p + 1)].at(wedge) * static_cast<std::size_t>(width) +
                         sym_index_[static_cast<std::size_t>(p + 1)].at(rest);
          img.push_back({t, coeff, one});
        }
      }
    return term(p).map_to(term(p + 1), images, Bidegree{0, d}, "d at p=" + std::to_string(p));
  }

 private:
  std::optional<int> vanishing(int degree_bound) const { return algebra_->vanishing_degree(degree_bound + 1); }

  std::shared_ptr<const ModuleSpec> module_;
  int n_;
  std::shared_ptr<const GradedAlgebra<Scalar>> algebra_;
  std::vector<KoszulTermLayout> layouts_;
  std::vector<std::unique_ptr<GradedModule<Scalar>>> terms_;
  std::vector<std::map<std::vector<int>, std::size_t>> wedge_index_;
  std::vector<std::map<std::vector<int>, std::size_t>> sym_index_;
};

/// One internal degree of a homology table. Index p runs over 0..top.
struct HomologyRow {
  int degree = 0;
  std::vector<Index> term_dims;
  /// rank of i_D leaving position p (p = 0 is always 0).
  std::vector<Index> ranks;
  /// H_p = ker / im; H_0 is the cokernel of T_1 -> T_0.
  std::vector<Index> homology;
  long long euler = 0;
};

struct HomologyReport {
  int n = 0;
  int top = 0;
  int degree_min = 0;
  int degree_bound = 0;
  bool complete = false;
  std::vector<HomologyRow> rows;

  /// H_p = 0 for all p >= 1 in range.
  bool higher_vanishes() const;
  /// T_1 -> T_0 is onto in every degree in range (exactness at the last term).
  bool cokernel_vanishes() const;
  bool acyclic() const { return higher_vanishes() && cokernel_vanishes(); }
};

template <class Scalar>
HomologyReport homology_table(const KoszulFamily<Scalar>& k, int degree_bound) {
  HomologyReport r;
  r.n = k.n();
  r.top = k.top();
  r.degree_bound = degree_bound;
  const DegreeWindow w = k.window(degree_bound);
  r.degree_min = w.lowest;
  r.complete = w.complete;
  for (int d = w.lowest; d <= degree_bound; ++d) {
    HomologyRow row;
    row.degree = d;
    const std::size_t terms = static_cast<std::size_t>(r.top) + 1;
    row.term_dims.resize(terms);
    row.ranks.assign(terms + 1, 0);
    for (int p = 0; p <= r.top; ++p) {
      row.term_dims[static_cast<std::size_t>(p)] = k.term_dim(p, d);
      if (p > 0) row.ranks[static_cast<std::size_t>(p)] = rank(k.contraction(p, d));
      row.euler += (p % 2 == 0 ? 1 : -1) * static_cast<long long>(row.term_dims[static_cast<std::size_t>(p)]);
    }
    for (std::size_t p = 0; p < terms; ++p) {
      const Index h = row.term_dims[p] - row.ranks[p] - row.ranks[p + 1];
      if (h < 0) throw InternalError("negative homology dimension");
      row.homology.push_back(h);
    }
    row.ranks.pop_back();
    r.rows.push_back(std::move(row));
  }
  return r;
}

/// Converts to an Eigen sparse matrix, dropping exact zeros.
template <class Scalar>
Eigen::SparseMatrix<Scalar> to_sparse(const Matrix<Scalar>& m) {
  std::vector<Eigen::Triplet<Scalar>> entries;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) entries.emplace_back(i, j, m(i, j));
  Eigen::SparseMatrix<Scalar> s(m.rows(), m.cols());
  s.setFromTriplets(entries.begin(), entries.end());
  return s;
}

/// True when s equals c times the identity, comparing exactly.
template <class Scalar>
bool is_scalar_identity(const Eigen::SparseMatrix<Scalar>& s, const Scalar& c) {
  if (s.rows() != s.cols()) return false;
  for (Index j = 0; j < s.outerSize(); ++j) {
    bool diagonal_seen = false;
    for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(s, j); it; ++it) {
      if (it.row() == j) {
        diagonal_seen = true;
        if (!(it.value() == c)) return false;
      } else if (!is_zero(it.value())) {
        return false;
      }
    }
    if (!diagonal_seen && !is_zero(c)) return false;
  }
  return true;
}

struct IdentityViolation {
  int p = 0;
  int degree = 0;
  std::string detail;
};

struct CartanReport {
  int n = 0;
  int degree_min = 0;
  int degree_bound = 0;
  /// n read in the field: n mod p in characteristic p.
  long long scalar = 0;
  std::size_t slices_checked = 0;
  bool squares_vanish = true;
  std::optional<IdentityViolation> violation;

  bool holds() const { return squares_vanish && !violation; }
};

/**
 * i_D ∘ d + d ∘ i_D = f * Id at every (p, d) in range, with f = n for the
 * Cartan identity; also checks that both differentials square to zero.
 */
template <class Scalar>
std::optional<IdentityViolation> check_homotopy_identity(const KoszulFamily<Scalar>& k, int p, int d,
                                                         const Scalar& scale, const Scalar& expected,
                                                         bool& squares_vanish) {
  using Sparse = Eigen::SparseMatrix<Scalar>;
  const Index dim = k.term_dim(p, d);
  Sparse sum(dim, dim);
  if (p < k.top()) {
    const Sparse ext = to_sparse<Scalar>(k.exterior(p, d));
    const Sparse con = to_sparse<Scalar>(k.contraction(p + 1, d));
    sum = Sparse(con * ext);
    if (p + 1 < k.top()) {
      const Sparse next = to_sparse<Scalar>(k.exterior(p + 1, d));
      if (!is_zero_matrix(Matrix<Scalar>(next * ext))) squares_vanish = false;
    }
  }
  if (p > 0) {
    const Sparse con = to_sparse<Scalar>(k.contraction(p, d));
    const Sparse ext = to_sparse<Scalar>(k.exterior(p - 1, d));
    sum = Sparse(sum + Sparse(ext * con));
    if (p > 1) {
      const Sparse prev = to_sparse<Scalar>(k.contraction(p - 1, d));
      if (!is_zero_matrix(Matrix<Scalar>(prev * con))) squares_vanish = false;
    }
  }
  if (!is_zero(scale)) sum = sum * scale;
  else sum.setZero();
  if (is_scalar_identity(Sparse(sum), expected)) return std::nullopt;
  return IdentityViolation{p, d, "i_D∘d + d∘i_D differs from " + to_string(expected) + "·Id on a space of dimension " +
                                     std::to_string(dim)};
}

template <class Scalar>
CartanReport cartan_check(const KoszulFamily<Scalar>& k, int degree_bound) {
  CartanReport r;
  r.n = k.n();
  r.degree_bound = degree_bound;
  const Scalar n = k.field().from_int(k.n());
  r.scalar = k.field().characteristic() == 0 ? k.n() : k.n() % static_cast<long long>(k.field().characteristic());
  const DegreeWindow w = k.window(degree_bound);
  r.degree_min = w.lowest;
  for (int d = w.lowest; d <= degree_bound && !r.violation; ++d)
    for (int p = 0; p <= k.top() && !r.violation; ++p) {
      r.violation = check_homotopy_identity(k, p, d, Scalar(k.field().from_int(1)), n, r.squares_vanish);
      ++r.slices_checked;
    }
  return r;
}

struct HomotopyReport {
  int n = 0;
  int degree_min = 0;
  int degree_bound = 0;
  std::size_t slices_checked = 0;
  std::optional<IdentityViolation> violation;
  /// The contraction identity and the homology table agree (identity ⇒ all H = 0).
  bool consistent_with_homology = true;
  HomologyReport homology;

  bool holds() const { return !violation && consistent_with_homology; }
};

/// Checks that h = (1/n)·d contracts the complex. Needs n invertible in the field.
template <class Scalar>
HomotopyReport homotopy_triviality_check(const KoszulFamily<Scalar>& k, int degree_bound) {
  const auto& f = k.field();
  if (k.n() <= 0) throw PreconditionError("homotopy triviality needs n > 0");
  if (!f.is_invertible(k.n()))
    throw PreconditionError("n = " + std::to_string(k.n()) + " is not invertible in characteristic " +
                            std::to_string(f.characteristic()));
  HomotopyReport r;
  r.n = k.n();
  r.degree_bound = degree_bound;
  const Scalar inv_n = f.from_int(1) / f.from_int(k.n());
  const DegreeWindow w = k.window(degree_bound);
  r.degree_min = w.lowest;
  bool squares = true;
  for (int d = w.lowest; d <= degree_bound && !r.violation; ++d)
    for (int p = 0; p <= k.top() && !r.violation; ++p) {
      r.violation = check_homotopy_identity(k, p, d, inv_n, f.from_int(1), squares);
      ++r.slices_checked;
    }
  if (!squares && !r.violation) r.violation = IdentityViolation{0, 0, "a differential does not square to zero"};
  r.homology = homology_table(k, degree_bound);
  if (!r.violation && !r.homology.acyclic()) r.consistent_with_homology = false;
  return r;
}

struct HomologyWitness {
  int n = 0;
  int p = 0;
  int degree = 0;
  Index dim = 0;
};

struct ScanSummary {
  int n_max = 0;
  int degree_bound = 0;
  std::vector<HomologyReport> reports;
  std::optional<int> largest_non_acyclic;
  std::vector<HomologyWitness> nonzero_homology;
  GeneratorCount mu;
  /// H_μ(Kos(M)_μ) = 0 in every degree in range; nullopt when μ = 0.
  std::optional<bool> top_homology_vanishes;
  std::optional<HomologyReport> mu_report;
};

template <class Scalar>
ScanSummary acyclicity_scan(std::shared_ptr<const ModuleSpec> m, std::shared_ptr<const GradedAlgebra<Scalar>> alg,
                            int n_max, int degree_bound) {
  ScanSummary s;
  s.n_max = n_max;
  s.degree_bound = degree_bound;
  for (int n = 1; n <= n_max; ++n) {
    RelativeKoszul<Scalar> k(m, n, alg);
    HomologyReport r = homology_table(k, degree_bound);
    if (!r.acyclic()) s.largest_non_acyclic = n;
    for (const HomologyRow& row : r.rows)
      for (std::size_t p = 0; p < row.homology.size(); ++p)
        if (row.homology[p] != 0) s.nonzero_homology.push_back({n, static_cast<int>(p), row.degree, row.homology[p]});
    s.reports.push_back(std::move(r));
  }
  s.mu = minimal_generator_count(GradedModule<Scalar>(m, alg), degree_bound);
  const int mu = static_cast<int>(s.mu.count);
  if (mu > 0) {
    RelativeKoszul<Scalar> k(m, mu, alg);
    HomologyReport r = homology_table(k, degree_bound);
    bool vanishes = true;
    for (const HomologyRow& row : r.rows)
      if (row.homology[static_cast<std::size_t>(mu)] != 0) vanishes = false;
    s.top_homology_vanishes = vanishes;
    s.mu_report = std::move(r);
  }
  return s;
}

}  // namespace koszul

#endif  // KOSZUL_KOSZUL_HPP
