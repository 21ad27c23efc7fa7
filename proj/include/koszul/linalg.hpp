#ifndef KOSZUL_LINALG_HPP
#define KOSZUL_LINALG_HPP

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "koszul/field.hpp"

namespace koszul {

using Index = Eigen::Index;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using RowMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Sparse vector as (index, value) pairs with increasing indices and nonzero values.
template <class Scalar>
using SparseRow = std::vector<std::pair<Index, Scalar>>;

template <class Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m.coeff(i, j))) return false;
  return true;
}

/// Exact entrywise equality (Eigen's operator== is fine too, this one short-circuits).
template <class DerivedA, class DerivedB>
bool exactly_equal(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!(a.coeff(i, j) == b.coeff(i, j))) return false;
  return true;
}

template <class Scalar>
struct EchelonForm {
  RowMatrix<Scalar> reduced;
  std::vector<Index> pivots;

  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/**
 * Reduces `a` to reduced row echelon form in place and returns the pivot
 * columns.
 *
 * Pivot rule: columns left to right, first row (top to bottom) with a nonzero
 * entry. No magnitude pivoting; the result is a deterministic function of the
 * input. Row updates only touch the nonzero support of the pivot row, which
 * keeps the sparse presentation matrices we feed it cheap.
 */
template <class Scalar>
std::vector<Index> rref_in_place(RowMatrix<Scalar>& a) {
  std::vector<Index> pivots;
  const Index rows = a.rows();
  const Index cols = a.cols();
  std::vector<Index> support;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index found = -1;
    for (Index i = r; i < rows; ++i)
      if (!is_zero(a(i, c))) {
        found = i;
        break;
      }
    if (found < 0) continue;
    if (found != r) a.row(found).swap(a.row(r));

    const Scalar inv = Scalar(1) / a(r, c);
    support.clear();
    for (Index j = c; j < cols; ++j)
      if (!is_zero(a(r, j))) {
        a(r, j) = a(r, j) * inv;
        support.push_back(j);
      }

    for (Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      const Scalar factor = a(i, c);
      for (Index j : support) a(i, j) -= factor * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class Derived>
EchelonForm<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& m) {
  EchelonForm<typename Derived::Scalar> out;
  out.reduced = m;
  out.pivots = rref_in_place(out.reduced);
  return out;
}

template <class Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  RowMatrix<typename Derived::Scalar> work = m;
  return static_cast<Index>(rref_in_place(work).size());
}

/// Columns form a basis of the right kernel, one per non-pivot column, in column order.
template <class Derived>
Matrix<typename Derived::Scalar> kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto ech = rref(m);
  const Index cols = m.cols();
  std::vector<char> is_pivot(static_cast<std::size_t>(cols), 0);
  for (Index c : ech.pivots) is_pivot[static_cast<std::size_t>(c)] = 1;

  Matrix<Scalar> basis = Matrix<Scalar>::Zero(cols, cols - ech.rank());
  Index k = 0;
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    basis(f, k) = Scalar(1);
    for (Index i = 0; i < ech.rank(); ++i) {
      const Scalar& v = ech.reduced(i, f);
      if (!is_zero(v)) basis(ech.pivots[static_cast<std::size_t>(i)], k) = -v;
    }
    ++k;
  }
  return basis;
}

/**
 * A quotient V / W of a coordinate space V = k^ambient.
 *
 * `kept` lists the standard basis vectors whose classes form a basis of the
 * quotient; `projection` (dim x ambient) sends a vector to its coordinates in
 * that basis. Columns of `projection` at kept indices are unit vectors.
 */
template <class Scalar>
struct QuotientBasis {
  std::vector<Index> kept;
  Matrix<Scalar> projection;

  Index dim() const { return static_cast<Index>(kept.size()); }
  Index ambient_dim() const { return projection.cols(); }
};

/// Quotient of k^ambient by the span of the given rows.
template <class Scalar>
QuotientBasis<Scalar> quotient_by_rows(RowMatrix<Scalar> relations, Index ambient) {
  QuotientBasis<Scalar> q;
  std::vector<Index> pivots;
  if (relations.rows() > 0) pivots = rref_in_place(relations);

  std::vector<Index> pivot_row(static_cast<std::size_t>(ambient), -1);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    pivot_row[static_cast<std::size_t>(pivots[i])] = static_cast<Index>(i);
  for (Index j = 0; j < ambient; ++j)
    if (pivot_row[static_cast<std::size_t>(j)] < 0) q.kept.push_back(j);

  q.projection = Matrix<Scalar>::Zero(q.dim(), ambient);
  for (Index k = 0; k < q.dim(); ++k) q.projection(k, q.kept[static_cast<std::size_t>(k)]) = Scalar(1);
  // A pivot coordinate e_c is congruent to e_c minus its reduced relation row.
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (Index k = 0; k < q.dim(); ++k) {
      const Scalar& v = relations(static_cast<Index>(i), q.kept[static_cast<std::size_t>(k)]);
      if (!is_zero(v)) q.projection(k, pivots[i]) = -v;
    }
  return q;
}

/// Columns of `m` are relation vectors in a space of dimension m.rows().
template <class Derived>
QuotientBasis<typename Derived::Scalar> cokernel_basis(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  RowMatrix<Scalar> rows = m.transpose();
  return quotient_by_rows<Scalar>(std::move(rows), m.rows());
}

}  // namespace koszul

#endif  // KOSZUL_LINALG_HPP
