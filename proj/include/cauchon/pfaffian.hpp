#pragma once

// Exact linear algebra on the skew adjacency matrix A_C of a diagram.
//
// skew_reduce() eliminates 2x2 pivot blocks of a skew-symmetric matrix and
// yields both its Pfaffian and its rank; bareiss() is an independent
// fraction-free route to the determinant and rank. Both are templated on the
// coefficient type so they run over CheckedRational, mpq_class or mpz_class.

#include "cauchon/diagram.hpp"
#include "cauchon/scalar.hpp"

#include <Eigen/Core>
#include <gmpxx.h>

#include <utility>

namespace cauchon {

using SkewAdjacency = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

// Entry (a, b) is +1 when white cell a lies strictly left of b in its row or
// strictly above b in its column, -1 in the mirrored cases and 0 otherwise.
// Indices follow label order, which is row-major for any admissible labels.
SkewAdjacency skew_adjacency(const LabeledCauchonDiagram& diagram);
SkewAdjacency skew_adjacency(const CauchonDiagram& diagram);

template <class Derived>
bool is_skew_symmetric(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (m(i, i) != 0) return false;
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (m(i, j) != -m(j, i)) return false;
    }
  }
  return true;
}

template <class Scalar>
struct SkewReduction {
  Scalar pfaffian;
  Eigen::Index rank = 0;
};

// Pivot rule: at each step take the leading remaining row, pair it with the
// first column to its right holding a nonzero entry, move that column next
// to it (one simultaneous row/column transposition flips the sign), and
// replace the trailing block by its Schur complement. A remaining row that is
// entirely zero is moved past the active block; it lowers the rank and forces
// the Pfaffian to zero.
template <class Scalar, class Derived>
SkewReduction<Scalar> skew_reduce(const Eigen::MatrixBase<Derived>& matrix) {
  using Index = Eigen::Index;
  using Work = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  eigen_assert(matrix.rows() == matrix.cols());

  Work work = matrix.template cast<Scalar>();
  Index end = work.rows();
  Index k = 0;
  Scalar pf(1);
  bool singular = false;
  SkewReduction<Scalar> out;

  auto swap_index = [&work](Index a, Index b) {
    work.row(a).swap(work.row(b));
    work.col(a).swap(work.col(b));
  };

  while (k < end) {
    Index pivot = k + 1;
    while (pivot < end && is_zero(work(k, pivot))) ++pivot;
    if (pivot >= end) {
      singular = true;
      if (k != end - 1) swap_index(k, end - 1);
      --end;
      continue;
    }
    if (pivot != k + 1) {
      swap_index(pivot, k + 1);
      pf = -pf;
    }
    const Scalar a = work(k, k + 1);
    if (!singular) pf *= a;

    // S(i, j) = C(i, j) + (A(k+1, i) A(k, j) - A(k, i) A(k+1, j)) / a
    for (Index i = k + 2; i < end; ++i) {
      const Scalar top_i = work(k, i);
      const Scalar next_i = work(k + 1, i);
      if (is_zero(top_i) && is_zero(next_i)) continue;
      for (Index j = i + 1; j < end; ++j) {
        const Scalar& top_j = work(k, j);
        const Scalar& next_j = work(k + 1, j);
        if (is_zero(top_j) && is_zero(next_j)) continue;
        Scalar delta = next_i * top_j;
        delta -= top_i * next_j;
        if (is_zero(delta)) continue;
        delta /= a;
        work(i, j) += delta;
        work(j, i) = -work(i, j);
      }
    }
    out.rank += 2;
    k += 2;
  }
  out.pfaffian = singular ? Scalar(0) : pf;
  return out;
}

template <class Integer>
struct BareissResult {
  Integer determinant;
  Eigen::Index rank = 0;
};

// Fraction-free row echelon reduction. Columns without a usable pivot are
// skipped, so the same pass yields the rank of a singular matrix. Every
// division is exact.
template <class Integer, class Derived>
BareissResult<Integer> bareiss(const Eigen::MatrixBase<Derived>& matrix) {
  using Index = Eigen::Index;
  using Work = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;

  Work work = matrix.template cast<Integer>();
  const Index rows = work.rows();
  const Index cols = work.cols();
  Integer previous(1);
  Integer sign(1);
  Index rank = 0;

  for (Index col = 0; col < cols && rank < rows; ++col) {
    Index pivot = rank;
    while (pivot < rows && is_zero(work(pivot, col))) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      work.row(pivot).swap(work.row(rank));
      sign = -sign;
    }
    const Integer p = work(rank, col);
    for (Index i = rank + 1; i < rows; ++i) {
      const Integer factor = work(i, col);
      for (Index j = col + 1; j < cols; ++j) {
        Integer value = p * work(i, j);
        value -= factor * work(rank, j);
        value /= previous;
        work(i, j) = value;
      }
      work(i, col) = Integer(0);
    }
    previous = p;
    ++rank;
  }

  BareissResult<Integer> out;
  out.rank = rank;
  if (rows != cols) {
    out.determinant = Integer(0);
  } else if (rows == 0) {
    out.determinant = Integer(1);
  } else {
    out.determinant = rank == rows ? Integer(sign * work(rows - 1, cols - 1)) : Integer(0);
  }
  return out;
}

struct DiagramInvariants {
  mpz_class pfaffian;
  int dimension = 0;  // number of white squares
  int rank = 0;
  int nullity() const noexcept { return dimension - rank; }
  bool primitive() const { return sgn(pfaffian) != 0; }
};

// One skew reduction: int64 rationals first, arbitrary precision on overflow.
DiagramInvariants analyze(const SkewAdjacency& matrix);
DiagramInvariants analyze(const CauchonDiagram& diagram);

mpz_class pfaffian(const CauchonDiagram& diagram);
mpz_class pfaffian(const SkewAdjacency& matrix);
// Bareiss over mpz; independent of the Pfaffian route.
mpz_class determinant(const CauchonDiagram& diagram);
int integer_rank(const SkewAdjacency& matrix);
int nullity(const CauchonDiagram& diagram);
bool is_primitive(const CauchonDiagram& diagram);

}  // namespace cauchon
