#include "cauchon/pfaffian.hpp"

namespace cauchon {

SkewAdjacency skew_adjacency(const LabeledCauchonDiagram& diagram) {
  const auto cells = diagram.cells();
  const Eigen::Index d = diagram.size();
  SkewAdjacency a = SkewAdjacency::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      // Row-major order: a shared row means i is left of j, a shared column
      // means i is above j.
      if (cells[i].row == cells[j].row || cells[i].col == cells[j].col) {
        a(i, j) = 1;
        a(j, i) = -1;
      }
    }
  }
  return a;
}

SkewAdjacency skew_adjacency(const CauchonDiagram& diagram) { return skew_adjacency(canonical_labels(diagram)); }

DiagramInvariants analyze(const SkewAdjacency& matrix) {
  DiagramInvariants out;
  out.dimension = static_cast<int>(matrix.rows());
  try {
    const auto reduced = skew_reduce<CheckedRational>(matrix);
    out.pfaffian = to_integer(reduced.pfaffian);
    out.rank = static_cast<int>(reduced.rank);
  } catch (const ScalarOverflow&) {
    const auto reduced = skew_reduce<mpq_class>(matrix);
    out.pfaffian = to_integer(reduced.pfaffian);
    out.rank = static_cast<int>(reduced.rank);
  }
  return out;
}

DiagramInvariants analyze(const CauchonDiagram& diagram) { return analyze(skew_adjacency(diagram)); }

mpz_class pfaffian(const SkewAdjacency& matrix) { return analyze(matrix).pfaffian; }

mpz_class pfaffian(const CauchonDiagram& diagram) { return analyze(diagram).pfaffian; }

mpz_class determinant(const CauchonDiagram& diagram) {
  return bareiss<mpz_class>(skew_adjacency(diagram)).determinant;
}

int integer_rank(const SkewAdjacency& matrix) { return static_cast<int>(bareiss<mpz_class>(matrix).rank); }

int nullity(const CauchonDiagram& diagram) { return analyze(diagram).nullity(); }

bool is_primitive(const CauchonDiagram& diagram) { return analyze(diagram).primitive(); }

}  // namespace cauchon
