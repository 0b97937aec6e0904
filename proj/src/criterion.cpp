#include "cauchon/criterion.hpp"

#include "cauchon/error.hpp"

#include <algorithm>

namespace cauchon {

std::int64_t label_sum(const LabeledCauchonDiagram& diagram, std::span<const int> columns) {
  std::int64_t total = 0;
  const auto cells = diagram.cells();
  const auto labels = diagram.labels();
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (std::find(columns.begin(), columns.end(), cells[k].col) != columns.end()) total += labels[k];
  }
  return total;
}

TwoRowStats two_row_stats(const CauchonDiagram& diagram) {
  if (diagram.rows() != 2) throw Error(Errc::WrongRowCount, "expected a two-row diagram");
  if (diagram.has_black_column()) throw Error(Errc::HasBlackColumn, "strip all-black columns first");

  TwoRowStats stats;
  for (int j = 1; j <= diagram.cols(); ++j) {
    if (diagram.is_black(2, j)) stats.last_bottom_black = j;
  }
  for (int j = stats.last_bottom_black + 1; j <= diagram.cols(); ++j) {
    if (diagram.is_white(1, j)) stats.vert.push_back(j);
  }
  stats.top_white = diagram.white_count_in_row(1);
  stats.bottom_white = diagram.white_count_in_row(2);
  stats.vert_label_sum = label_sum(canonical_labels(diagram), stats.vert);
  return stats;
}

int vert_partition_closed_form(const CauchonDiagram& diagram, std::span<const int> columns) {
  const TwoRowStats stats = two_row_stats(diagram);
  for (int col : columns) {
    if (std::find(stats.vert.begin(), stats.vert.end(), col) == stats.vert.end()) {
      throw Error(Errc::InvalidSubset, "column " + std::to_string(col) + " is not an all-white column", 0, col);
    }
  }
  const std::int64_t t = static_cast<std::int64_t>(columns.size());
  if (stats.top_white % 2 != t % 2 || stats.bottom_white % 2 != t % 2) return 0;
  const std::int64_t exponent = t * (t + 1) / 2 + label_sum(canonical_labels(diagram), columns);
  return exponent % 2 == 0 ? 1 : -1;
}

bool primitive_1xn(const CauchonDiagram& diagram) {
  if (diagram.rows() != 1) throw Error(Errc::WrongRowCount, "expected a one-row diagram");
  return diagram.white_count() % 2 == 0;
}

bool primitive_2xn_fast(const CauchonDiagram& diagram) {
  if (diagram.rows() != 2) throw Error(Errc::WrongRowCount, "expected a two-row diagram");
  const TwoRowStats s = two_row_stats(strip_black_columns(diagram));
  if (s.top_white % 2 != s.bottom_white % 2) return false;
  const std::int64_t lhs = static_cast<std::int64_t>(s.vert.size()) - 2 * s.vert_label_sum;
  return mod4(lhs) != mod4(2 * std::int64_t{s.top_white} + 2);
}

}  // namespace cauchon
