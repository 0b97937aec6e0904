#pragma once

// Cauchon diagrams: an m x n grid of black/white squares in which every black
// square has either its whole row-segment to the left black or its whole
// column-segment above black.
//
// Rows are stored as bitmasks; bit (j-1) of row i is set when cell (i, j) is
// black. Cells are 1-based throughout the public API.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cauchon {

using RowMask = std::uint64_t;
inline constexpr int kMaxCols = 64;

struct Cell {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline RowMask full_mask(int cols) {
  return cols >= kMaxCols ? ~RowMask{0} : (RowMask{1} << cols) - 1;
}

// First black cell (row-major) violating the Cauchon condition, if any.
std::optional<Cell> find_violation(std::span<const RowMask> masks, int rows, int cols);

bool validate(std::span<const RowMask> masks, int rows, int cols);

class CauchonDiagram {
 public:
  // Throws Error{ShapeMismatch} for bad dimensions or bits outside the grid
  // and Error{NotCauchon} at the first violating cell.
  static CauchonDiagram from_masks(int rows, int cols, std::vector<RowMask> masks);
  static CauchonDiagram all_white(int rows, int cols);
  static CauchonDiagram all_black(int rows, int cols);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::span<const RowMask> masks() const noexcept { return masks_; }
  RowMask row_mask(int row) const { return masks_[row - 1]; }
  bool is_black(int row, int col) const { return (masks_[row - 1] >> (col - 1)) & 1U; }
  bool is_white(int row, int col) const { return !is_black(row, col); }

  int white_count() const noexcept;
  int white_count_in_row(int row) const;
  // White cells in row-major order.
  std::vector<Cell> white_cells() const;

  bool column_all_black(int col) const;
  bool column_all_white(int col) const;
  bool has_black_column() const;

  friend bool operator==(const CauchonDiagram&, const CauchonDiagram&) = default;
  friend auto operator<=>(const CauchonDiagram&, const CauchonDiagram&) = default;

 private:
  friend class DiagramEnumerator;
  CauchonDiagram(int rows, int cols, std::vector<RowMask> masks)
      : rows_(rows), cols_(cols), masks_(std::move(masks)) {}

  int rows_ = 1;
  int cols_ = 0;
  std::vector<RowMask> masks_;
};

// Lexicographic order on the row-major cell string with white < black.
bool lex_less(const CauchonDiagram& a, const CauchonDiagram& b);

// Grid text: one line per row, '.' white and '#' black. A trailing newline
// and CRLF line endings are accepted.
CauchonDiagram parse_grid(std::string_view text);
std::string format_grid(const CauchonDiagram& diagram);

using DiagramVisitor = std::function<void(const CauchonDiagram&)>;

// Visits every m x n diagram once in lex_less order. The visited reference is
// only valid for the duration of the call.
void for_each_diagram(int rows, int cols, const DiagramVisitor& visit);

// All admissible first rows in lex order; each one seeds an independent
// sub-enumeration, and concatenating them in this order reproduces
// for_each_diagram.
std::vector<RowMask> first_row_partitions(int cols);
void for_each_diagram_with_first_row(int rows, int cols, RowMask first_row,
                                     const DiagramVisitor& visit);

std::vector<CauchonDiagram> enumerate_diagrams(int rows, int cols);

// Counts by dynamic programming over the set of columns that are black in
// every row so far; does not enumerate.
mpz_class count_diagrams(int rows, int cols);
// Diagrams with no all-black column.
mpz_class count_diagrams_without_black_columns(int rows, int cols);
// sum_i C(n, i) * |C'_{m, n-i}|.
mpz_class count_diagrams_by_relation(int rows, int cols);

CauchonDiagram strip_black_columns(const CauchonDiagram& diagram);
// Inserts an all-black column so that it becomes column `position + 1`
// (position in [0, cols]).
CauchonDiagram insert_black_column(const CauchonDiagram& diagram, int position);
CauchonDiagram transpose(const CauchonDiagram& diagram);

class LabeledCauchonDiagram {
 public:
  // Labels are listed in row-major white-cell order. They must be positive
  // and strictly increasing in that order, which is exactly "increasing along
  // rows, and every label in an earlier row below every label in a later row".
  LabeledCauchonDiagram(CauchonDiagram diagram, std::vector<int> labels);

  const CauchonDiagram& diagram() const noexcept { return diagram_; }
  int size() const noexcept { return static_cast<int>(labels_.size()); }
  std::span<const int> labels() const noexcept { return labels_; }
  std::span<const Cell> cells() const noexcept { return cells_; }

  // Index into labels()/cells(); nullopt for black cells or unknown labels.
  std::optional<int> index_of(Cell cell) const;
  std::optional<int> index_of_label(int label) const;
  int label_at(int row, int col) const;  // 0 when the cell is black

 private:
  CauchonDiagram diagram_;
  std::vector<int> labels_;
  std::vector<Cell> cells_;
};

// Labels 1..d in row-major order.
LabeledCauchonDiagram canonical_labels(const CauchonDiagram& diagram);

}  // namespace cauchon
