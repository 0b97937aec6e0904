#pragma once

// Closed-form primitivity tests for one- and two-row diagrams.

#include "cauchon/diagram.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cauchon {

struct TwoRowStats {
  int last_bottom_black = 0;     // largest i with (2, i) black, 0 if none
  std::vector<int> vert;         // columns that are entirely white
  int top_white = 0;             // white squares in row 1
  int bottom_white = 0;          // white squares in row 2
  std::int64_t vert_label_sum = 0;  // canonical label sum over `vert`
};

// Mathematical modulus, result in [0, 4).
constexpr int mod4(std::int64_t value) { return static_cast<int>(((value % 4) + 4) % 4); }

// Sum of the labels of every white square lying in one of `columns`.
std::int64_t label_sum(const LabeledCauchonDiagram& diagram, std::span<const int> columns);

// Requires two rows (Errc::WrongRowCount) and no all-black column
// (Errc::HasBlackColumn).
TwoRowStats two_row_stats(const CauchonDiagram& diagram);

// Signed matching sum restricted to vertical edges exactly in `columns`:
// (-1)^(C(t+1, 2) + label_sum) when both row white counts and t = |columns|
// share a parity, else 0. Same preconditions as two_row_stats, plus columns
// must be a subset of vert (Errc::InvalidSubset).
int vert_partition_closed_form(const CauchonDiagram& diagram, std::span<const int> columns);

// Nonzero Pfaffian of a single row: the white count is even.
bool primitive_1xn(const CauchonDiagram& diagram);

// Nonzero Pfaffian of a two-row diagram. All-black columns are stripped
// first; then with S = vert, the test is top_white = bottom_white (mod 2) and
// |S| - 2 * label_sum(S) != 2 * top_white + 2 (mod 4).
bool primitive_2xn_fast(const CauchonDiagram& diagram);

}  // namespace cauchon
