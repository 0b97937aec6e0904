#include "cauchon/diagram.hpp"

#include "cauchon/error.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace cauchon {

namespace {

RowMask low_bits(int count) { return full_mask(count); }

// Mask whose bit k is bit (cols-1-k) of `value`: maps the lex rank of a row
// to its storage mask, since column 1 is the most significant position in
// the lex order but bit 0 in storage.
RowMask reverse_bits(RowMask value, int cols) {
  RowMask out = 0;
  for (int k = 0; k < cols; ++k) {
    if ((value >> k) & 1U) out |= RowMask{1} << (cols - 1 - k);
  }
  return out;
}

// A row is admissible under `above` (columns black in every earlier row) iff
// each black cell past the maximal black prefix sits in such a column.
bool row_admissible(RowMask row, RowMask above) {
  const int prefix = std::countr_one(row);
  const RowMask rest = row & ~low_bits(prefix);
  return (rest & ~above) == 0;
}

void check_enumerable(int rows, int cols) {
  if (rows < 1 || cols < 0) throw std::invalid_argument("diagram shape must have rows >= 1, cols >= 0");
  if (cols > 32) throw std::length_error("too many columns to enumerate");
}

std::string cell_text(Cell c) { return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")"; }

std::map<RowMask, mpz_class> column_state_counts(int rows, int cols) {
  if (rows < 1 || cols < 0 || cols > kMaxCols) throw std::invalid_argument("bad diagram shape");
  std::map<RowMask, mpz_class> states{{full_mask(cols), mpz_class(1)}};
  for (int r = 0; r < rows; ++r) {
    std::map<RowMask, mpz_class> next;
    for (const auto& [above, count] : states) {
      next[above & full_mask(cols)] += count;  // all-black row
      for (int prefix = 0; prefix < cols; ++prefix) {
        // Column prefix+1 is white; any subset of `above` further right may be black.
        const RowMask free = above & ~low_bits(prefix + 1) & full_mask(cols);
        RowMask subset = free;
        while (true) {
          const RowMask row = low_bits(prefix) | subset;
          next[above & row] += count;
          if (subset == 0) break;
          subset = (subset - 1) & free;
        }
      }
    }
    states = std::move(next);
  }
  return states;
}

}  // namespace

std::optional<Cell> find_violation(std::span<const RowMask> masks, int rows, int cols) {
  RowMask above = full_mask(cols);
  for (int i = 0; i < rows; ++i) {
    const RowMask row = masks[i];
    for (int j = 0; j < cols; ++j) {
      if (!((row >> j) & 1U)) continue;
      const bool left_black = (row & low_bits(j)) == low_bits(j);
      const bool up_black = (above >> j) & 1U;
      if (!left_black && !up_black) return Cell{i + 1, j + 1};
    }
    above &= row;
  }
  return std::nullopt;
}

bool validate(std::span<const RowMask> masks, int rows, int cols) {
  return !find_violation(masks, rows, cols).has_value();
}

CauchonDiagram CauchonDiagram::from_masks(int rows, int cols, std::vector<RowMask> masks) {
  if (rows < 1 || cols < 0 || cols > kMaxCols || static_cast<int>(masks.size()) != rows) {
    throw Error(Errc::ShapeMismatch, "mask list does not describe a rows x cols grid");
  }
  for (int i = 0; i < rows; ++i) {
    if (masks[i] & ~full_mask(cols)) {
      throw Error(Errc::ShapeMismatch, "row " + std::to_string(i + 1) + " has bits outside the grid", i + 1);
    }
  }
  if (auto bad = find_violation(masks, rows, cols)) {
    throw Error(Errc::NotCauchon,
                "black cell " + cell_text(*bad) + " has a white cell both to its left and above it",
                bad->row, bad->col);
  }
  return CauchonDiagram(rows, cols, std::move(masks));
}

CauchonDiagram CauchonDiagram::all_white(int rows, int cols) {
  return from_masks(rows, cols, std::vector<RowMask>(rows, 0));
}

CauchonDiagram CauchonDiagram::all_black(int rows, int cols) {
  return from_masks(rows, cols, std::vector<RowMask>(rows, full_mask(cols)));
}

int CauchonDiagram::white_count() const noexcept {
  int black = 0;
  for (RowMask row : masks_) black += std::popcount(row);
  return rows_ * cols_ - black;
}

int CauchonDiagram::white_count_in_row(int row) const { return cols_ - std::popcount(masks_[row - 1]); }

std::vector<Cell> CauchonDiagram::white_cells() const {
  std::vector<Cell> out;
  out.reserve(white_count());
  for (int i = 1; i <= rows_; ++i) {
    for (int j = 1; j <= cols_; ++j) {
      if (is_white(i, j)) out.push_back({i, j});
    }
  }
  return out;
}

bool CauchonDiagram::column_all_black(int col) const {
  return std::all_of(masks_.begin(), masks_.end(), [col](RowMask r) { return (r >> (col - 1)) & 1U; });
}

bool CauchonDiagram::column_all_white(int col) const {
  return std::none_of(masks_.begin(), masks_.end(), [col](RowMask r) { return (r >> (col - 1)) & 1U; });
}

bool CauchonDiagram::has_black_column() const {
  RowMask all = full_mask(cols_);
  for (RowMask row : masks_) all &= row;
  return all != 0;
}

bool lex_less(const CauchonDiagram& a, const CauchonDiagram& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::pair(a.rows(), a.cols()) < std::pair(b.rows(), b.cols());
  }
  for (int i = 1; i <= a.rows(); ++i) {
    const RowMask ka = reverse_bits(a.row_mask(i), a.cols());
    const RowMask kb = reverse_bits(b.row_mask(i), b.cols());
    if (ka != kb) return ka < kb;
  }
  return false;
}

CauchonDiagram parse_grid(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front().empty()) throw Error(Errc::EmptyGrid, "grid is empty");

  const int rows = static_cast<int>(lines.size());
  const int cols = static_cast<int>(lines.front().size());
  if (cols > kMaxCols) throw Error(Errc::ShapeMismatch, "grid wider than " + std::to_string(kMaxCols) + " columns");
  std::vector<RowMask> masks(rows, 0);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(lines[i].size()) != cols) {
      throw Error(Errc::NonRectangular,
                  "row " + std::to_string(i + 1) + " has length " + std::to_string(lines[i].size()) +
                      ", expected " + std::to_string(cols),
                  i + 1);
    }
    for (int j = 0; j < cols; ++j) {
      const char ch = lines[i][j];
      if (ch == '#') {
        masks[i] |= RowMask{1} << j;
      } else if (ch != '.') {
        throw Error(Errc::BadCharacter,
                    "unexpected character '" + std::string(1, ch) + "' at cell " + cell_text({i + 1, j + 1}),
                    i + 1, j + 1);
      }
    }
  }
  return CauchonDiagram::from_masks(rows, cols, std::move(masks));
}

std::string format_grid(const CauchonDiagram& diagram) {
  std::string out;
  out.reserve(static_cast<std::size_t>(diagram.rows()) * (diagram.cols() + 1));
  for (int i = 1; i <= diagram.rows(); ++i) {
    if (i > 1) out.push_back('\n');
    for (int j = 1; j <= diagram.cols(); ++j) out.push_back(diagram.is_black(i, j) ? '#' : '.');
  }
  return out;
}

class DiagramEnumerator {
 public:
  DiagramEnumerator(int rows, int cols, const DiagramVisitor& visit)
      : current_(rows, cols, std::vector<RowMask>(rows, 0)), visit_(visit) {
    order_.reserve(std::size_t{1} << cols);
    for (RowMask k = 0; k < (RowMask{1} << cols); ++k) order_.push_back(reverse_bits(k, cols));
  }

  const std::vector<RowMask>& order() const { return order_; }

  void run_from(RowMask first_row) {
    current_.masks_[0] = first_row;
    descend(1, first_row);
  }

 private:
  void descend(int row, RowMask above) {
    if (row == current_.rows_) {
      visit_(current_);
      return;
    }
    for (RowMask candidate : order_) {
      if (!row_admissible(candidate, above)) continue;
      current_.masks_[row] = candidate;
      descend(row + 1, above & candidate);
    }
  }

  CauchonDiagram current_;
  const DiagramVisitor& visit_;
  std::vector<RowMask> order_;
};

std::vector<RowMask> first_row_partitions(int cols) {
  check_enumerable(1, cols);
  std::vector<RowMask> out;
  out.reserve(std::size_t{1} << cols);
  for (RowMask k = 0; k < (RowMask{1} << cols); ++k) out.push_back(reverse_bits(k, cols));
  return out;
}

void for_each_diagram_with_first_row(int rows, int cols, RowMask first_row, const DiagramVisitor& visit) {
  check_enumerable(rows, cols);
  if (first_row & ~full_mask(cols)) throw std::invalid_argument("first row has bits outside the grid");
  DiagramEnumerator(rows, cols, visit).run_from(first_row);
}

void for_each_diagram(int rows, int cols, const DiagramVisitor& visit) {
  check_enumerable(rows, cols);
  DiagramEnumerator enumerator(rows, cols, visit);
  for (RowMask first : enumerator.order()) enumerator.run_from(first);
}

std::vector<CauchonDiagram> enumerate_diagrams(int rows, int cols) {
  std::vector<CauchonDiagram> out;
  for_each_diagram(rows, cols, [&out](const CauchonDiagram& d) { out.push_back(d); });
  return out;
}

mpz_class count_diagrams(int rows, int cols) {
  mpz_class total = 0;
  for (const auto& [state, count] : column_state_counts(rows, cols)) total += count;
  return total;
}

mpz_class count_diagrams_without_black_columns(int rows, int cols) {
  const auto states = column_state_counts(rows, cols);
  auto it = states.find(0);
  return it == states.end() ? mpz_class(0) : it->second;
}

mpz_class count_diagrams_by_relation(int rows, int cols) {
  mpz_class total = 0;
  for (int i = 0; i <= cols; ++i) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), cols, i);
    total += binom * count_diagrams_without_black_columns(rows, cols - i);
  }
  return total;
}

CauchonDiagram strip_black_columns(const CauchonDiagram& diagram) {
  std::vector<int> keep;
  for (int j = 1; j <= diagram.cols(); ++j) {
    if (!diagram.column_all_black(j)) keep.push_back(j);
  }
  std::vector<RowMask> masks(diagram.rows(), 0);
  for (int i = 1; i <= diagram.rows(); ++i) {
    for (std::size_t k = 0; k < keep.size(); ++k) {
      if (diagram.is_black(i, keep[k])) masks[i - 1] |= RowMask{1} << k;
    }
  }
  return CauchonDiagram::from_masks(diagram.rows(), static_cast<int>(keep.size()), std::move(masks));
}

CauchonDiagram insert_black_column(const CauchonDiagram& diagram, int position) {
  if (position < 0 || position > diagram.cols() || diagram.cols() + 1 > kMaxCols) {
    throw std::invalid_argument("black column position out of range");
  }
  std::vector<RowMask> masks(diagram.rows());
  for (int i = 1; i <= diagram.rows(); ++i) {
    const RowMask row = diagram.row_mask(i);
    const RowMask low = row & low_bits(position);
    const RowMask high = (row & ~low_bits(position)) << 1;
    masks[i - 1] = low | high | (RowMask{1} << position);
  }
  return CauchonDiagram::from_masks(diagram.rows(), diagram.cols() + 1, std::move(masks));
}

CauchonDiagram transpose(const CauchonDiagram& diagram) {
  if (diagram.cols() < 1) throw Error(Errc::ShapeMismatch, "cannot transpose a diagram with no columns");
  if (diagram.rows() > kMaxCols) throw Error(Errc::ShapeMismatch, "too many rows to transpose");
  std::vector<RowMask> masks(diagram.cols(), 0);
  for (int i = 1; i <= diagram.rows(); ++i) {
    for (int j = 1; j <= diagram.cols(); ++j) {
      if (diagram.is_black(i, j)) masks[j - 1] |= RowMask{1} << (i - 1);
    }
  }
  return CauchonDiagram::from_masks(diagram.cols(), diagram.rows(), std::move(masks));
}

LabeledCauchonDiagram::LabeledCauchonDiagram(CauchonDiagram diagram, std::vector<int> labels)
    : diagram_(std::move(diagram)), labels_(std::move(labels)), cells_(diagram_.white_cells()) {
  if (labels_.size() != cells_.size()) {
    throw Error(Errc::BadLabels, "expected " + std::to_string(cells_.size()) + " labels, got " +
                                     std::to_string(labels_.size()));
  }
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (labels_[k] < 1) throw Error(Errc::BadLabels, "labels must be positive", cells_[k].row, cells_[k].col);
    if (k > 0 && labels_[k] <= labels_[k - 1]) {
      throw Error(Errc::BadLabels, "label at " + cell_text(cells_[k]) + " does not exceed the previous label",
                  cells_[k].row, cells_[k].col);
    }
  }
}

std::optional<int> LabeledCauchonDiagram::index_of(Cell cell) const {
  auto it = std::lower_bound(cells_.begin(), cells_.end(), cell);
  if (it == cells_.end() || *it != cell) return std::nullopt;
  return static_cast<int>(it - cells_.begin());
}

std::optional<int> LabeledCauchonDiagram::index_of_label(int label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

int LabeledCauchonDiagram::label_at(int row, int col) const {
  auto idx = index_of({row, col});
  return idx ? labels_[*idx] : 0;
}

LabeledCauchonDiagram canonical_labels(const CauchonDiagram& diagram) {
  std::vector<int> labels(diagram.white_count());
  for (std::size_t k = 0; k < labels.size(); ++k) labels[k] = static_cast<int>(k) + 1;
  return LabeledCauchonDiagram(diagram, std::move(labels));
}

}  // namespace cauchon
