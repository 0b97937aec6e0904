#pragma once

#include <stdexcept>
#include <string>

namespace cauchon {

enum class Errc {
  EmptyGrid,
  NonRectangular,
  BadCharacter,
  NotCauchon,
  ShapeMismatch,
  BadLabels,
  MalformedMatching,
  HasBlackColumn,
  InvalidSubset,
  WrongRowCount,
  UnknownFormula,
};

const char* to_string(Errc code) noexcept;

// Thrown by every validating operation in the library. `row`/`col` are
// 1-based and 0 when the error is not tied to a particular cell.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, int row = 0, int col = 0)
      : std::runtime_error(what), code_(code), row_(row), col_(col) {}

  Errc code() const noexcept { return code_; }
  int row() const noexcept { return row_; }
  int col() const noexcept { return col_; }

 private:
  Errc code_;
  int row_;
  int col_;
};

}  // namespace cauchon
