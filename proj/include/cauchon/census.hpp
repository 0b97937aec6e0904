#pragma once

// Exhaustive census of C_{m,n}: primitive counts, nullity histograms, closed
// formulas and the conjecture scans built on top of them.
//
// The diagram stream is split by first-row mask; workers take partitions from
// a shared counter and the partial records are merged in partition order, so
// results do not depend on the worker count.

#include "cauchon/diagram.hpp"

#include <gmpxx.h>

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cauchon {

enum class CensusMode { Pfaffian, FastWhenAvailable };

const char* to_string(CensusMode mode) noexcept;

struct CensusOptions {
  CensusMode mode = CensusMode::Pfaffian;
  unsigned workers = 0;  // 0: one per hardware thread
};

unsigned resolve_workers(unsigned requested) noexcept;

struct CensusRecord {
  int rows = 0;
  int cols = 0;
  CensusMode mode = CensusMode::Pfaffian;
  mpz_class total = 0;
  mpz_class primitive = 0;
  // nullity -> number of diagrams; absent when a closed-form criterion
  // replaced elimination.
  std::optional<std::map<int, mpz_class>> nullity_histogram;
  std::chrono::duration<double> elapsed{0};

  mpq_class proportion() const;
  CensusRecord& merge(const CensusRecord& other);
  // Equality of everything except elapsed time.
  bool same_counts(const CensusRecord& other) const;
};

CensusRecord run_census(int rows, int cols, const CensusOptions& options = {});

mpq_class proportion(int rows, int cols, const CensusOptions& options = {});

// P(m, n) as printed in the published table, when the cell is filled there.
std::optional<std::uint64_t> published_primitive_count(int rows, int cols);

enum class FormulaId { P1Closed, P2Closed, C2Total, C2PrimeTotal, P3Conjectured, ProportionLimit };

std::string_view to_string(FormulaId id) noexcept;
// Accepts the names printed by to_string; throws Error{UnknownFormula}.
FormulaId parse_formula_id(std::string_view name);
bool is_conjecture(FormulaId id) noexcept;

//   P1Closed(n)      = 2^(n-1)
//   P2Closed(n)      = (3^(n+1) - 2^(n+1) + (-1)^(n+1) + 2) / 4
//   C2Total(n)       = 2 * 3^n - 2^n
//   C2PrimeTotal(n)  = 2^(n+1) - 1
//   P3Conjectured(n) = (15 * 4^n - 18 * 3^n + 13 * 2^n - 6 * (-1)^n + 3 * (-2)^n) / 8
//   ProportionLimit(m) = C(2m, m) / 4^m   (n is ignored)
mpq_class formula_value(FormulaId id, int n, std::optional<int> m = std::nullopt);

struct FormulaCheckRow {
  int n = 0;
  mpq_class formula;
  mpq_class census;
  bool match = false;
};

// Compares a closed form with the enumerated quantity it describes, one row
// per n in [n_from, n_to]. Throws std::invalid_argument for ProportionLimit,
// which has no per-n counterpart.
std::vector<FormulaCheckRow> check_formula(FormulaId id, int n_from, int n_to, const CensusOptions& options = {});

std::uint64_t enumerated_count(int rows, int cols);
std::uint64_t enumerated_count_without_black_columns(int rows, int cols);

struct RelationRow {
  int n = 0;
  mpz_class lhs;  // |C_{m,n}|
  mpz_class rhs;  // sum_i C(n, i) |C'_{m,n-i}|
  bool match = false;
};

// Both sides counted by enumeration.
std::vector<RelationRow> check_relation_eqc(int rows, int max_cols);

struct PowerOfTwoViolation {
  CauchonDiagram diagram;
  mpz_class pfaffian;
};

struct PowerOfTwoReport {
  std::uint64_t diagrams = 0;
  std::map<mpz_class, std::uint64_t> abs_values;  // |Pf| -> count
  std::vector<PowerOfTwoViolation> violations;
  PowerOfTwoReport& merge(const PowerOfTwoReport& other);
};

bool is_zero_or_power_of_two(const mpz_class& value);

PowerOfTwoReport scan_power_of_two_shape(int rows, int cols);
// Every shape 1 <= m <= max_rows, 1 <= n <= max_cols.
PowerOfTwoReport scan_power_of_two(int max_rows, int max_cols);

// Exploratory: least-squares fit of P(m, n) = sum_j c_j j^n over the bases
// lowest_base..m+1 (0 excluded, since 0^n vanishes for n >= 1) to the values
// P(m, 1), P(m, 2), ..., solved exactly over the rationals.
struct ShapeFit {
  int rows = 0;
  std::vector<int> bases;
  std::vector<mpq_class> coefficients;
  mpq_class residual;  // sum of squared errors
  bool exact = false;
  mpq_class expected_leading;  // 1 * 3 * 5 ... (2m - 1) / 2^m
};

ShapeFit fit_exponential_shape(int rows, std::span<const mpz_class> values, int lowest_base);

}  // namespace cauchon
