#include "cauchon/census.hpp"

#include "cauchon/criterion.hpp"
#include "cauchon/error.hpp"
#include "cauchon/pfaffian.hpp"
#include "cauchon/scalar.hpp"

#include <Eigen/Core>

#include <array>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace cauchon {

namespace {

struct PartialCount {
  std::uint64_t total = 0;
  std::uint64_t primitive = 0;
  std::map<int, std::uint64_t> histogram;
};

mpz_class power(long base, unsigned long exponent) {
  mpz_class out;
  mpz_class b(base);
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), exponent);
  return out;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

// Runs `work(partition_index)` for every partition on a pool of workers.
template <class Work>
void run_partitions(std::size_t count, unsigned workers, Work&& work) {
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            work(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

const char* to_string(CensusMode mode) noexcept {
  return mode == CensusMode::Pfaffian ? "pfaffian" : "fast";
}

unsigned resolve_workers(unsigned requested) noexcept {
  if (requested > 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

mpq_class CensusRecord::proportion() const {
  if (sgn(total) == 0) return 0;
  mpq_class q(primitive, total);
  q.canonicalize();
  return q;
}

CensusRecord& CensusRecord::merge(const CensusRecord& other) {
  total += other.total;
  primitive += other.primitive;
  if (nullity_histogram && other.nullity_histogram) {
    for (const auto& [k, v] : *other.nullity_histogram) (*nullity_histogram)[k] += v;
  } else {
    nullity_histogram.reset();
  }
  elapsed += other.elapsed;
  return *this;
}

bool CensusRecord::same_counts(const CensusRecord& other) const {
  return rows == other.rows && cols == other.cols && mode == other.mode && total == other.total &&
         primitive == other.primitive && nullity_histogram == other.nullity_histogram;
}

CensusRecord run_census(int rows, int cols, const CensusOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const std::vector<RowMask> partitions = first_row_partitions(cols);
  const bool fast = options.mode == CensusMode::FastWhenAvailable && rows <= 2;
  std::vector<PartialCount> partials(partitions.size());

  run_partitions(partitions.size(), resolve_workers(options.workers), [&](std::size_t index) {
    PartialCount& part = partials[index];
    for_each_diagram_with_first_row(rows, cols, partitions[index], [&](const CauchonDiagram& diagram) {
      ++part.total;
      if (fast) {
        part.primitive += rows == 1 ? primitive_1xn(diagram) : primitive_2xn_fast(diagram);
        return;
      }
      const DiagramInvariants inv = analyze(diagram);
      part.primitive += inv.primitive();
      ++part.histogram[inv.nullity()];
    });
  });

  CensusRecord record;
  record.rows = rows;
  record.cols = cols;
  record.mode = options.mode;
  if (!fast) record.nullity_histogram.emplace();
  for (const PartialCount& part : partials) {
    record.total += mpz_class(static_cast<unsigned long>(part.total));
    record.primitive += mpz_class(static_cast<unsigned long>(part.primitive));
    if (!fast) {
      for (const auto& [k, v] : part.histogram) (*record.nullity_histogram)[k] += static_cast<unsigned long>(v);
    }
  }
  record.elapsed = std::chrono::steady_clock::now() - started;
  return record;
}

mpq_class proportion(int rows, int cols, const CensusOptions& options) {
  return run_census(rows, cols, options).proportion();
}

std::optional<std::uint64_t> published_primitive_count(int rows, int cols) {
  static constexpr std::array<std::array<std::uint64_t, 9>, 5> kTable{{
      {1, 2, 4, 8, 16, 32, 64, 128, 256},
      {2, 5, 17, 53, 167, 515, 1577, 4793, 14507},
      {4, 17, 70, 329, 1414, 6167, 25960, 108629, 447874},
      {8, 53, 329, 1865, 11243, 0, 0, 0, 0},
      {16, 167, 1414, 11243, 80806, 0, 0, 0, 0},
  }};
  if (rows < 1 || rows > 5 || cols < 1 || cols > 9) return std::nullopt;
  const std::uint64_t value = kTable[rows - 1][cols - 1];
  if (value == 0) return std::nullopt;
  return value;
}

std::string_view to_string(FormulaId id) noexcept {
  switch (id) {
    case FormulaId::P1Closed: return "P1_closed";
    case FormulaId::P2Closed: return "P2_closed";
    case FormulaId::C2Total: return "C2_total";
    case FormulaId::C2PrimeTotal: return "C2_prime_total";
    case FormulaId::P3Conjectured: return "P3_conjectured";
    case FormulaId::ProportionLimit: return "proportion_limit";
  }
  return "unknown";
}

FormulaId parse_formula_id(std::string_view name) {
  for (FormulaId id : {FormulaId::P1Closed, FormulaId::P2Closed, FormulaId::C2Total, FormulaId::C2PrimeTotal,
                       FormulaId::P3Conjectured, FormulaId::ProportionLimit}) {
    if (to_string(id) == name) return id;
  }
  throw Error(Errc::UnknownFormula, "unknown formula '" + std::string(name) + "'");
}

bool is_conjecture(FormulaId id) noexcept {
  return id == FormulaId::P3Conjectured || id == FormulaId::ProportionLimit;
}

mpq_class formula_value(FormulaId id, int n, std::optional<int> m) {
  if (id == FormulaId::ProportionLimit) {
    if (!m || *m < 1) throw std::invalid_argument("proportion_limit needs m >= 1");
    mpq_class q(binomial(2 * *m, *m), power(4, *m));
    q.canonicalize();
    return q;
  }
  if (n < 1) throw std::invalid_argument("closed forms are stated for n >= 1");
  const auto un = static_cast<unsigned long>(n);
  mpz_class num;
  mpz_class den = 1;
  switch (id) {
    case FormulaId::P1Closed:
      num = power(2, un - 1);
      break;
    case FormulaId::P2Closed:
      num = power(3, un + 1) - power(2, un + 1) + power(-1, un + 1) + 2;
      den = 4;
      break;
    case FormulaId::C2Total:
      num = 2 * power(3, un) - power(2, un);
      break;
    case FormulaId::C2PrimeTotal:
      num = power(2, un + 1) - 1;
      break;
    case FormulaId::P3Conjectured:
      num = 15 * power(4, un) - 18 * power(3, un) + 13 * power(2, un) - 6 * power(-1, un) + 3 * power(-2, un);
      den = 8;
      break;
    case FormulaId::ProportionLimit:
      break;
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::uint64_t enumerated_count(int rows, int cols) {
  std::uint64_t count = 0;
  for_each_diagram(rows, cols, [&count](const CauchonDiagram&) { ++count; });
  return count;
}

std::uint64_t enumerated_count_without_black_columns(int rows, int cols) {
  std::uint64_t count = 0;
  for_each_diagram(rows, cols, [&count](const CauchonDiagram& d) { count += !d.has_black_column(); });
  return count;
}

std::vector<FormulaCheckRow> check_formula(FormulaId id, int n_from, int n_to, const CensusOptions& options) {
  if (id == FormulaId::ProportionLimit) {
    throw std::invalid_argument("proportion_limit is a limit; tabulate proportion(m, n) instead");
  }
  std::vector<FormulaCheckRow> rows;
  for (int n = n_from; n <= n_to; ++n) {
    FormulaCheckRow row;
    row.n = n;
    row.formula = formula_value(id, n);
    switch (id) {
      case FormulaId::P1Closed: row.census = run_census(1, n, options).primitive; break;
      case FormulaId::P2Closed: row.census = run_census(2, n, options).primitive; break;
      case FormulaId::P3Conjectured: row.census = run_census(3, n, options).primitive; break;
      case FormulaId::C2Total: row.census = mpz_class(static_cast<unsigned long>(enumerated_count(2, n))); break;
      case FormulaId::C2PrimeTotal:
        row.census = mpz_class(static_cast<unsigned long>(enumerated_count_without_black_columns(2, n)));
        break;
      case FormulaId::ProportionLimit: break;
    }
    row.match = row.formula == row.census;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RelationRow> check_relation_eqc(int rows, int max_cols) {
  std::vector<mpz_class> prime_counts;
  for (int k = 0; k <= max_cols; ++k) {
    prime_counts.emplace_back(static_cast<unsigned long>(enumerated_count_without_black_columns(rows, k)));
  }
  std::vector<RelationRow> out;
  for (int n = 0; n <= max_cols; ++n) {
    RelationRow row;
    row.n = n;
    row.lhs = static_cast<unsigned long>(enumerated_count(rows, n));
    row.rhs = 0;
    for (int i = 0; i <= n; ++i) row.rhs += binomial(n, i) * prime_counts[n - i];
    row.match = row.lhs == row.rhs;
    out.push_back(std::move(row));
  }
  return out;
}

PowerOfTwoReport& PowerOfTwoReport::merge(const PowerOfTwoReport& other) {
  diagrams += other.diagrams;
  for (const auto& [k, v] : other.abs_values) abs_values[k] += v;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  return *this;
}

bool is_zero_or_power_of_two(const mpz_class& value) {
  if (sgn(value) == 0) return true;
  const mpz_class magnitude = abs(value);
  return mpz_popcount(magnitude.get_mpz_t()) == 1;
}

PowerOfTwoReport scan_power_of_two_shape(int rows, int cols) {
  PowerOfTwoReport report;
  for_each_diagram(rows, cols, [&report](const CauchonDiagram& diagram) {
    ++report.diagrams;
    const mpz_class pf = pfaffian(diagram);
    ++report.abs_values[abs(pf)];
    if (!is_zero_or_power_of_two(pf)) report.violations.push_back({diagram, pf});
  });
  return report;
}

PowerOfTwoReport scan_power_of_two(int max_rows, int max_cols) {
  PowerOfTwoReport report;
  for (int m = 1; m <= max_rows; ++m) {
    for (int n = 1; n <= max_cols; ++n) report.merge(scan_power_of_two_shape(m, n));
  }
  return report;
}

ShapeFit fit_exponential_shape(int rows, std::span<const mpz_class> values, int lowest_base) {
  using Matrix = Eigen::Matrix<mpq_class, Eigen::Dynamic, Eigen::Dynamic>;
  ShapeFit fit;
  fit.rows = rows;
  for (int base = lowest_base; base <= rows + 1; ++base) {
    if (base != 0) fit.bases.push_back(base);
  }
  const auto unknowns = static_cast<Eigen::Index>(fit.bases.size());
  const auto samples = static_cast<Eigen::Index>(values.size());
  if (unknowns == 0 || samples < unknowns) throw std::invalid_argument("not enough data points for the fit");

  Matrix design(samples, unknowns);
  for (Eigen::Index s = 0; s < samples; ++s) {
    for (Eigen::Index b = 0; b < unknowns; ++b) design(s, b) = power(fit.bases[b], static_cast<unsigned long>(s + 1));
  }

  // Normal equations [G | h], G = V^T V, h = V^T y, solved by Gauss-Jordan.
  Matrix system(unknowns, unknowns + 1);
  for (Eigen::Index a = 0; a < unknowns; ++a) {
    for (Eigen::Index b = 0; b < unknowns; ++b) {
      mpq_class acc = 0;
      for (Eigen::Index s = 0; s < samples; ++s) acc += design(s, a) * design(s, b);
      system(a, b) = acc;
    }
    mpq_class acc = 0;
    for (Eigen::Index s = 0; s < samples; ++s) acc += design(s, a) * mpq_class(values[s]);
    system(a, unknowns) = acc;
  }
  for (Eigen::Index c = 0; c < unknowns; ++c) {
    Eigen::Index pivot = c;
    while (pivot < unknowns && sgn(system(pivot, c)) == 0) ++pivot;
    if (pivot == unknowns) throw std::invalid_argument("singular fit system");
    if (pivot != c) system.row(pivot).swap(system.row(c));
    const mpq_class p = system(c, c);
    for (Eigen::Index j = c; j <= unknowns; ++j) system(c, j) /= p;
    for (Eigen::Index i = 0; i < unknowns; ++i) {
      if (i == c || sgn(system(i, c)) == 0) continue;
      const mpq_class factor = system(i, c);
      for (Eigen::Index j = c; j <= unknowns; ++j) system(i, j) -= factor * system(c, j);
    }
  }
  for (Eigen::Index b = 0; b < unknowns; ++b) fit.coefficients.push_back(system(b, unknowns));

  fit.residual = 0;
  for (Eigen::Index s = 0; s < samples; ++s) {
    mpq_class predicted = 0;
    for (Eigen::Index b = 0; b < unknowns; ++b) predicted += fit.coefficients[b] * design(s, b);
    const mpq_class error = predicted - mpq_class(values[s]);
    fit.residual += error * error;
  }
  fit.exact = sgn(fit.residual) == 0;

  mpz_class odd_product = 1;
  for (int k = 1; k <= rows; ++k) odd_product *= 2 * k - 1;
  fit.expected_leading = mpq_class(odd_product, power(2, rows));
  fit.expected_leading.canonicalize();
  return fit;
}

}  // namespace cauchon
