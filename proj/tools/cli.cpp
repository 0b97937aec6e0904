#include "cli.hpp"

#include "cauchon/census.hpp"
#include "cauchon/criterion.hpp"
#include "cauchon/diagram.hpp"
#include "cauchon/error.hpp"
#include "cauchon/matching.hpp"
#include "cauchon/pfaffian.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cauchon::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Failure {
  int code;
  std::string message;
};

struct Limits {
  unsigned workers = 0;
  std::optional<int> max_cells;
};

// --max-cells wins over CAUCHON_MAX_CELLS, which wins over the default.
int resolve_max_cells(const Limits& limits) {
  if (limits.max_cells) {
    if (*limits.max_cells < 0) throw Failure{kUsage, "--max-cells must be non-negative"};
    return *limits.max_cells;
  }
  if (const char* env = std::getenv("CAUCHON_MAX_CELLS"); env != nullptr && *env != '\0') {
    int value = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc() || ptr != end || value < 0) {
      throw Failure{kUsage, "CAUCHON_MAX_CELLS must be a non-negative integer"};
    }
    return value;
  }
  return kDefaultMaxCells;
}

void guard(const Limits& limits, long long rows, long long cols, const std::string& what) {
  const int limit = resolve_max_cells(limits);
  if (rows * cols > limit) {
    throw Failure{kGuardrail, what + " spans " + std::to_string(rows) + "x" + std::to_string(cols) + " = " +
                                  std::to_string(rows * cols) + " cells, above the limit of " +
                                  std::to_string(limit) + " (see --max-cells or CAUCHON_MAX_CELLS)"};
  }
}

Json big(const mpz_class& value) {
  if (value.fits_slong_p()) return value.get_si();
  return value.get_str();
}

Json rational(const mpq_class& value) {
  Json j;
  j["num"] = big(value.get_num());
  j["den"] = big(value.get_den());
  return j;
}

std::string text(const mpq_class& value) {
  return value.get_den() == 1 ? value.get_num().get_str() : value.get_str();
}

CensusMode parse_mode(const std::string& name) {
  return name == "fast" ? CensusMode::FastWhenAvailable : CensusMode::Pfaffian;
}

std::string shape(int rows, int cols) { return std::to_string(rows) + "x" + std::to_string(cols); }

// Left-aligned two-column "key value" rows.
void field(std::ostream& out, const std::string& key, const std::string& value) {
  out << std::left << std::setw(12) << key << std::right << value << '\n';
}

// Right-aligned columns, widths taken from the widest entry of each column.
void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += "  ";
      line += std::string(width[c] - row[c].size(), ' ') + row[c];
    }
    out << line << '\n';
  }
}

CauchonDiagram read_grid(const std::string& source, std::istream& in) {
  std::string content;
  if (source == "-") {
    content.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream file(source, std::ios::binary);
    if (!file) throw Failure{kInputParse, "cannot read grid file '" + source + "'"};
    content.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  }
  try {
    return parse_grid(content);
  } catch (const Error& e) {
    throw Failure{kInputParse, std::string("invalid grid: ") + e.what()};
  }
}

Json grid_rows(const CauchonDiagram& d) {
  Json rows = Json::array();
  std::istringstream lines(format_grid(d));
  for (std::string line; std::getline(lines, line);) rows.push_back(line);
  if (d.cols() == 0) rows = Json::array();
  return rows;
}

void print_grid(std::ostream& out, const CauchonDiagram& d) {
  std::istringstream lines(format_grid(d));
  for (std::string line; std::getline(lines, line);) out << "  " << line << '\n';
}

// ---- count -------------------------------------------------------------

struct CountArgs {
  int rows = 0;
  int cols = 0;
  std::string mode = "pfaffian";
  bool histogram = false;
  bool timing = false;
  std::string format = "text";
  Limits limits;
};

CensusRecord census_or_guard(int rows, int cols, const std::string& mode, const Limits& limits) {
  try {
    return run_census(rows, cols, {parse_mode(mode), limits.workers});
  } catch (const std::length_error& e) {
    throw Failure{kGuardrail, e.what()};
  }
}

void report_elapsed(std::ostream& err, bool timing, std::chrono::duration<double> elapsed) {
  if (timing) err << "elapsed " << std::fixed << std::setprecision(3) << elapsed.count() << "s\n";
}

int cmd_count(const CountArgs& a, std::ostream& out, std::ostream& err) {
  if (a.rows < 1) throw Failure{kUsage, "--rows must be at least 1"};
  if (a.cols < 0) throw Failure{kUsage, "--cols must be non-negative"};
  if (a.histogram && a.format == "csv") throw Failure{kUsage, "--histogram is not available with --format csv"};
  guard(a.limits, a.rows, a.cols, "census");

  const CensusRecord r = census_or_guard(a.rows, a.cols, a.mode, a.limits);
  const auto published = published_primitive_count(a.rows, a.cols);
  const mpq_class p = r.proportion();

  if (a.format == "csv") {
    out << "m,n,total,primitive,proportion_num,proportion_den\n";
    out << a.rows << ',' << a.cols << ',' << r.total.get_str() << ',' << r.primitive.get_str() << ','
        << p.get_num().get_str() << ',' << p.get_den().get_str() << '\n';
  } else if (a.format == "json") {
    Json j;
    j["m"] = a.rows;
    j["n"] = a.cols;
    j["mode"] = to_string(r.mode);
    j["total"] = big(r.total);
    j["primitive"] = big(r.primitive);
    j["proportion"] = rational(p);
    j["published"] = published ? Json(*published) : Json(nullptr);
    j["in_published_table"] = published.has_value();
    if (a.histogram) {
      if (r.nullity_histogram) {
        Json h = Json::object();
        for (const auto& [k, count] : *r.nullity_histogram) h[std::to_string(k)] = big(count);
        j["nullity_histogram"] = h;
      } else {
        j["nullity_histogram"] = nullptr;
      }
    }
    out << j.dump(2) << '\n';
  } else {
    field(out, "shape", shape(a.rows, a.cols));
    field(out, "mode", to_string(r.mode));
    field(out, "total", r.total.get_str());
    field(out, "primitive", r.primitive.get_str());
    field(out, "proportion", p.get_num().get_str() + "/" + p.get_den().get_str());
    field(out, "published", published ? std::to_string(*published) : "not in published table");
    if (a.histogram) {
      if (!r.nullity_histogram) {
        out << "nullity histogram unavailable: closed-form criterion used\n";
      } else {
        std::vector<std::vector<std::string>> rows{{"nullity", "diagrams"}};
        for (const auto& [k, count] : *r.nullity_histogram) rows.push_back({std::to_string(k), count.get_str()});
        print_table(out, rows);
      }
    }
  }
  report_elapsed(err, a.timing, r.elapsed);
  return kSuccess;
}

// ---- table -------------------------------------------------------------

struct TableArgs {
  int max_rows = 0;
  int max_cols = 0;
  std::string mode = "pfaffian";
  std::string format = "text";
  bool timing = false;
  Limits limits;
};

int cmd_table(const TableArgs& a, std::ostream& out, std::ostream& err) {
  if (a.max_rows < 1 || a.max_cols < 1) throw Failure{kUsage, "--max-rows and --max-cols must both be at least 1"};
  guard(a.limits, a.max_rows, a.max_cols, "table");

  std::vector<std::vector<CensusRecord>> grid(a.max_rows);
  std::chrono::duration<double> elapsed{0};
  for (int m = 1; m <= a.max_rows; ++m) {
    for (int n = 1; n <= a.max_cols; ++n) {
      grid[m - 1].push_back(census_or_guard(m, n, a.mode, a.limits));
      elapsed += grid[m - 1].back().elapsed;
    }
  }

  if (a.format == "csv") {
    out << "m,n,total,primitive,proportion_num,proportion_den\n";
    for (const auto& row : grid) {
      for (const CensusRecord& r : row) {
        const mpq_class p = r.proportion();
        out << r.rows << ',' << r.cols << ',' << r.total.get_str() << ',' << r.primitive.get_str() << ','
            << p.get_num().get_str() << ',' << p.get_den().get_str() << '\n';
      }
    }
  } else if (a.format == "json") {
    Json cells = Json::array();
    for (const auto& row : grid) {
      for (const CensusRecord& r : row) {
        const auto published = published_primitive_count(r.rows, r.cols);
        Json c;
        c["m"] = r.rows;
        c["n"] = r.cols;
        c["total"] = big(r.total);
        c["primitive"] = big(r.primitive);
        c["proportion"] = rational(r.proportion());
        c["published"] = published ? Json(*published) : Json(nullptr);
        c["in_published_table"] = published.has_value();
        cells.push_back(c);
      }
    }
    Json j;
    j["max_rows"] = a.max_rows;
    j["max_cols"] = a.max_cols;
    j["mode"] = a.mode;
    j["cells"] = cells;
    out << j.dump(2) << '\n';
  } else {
    bool any_new = false;
    std::vector<std::vector<std::string>> rows{{"m\\n"}};
    for (int n = 1; n <= a.max_cols; ++n) rows[0].push_back(std::to_string(n));
    for (const auto& row : grid) {
      rows.push_back({std::to_string(row.front().rows)});
      for (const CensusRecord& r : row) {
        std::string cell = r.primitive.get_str();
        if (!published_primitive_count(r.rows, r.cols)) {
          cell += '*';
          any_new = true;
        }
        rows.back().push_back(cell);
      }
    }
    print_table(out, rows);
    if (any_new) out << "* not in published table\n";
  }
  report_elapsed(err, a.timing, elapsed);
  return kSuccess;
}

// ---- pfaffian ----------------------------------------------------------

struct PfaffianArgs {
  std::string grid;
  bool show_matrix = false;
  bool show_nullity = false;
  std::string format = "text";
};

int cmd_pfaffian(const PfaffianArgs& a, std::istream& in, std::ostream& out) {
  const CauchonDiagram d = read_grid(a.grid, in);
  const SkewAdjacency matrix = skew_adjacency(d);
  const DiagramInvariants inv = analyze(matrix);
  const mpz_class det = determinant(d);

  if (a.format == "json") {
    Json j;
    j["mask"] = grid_rows(d);
    j["d"] = inv.dimension;
    j["pf"] = big(inv.pfaffian);
    j["det"] = big(det);
    if (a.show_nullity) j["nullity"] = inv.nullity();
    j["primitive"] = inv.primitive();
    if (a.show_matrix) {
      Json rows = Json::array();
      for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < matrix.cols(); ++k) row.push_back(matrix(i, k));
        rows.push_back(row);
      }
      j["matrix"] = rows;
    }
    out << j.dump(2) << '\n';
    return kSuccess;
  }

  field(out, "shape", shape(d.rows(), d.cols()));
  field(out, "white", std::to_string(inv.dimension));
  field(out, "pfaffian", inv.pfaffian.get_str());
  field(out, "determinant", det.get_str());
  if (a.show_nullity) field(out, "nullity", std::to_string(inv.nullity()));
  field(out, "primitive", inv.primitive() ? "true" : "false");
  if (a.show_matrix) {
    out << "matrix\n";
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
      rows.emplace_back();
      for (Eigen::Index k = 0; k < matrix.cols(); ++k) rows.back().push_back(std::to_string(matrix(i, k)));
    }
    print_table(out, rows);
  }
  return kSuccess;
}

// ---- check -------------------------------------------------------------

struct CheckArgs {
  std::string subject;
  std::optional<int> max_n;
  std::optional<int> rows;
  std::optional<int> max_rows;
  std::optional<int> max_cols;
  Limits limits;
};

const std::vector<std::string> kSubjects{"formula-2xn",  "conjecture-3xn", "criterion-2xn",
                                         "power-of-two", "relation-eqc",   "lemma-decomposition"};

int need_range(std::optional<int> value, int fallback, int lowest, const char* flag) {
  const int v = value.value_or(fallback);
  if (v < lowest) throw Failure{kUsage, std::string(flag) + " must be at least " + std::to_string(lowest)};
  return v;
}

int check_formula_rows(FormulaId id, int rows, int max_n, const Limits& limits, std::ostream& out,
                       const std::string& statement) {
  const bool conjecture = is_conjecture(id);
  guard(limits, rows, max_n, "check");
  out << "check " << (conjecture ? "(conjecture) " : "") << statement << ", n = 1.." << max_n << '\n';

  std::vector<FormulaCheckRow> report;
  try {
    report = check_formula(id, 1, max_n, {CensusMode::Pfaffian, limits.workers});
  } catch (const std::length_error& e) {
    throw Failure{kGuardrail, e.what()};
  }
  std::vector<std::vector<std::string>> table{{"n", "formula", "census", "published", "result"}};
  int matches = 0;
  for (const FormulaCheckRow& row : report) {
    const auto published = published_primitive_count(rows, row.n);
    table.push_back({std::to_string(row.n), text(row.formula), text(row.census),
                     published ? std::to_string(*published) : "-", row.match ? "ok" : "MISMATCH"});
    matches += row.match;
  }
  print_table(out, table);
  const int total = static_cast<int>(report.size());
  if (matches != total) {
    for (const FormulaCheckRow& row : report) {
      if (!row.match) {
        out << (conjecture ? "counterexample" : "mismatch") << " at n = " << row.n << ": formula " << text(row.formula)
            << ", census " << text(row.census) << '\n';
      }
    }
    out << "fail: " << matches << '/' << total << " rows match\n";
    return kCheckFailed;
  }
  if (conjecture) {
    out << "no counterexample found for n = 1.." << max_n << " (conjecture, not a proof)\n";
  } else {
    out << "pass: " << matches << '/' << total << " rows match\n";
  }
  return kSuccess;
}

int check_criterion(int max_n, const Limits& limits, std::ostream& out) {
  guard(limits, 2, max_n, "check");
  out << "check criterion-2xn: closed-form test against the Pfaffian on every 2 x n diagram, n = 0.." << max_n << '\n';
  std::vector<std::vector<std::string>> table{{"n", "diagrams", "primitive", "mismatches"}};
  std::uint64_t diagrams = 0, mismatches = 0;
  std::optional<CauchonDiagram> first_bad;
  for (int n = 0; n <= max_n; ++n) {
    std::uint64_t count = 0, primitive = 0, bad = 0;
    for_each_diagram(2, n, [&](const CauchonDiagram& d) {
      ++count;
      const bool slow = is_primitive(d);
      primitive += slow;
      if (primitive_2xn_fast(d) != slow) {
        ++bad;
        if (!first_bad) first_bad = d;
      }
    });
    table.push_back({std::to_string(n), std::to_string(count), std::to_string(primitive), std::to_string(bad)});
    diagrams += count;
    mismatches += bad;
  }
  print_table(out, table);
  if (first_bad) {
    out << "mismatch: fast test says " << (primitive_2xn_fast(*first_bad) ? "primitive" : "not primitive")
        << ", Pfaffian is " << pfaffian(*first_bad).get_str() << ", on\n";
    print_grid(out, *first_bad);
    out << "fail: " << mismatches << " mismatches in " << diagrams << " diagrams\n";
    return kCheckFailed;
  }
  out << "pass: " << diagrams << " diagrams, 0 mismatches\n";
  return kSuccess;
}

int check_power_of_two(int max_rows, int max_cols, const Limits& limits, std::ostream& out) {
  guard(limits, max_rows, max_cols, "check");
  out << "check (conjecture) power-of-two: |Pf| is 0 or a power of 2 for m = 1.." << max_rows
      << ", n = 1.." << max_cols << '\n';
  PowerOfTwoReport report;
  try {
    report = scan_power_of_two(max_rows, max_cols);
  } catch (const std::length_error& e) {
    throw Failure{kGuardrail, e.what()};
  }
  std::vector<std::vector<std::string>> table{{"|Pf|", "diagrams"}};
  for (const auto& [value, count] : report.abs_values) table.push_back({value.get_str(), std::to_string(count)});
  print_table(out, table);
  if (!report.violations.empty()) {
    for (const PowerOfTwoViolation& v : report.violations) {
      out << "counterexample: Pf = " << v.pfaffian.get_str() << " on\n";
      print_grid(out, v.diagram);
    }
    out << "fail: " << report.violations.size() << " counterexamples in " << report.diagrams << " diagrams\n";
    return kCheckFailed;
  }
  out << "no counterexample found among " << report.diagrams << " diagrams (conjecture, not a proof)\n";
  return kSuccess;
}

int check_relation(int rows, int max_n, const Limits& limits, std::ostream& out) {
  guard(limits, rows, max_n, "check");
  out << "check relation-eqc: |C(m,n)| = sum_i binom(n,i) |C'(m,n-i)|, both sides enumerated, m = " << rows
      << ", n = 0.." << max_n << '\n';
  std::vector<RelationRow> report;
  try {
    report = check_relation_eqc(rows, max_n);
  } catch (const std::length_error& e) {
    throw Failure{kGuardrail, e.what()};
  }
  std::vector<std::vector<std::string>> table{{"n", "lhs", "rhs", "result"}};
  int matches = 0;
  for (const RelationRow& row : report) {
    table.push_back({std::to_string(row.n), row.lhs.get_str(), row.rhs.get_str(), row.match ? "ok" : "MISMATCH"});
    matches += row.match;
  }
  print_table(out, table);
  const int total = static_cast<int>(report.size());
  out << (matches == total ? "pass: " : "fail: ") << matches << '/' << total << " rows match\n";
  return matches == total ? kSuccess : kCheckFailed;
}

int check_lemma(int max_n, const Limits& limits, std::ostream& out) {
  guard(limits, 2, max_n, "check");
  out << "check lemma-decomposition: matching sums split by vertical columns T on C'(2,n), n = 0.." << max_n << '\n';
  std::vector<std::vector<std::string>> table{{"n", "diagrams", "subsets", "mismatches"}};
  std::uint64_t mismatches = 0, diagrams = 0;
  bool shown = false;
  for (int n = 0; n <= max_n; ++n) {
    std::uint64_t count = 0, subsets = 0, bad = 0;
    for_each_diagram(2, n, [&](const CauchonDiagram& d) {
      if (d.has_black_column()) return;
      ++count;
      const auto labeled = canonical_labels(d);
      const std::vector<int> vert = two_row_stats(d).vert;
      mpz_class sum = 0;
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << vert.size()); ++code) {
        std::vector<int> t;
        for (std::size_t k = 0; k < vert.size(); ++k) {
          if ((code >> k) & 1U) t.push_back(vert[k]);
        }
        ++subsets;
        const mpz_class brute = vert_partition_sum(labeled, t);
        const int closed = vert_partition_closed_form(d, t);
        sum += brute;
        if (brute != closed) {
          ++bad;
          if (!shown) {
            shown = true;
            out << "mismatch: T = {";
            for (std::size_t k = 0; k < t.size(); ++k) out << (k ? "," : "") << t[k];
            out << "}, matching sum " << brute.get_str() << ", closed form " << closed << ", on\n";
            print_grid(out, d);
          }
        }
      }
      const mpz_class pf = pfaffian(d);
      if (sum != pf) {
        ++bad;
        if (!shown) {
          shown = true;
          out << "mismatch: parts total " << sum.get_str() << ", Pfaffian " << pf.get_str() << ", on\n";
          print_grid(out, d);
        }
      }
    });
    table.push_back({std::to_string(n), std::to_string(count), std::to_string(subsets), std::to_string(bad)});
    diagrams += count;
    mismatches += bad;
  }
  print_table(out, table);
  if (mismatches > 0) {
    out << "fail: " << mismatches << " mismatches\n";
    return kCheckFailed;
  }
  out << "pass: " << diagrams << " diagrams, every part agrees and the parts total the Pfaffian\n";
  return kSuccess;
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
  if (a.subject == "formula-2xn") {
    return check_formula_rows(FormulaId::P2Closed, 2, need_range(a.max_n, 9, 1, "--max-n"), a.limits, out,
                              "formula-2xn: P(2,n) = (3^(n+1) - 2^(n+1) + (-1)^(n+1) + 2)/4");
  }
  if (a.subject == "conjecture-3xn") {
    return check_formula_rows(FormulaId::P3Conjectured, 3, need_range(a.max_n, 7, 1, "--max-n"), a.limits, out,
                              "conjecture-3xn: P(3,n) = (15*4^n - 18*3^n + 13*2^n - 6*(-1)^n + 3*(-2)^n)/8");
  }
  if (a.subject == "criterion-2xn") return check_criterion(need_range(a.max_n, 8, 0, "--max-n"), a.limits, out);
  if (a.subject == "power-of-two") {
    return check_power_of_two(need_range(a.max_rows, 4, 1, "--max-rows"), need_range(a.max_cols, 4, 1, "--max-cols"),
                              a.limits, out);
  }
  if (a.subject == "relation-eqc") {
    return check_relation(need_range(a.rows, 2, 1, "--rows"), need_range(a.max_n, 8, 0, "--max-n"), a.limits, out);
  }
  return check_lemma(need_range(a.max_n, 5, 0, "--max-n"), a.limits, out);
}

// ---- enumerate / matchings ---------------------------------------------

struct EnumerateArgs {
  int rows = 0;
  int cols = 0;
  std::string format = "jsonl";
  Limits limits;
};

int cmd_enumerate(const EnumerateArgs& a, std::ostream& out) {
  if (a.rows < 1) throw Failure{kUsage, "--rows must be at least 1"};
  if (a.cols < 0) throw Failure{kUsage, "--cols must be non-negative"};
  guard(a.limits, a.rows, a.cols, "enumeration");
  try {
    for_each_diagram(a.rows, a.cols, [&](const CauchonDiagram& d) {
      const DiagramInvariants inv = analyze(d);
      if (a.format == "jsonl") {
        Json j;
        j["mask"] = grid_rows(d);
        j["d"] = inv.dimension;
        j["pf"] = big(inv.pfaffian);
        j["nullity"] = inv.nullity();
        j["primitive"] = inv.primitive();
        out << j.dump() << '\n';
      } else {
        std::string mask = format_grid(d);
        std::replace(mask.begin(), mask.end(), '\n', '/');
        out << mask << "  d=" << inv.dimension << " pf=" << inv.pfaffian.get_str() << " nullity=" << inv.nullity()
            << " primitive=" << (inv.primitive() ? "true" : "false") << '\n';
      }
    });
  } catch (const std::length_error& e) {
    throw Failure{kGuardrail, e.what()};
  }
  return kSuccess;
}

struct MatchingsArgs {
  std::string grid;
  std::string format = "jsonl";
  Limits limits;
};

int cmd_matchings(const MatchingsArgs& a, std::istream& in, std::ostream& out) {
  const CauchonDiagram d = read_grid(a.grid, in);
  guard(a.limits, 1, d.white_count(), "matching search over white squares");
  for_each_matching(canonical_labels(d), [&](const Matching& m) {
    const int sign = matching_sign(m);
    if (a.format == "jsonl") {
      Json edges = Json::array();
      for (const Edge& e : m.edges) edges.push_back(Json::array({e.from, e.to}));
      Json j;
      j["edges"] = edges;
      j["sign"] = sign;
      out << j.dump() << '\n';
    } else {
      out << (sign > 0 ? "+1" : "-1");
      for (const Edge& e : m.edges) out << " {" << e.from << ',' << e.to << '}';
      out << '\n';
    }
  });
  return kSuccess;
}

// ---- fit ---------------------------------------------------------------

struct FitArgs {
  int rows = 0;
  int max_n = 9;
  std::optional<int> lowest_base;
  Limits limits;
};

int cmd_fit(const FitArgs& a, std::ostream& out) {
  if (a.rows < 1) throw Failure{kUsage, "--rows must be at least 1"};
  if (a.max_n < 1) throw Failure{kUsage, "--max-n must be at least 1"};
  guard(a.limits, a.rows, a.max_n, "fit");
  const int lowest = a.lowest_base.value_or(1 - a.rows);
  if (lowest > a.rows + 1) throw Failure{kUsage, "--lowest-base must not exceed rows + 1"};

  std::vector<mpz_class> values;
  for (int n = 1; n <= a.max_n; ++n) values.push_back(census_or_guard(a.rows, n, "pfaffian", a.limits).primitive);
  ShapeFit fit;
  try {
    fit = fit_exponential_shape(a.rows, values, lowest);
  } catch (const std::invalid_argument& e) {
    throw Failure{kUsage, std::string(e.what()) + "; raise --max-n"};
  }

  out << "fit (exploratory): P(" << a.rows << ",n) ~ sum_j c_j j^n, j = " << lowest << ".." << a.rows + 1
      << " excluding 0, data n = 1.." << a.max_n << '\n';
  std::vector<std::vector<std::string>> table{{"j", "c_j"}};
  for (std::size_t k = 0; k < fit.bases.size(); ++k) {
    table.push_back({std::to_string(fit.bases[k]), text(fit.coefficients[k])});
  }
  print_table(out, table);
  out << "residual " << text(fit.residual) << (fit.exact ? " (exact fit)" : " (least squares)") << '\n';
  const mpq_class& leading = fit.coefficients.back();
  out << "leading coefficient " << text(leading) << ", expected (2m-1)!!/2^m = " << text(fit.expected_leading)
      << (leading == fit.expected_leading ? ": agrees" : ": differs") << '\n';
  if (static_cast<int>(fit.bases.size()) == a.max_n) out << "note: as many unknowns as data points\n";
  return kSuccess;
}

void add_limits(CLI::App* cmd, Limits& limits, bool workers) {
  if (workers) cmd->add_option("--workers", limits.workers, "Worker threads, 0 for one per core")->default_val(0);
  cmd->add_option("--max-cells", limits.max_cells, "Largest m*n allowed (default 30, or CAUCHON_MAX_CELLS)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact census of Cauchon diagrams and primitivity by Pfaffians", "cauchon"};
  app.require_subcommand(1);
  app.footer("Exit codes: 0 success, 1 check failed, 2 usage, 3 guardrail, 4 input parse.");

  const std::vector<std::string> table_formats{"text", "csv", "json"};
  const std::vector<std::string> modes{"pfaffian", "fast"};

  CountArgs count;
  auto* c = app.add_subcommand("count", "Census of one m x n shape");
  c->add_option("--rows", count.rows, "Rows m")->required();
  c->add_option("--cols", count.cols, "Columns n")->required();
  c->add_option("--mode", count.mode, "pfaffian, or fast for the closed-form tests when m <= 2")
      ->check(CLI::IsMember(modes));
  c->add_flag("--histogram", count.histogram, "Include the nullity histogram");
  c->add_option("--format", count.format)->check(CLI::IsMember(table_formats));
  c->add_flag("--timing", count.timing, "Print elapsed time on stderr");
  add_limits(c, count.limits, true);

  TableArgs table;
  auto* t = app.add_subcommand("table", "P(m,n) for every 1 <= m <= M, 1 <= n <= N");
  t->add_option("--max-rows", table.max_rows)->required();
  t->add_option("--max-cols", table.max_cols)->required();
  t->add_option("--mode", table.mode)->check(CLI::IsMember(modes));
  t->add_option("--format", table.format)->check(CLI::IsMember(table_formats));
  t->add_flag("--timing", table.timing, "Print elapsed time on stderr");
  add_limits(t, table.limits, true);

  PfaffianArgs pf;
  auto* p = app.add_subcommand("pfaffian", "Pfaffian, determinant and primitivity of one diagram");
  p->add_option("--grid", pf.grid, "Grid file of '.' and '#' rows, or - for stdin")->required();
  p->add_flag("--show-matrix", pf.show_matrix);
  p->add_flag("--show-nullity", pf.show_nullity);
  p->add_option("--format", pf.format)->check(CLI::IsMember({"text", "json"}));

  CheckArgs check;
  auto* k = app.add_subcommand("check", "Verify a closed form, criterion or conjecture over a range");
  k->add_option("subject", check.subject)->required()->check(CLI::IsMember(kSubjects));
  k->add_option("--max-n", check.max_n, "Largest n");
  k->add_option("--rows", check.rows, "Rows m (relation-eqc)");
  k->add_option("--max-rows", check.max_rows, "Largest m (power-of-two)");
  k->add_option("--max-cols", check.max_cols, "Largest n (power-of-two)");
  add_limits(k, check.limits, true);

  EnumerateArgs en;
  auto* e = app.add_subcommand("enumerate", "Stream every m x n diagram with its invariants");
  e->add_option("--rows", en.rows)->required();
  e->add_option("--cols", en.cols)->required();
  e->add_option("--format", en.format)->check(CLI::IsMember({"jsonl", "text"}));
  add_limits(e, en.limits, false);

  MatchingsArgs mt;
  auto* m = app.add_subcommand("matchings", "Stream the perfect matchings of one diagram with signs");
  m->add_option("--grid", mt.grid, "Grid file, or - for stdin")->required();
  m->add_option("--format", mt.format)->check(CLI::IsMember({"jsonl", "text"}));
  add_limits(m, mt.limits, false);

  FitArgs fit;
  auto* f = app.add_subcommand("fit", "Exploratory exponential-sum fit of P(m,n) in n");
  f->add_option("--rows", fit.rows)->required();
  f->add_option("--max-n", fit.max_n)->default_val(9);
  f->add_option("--lowest-base", fit.lowest_base, "Smallest base j (default 1 - m)");
  add_limits(f, fit.limits, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (c->parsed()) return cmd_count(count, out, err);
    if (t->parsed()) return cmd_table(table, out, err);
    if (p->parsed()) return cmd_pfaffian(pf, in, out);
    if (k->parsed()) return cmd_check(check, out);
    if (e->parsed()) return cmd_enumerate(en, out);
    if (m->parsed()) return cmd_matchings(mt, in, out);
    return cmd_fit(fit, out);
  } catch (const Failure& failure) {
    err << "error: " << failure.message << '\n';
    return failure.code;
  }
}

}  // namespace cauchon::cli
