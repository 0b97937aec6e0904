#include "cauchon/census.hpp"
#include "cauchon/error.hpp"
#include "cauchon/pfaffian.hpp"

#include "doctest.h"

using namespace cauchon;

namespace {

// Brute-force census straight from the per-diagram predicates.
std::pair<std::uint64_t, std::uint64_t> direct_census(int m, int n) {
  std::uint64_t total = 0, primitive = 0;
  for_each_diagram(m, n, [&](const CauchonDiagram& d) {
    ++total;
    primitive += is_primitive(d);
  });
  return {total, primitive};
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

TEST_CASE("census examples") {
  CHECK(run_census(2, 2).primitive == 5);
  CHECK(run_census(3, 4).primitive == 329);
  CHECK(run_census(2, 2).total == 14);
  const CensusRecord empty = run_census(3, 0);
  CHECK(empty.total == 1);
  CHECK(empty.primitive == 1);
}

TEST_CASE("census agrees with a direct pass over the enumeration") {
  for (int m = 1; m <= 3; ++m) {
    for (int n = 0; n <= 4; ++n) {
      const auto [total, primitive] = direct_census(m, n);
      const CensusRecord r = run_census(m, n);
      CHECK(r.total == mpz_class(static_cast<unsigned long>(total)));
      CHECK(r.primitive == mpz_class(static_cast<unsigned long>(primitive)));
      CHECK(r.total == count_diagrams(m, n));
    }
  }
}

TEST_CASE("census results do not depend on the worker count") {
  for (auto [m, n] : {std::pair{2, 5}, std::pair{3, 4}, std::pair{4, 3}}) {
    const CensusRecord one = run_census(m, n, {CensusMode::Pfaffian, 1});
    for (unsigned w : {2U, 4U, 0U}) {
      const CensusRecord other = run_census(m, n, {CensusMode::Pfaffian, w});
      CHECK(one.same_counts(other));
      CHECK(*one.nullity_histogram == *other.nullity_histogram);
    }
  }
}

TEST_CASE("fast mode matches elimination for one and two rows") {
  for (int m = 1; m <= 2; ++m) {
    for (int n = 0; n <= 8; ++n) {
      const CensusRecord fast = run_census(m, n, {CensusMode::FastWhenAvailable, 0});
      const CensusRecord slow = run_census(m, n, {CensusMode::Pfaffian, 0});
      CHECK(fast.primitive == slow.primitive);
      CHECK(fast.total == slow.total);
      CHECK_FALSE(fast.nullity_histogram.has_value());
      CHECK(slow.nullity_histogram.has_value());
    }
  }
  // Three rows has no closed form; fast mode falls back to elimination.
  const CensusRecord three = run_census(3, 3, {CensusMode::FastWhenAvailable, 0});
  CHECK(three.nullity_histogram.has_value());
  CHECK(three.primitive == run_census(3, 3).primitive);
}

TEST_CASE("primitive counts are symmetric in the shape") {
  for (int m = 1; m <= 4; ++m) {
    for (int n = m + 1; n <= 4; ++n) CHECK(run_census(m, n).primitive == run_census(n, m).primitive);
  }
}

TEST_CASE("nullity histogram invariants") {
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 4; ++n) {
      const CensusRecord r = run_census(m, n);
      REQUIRE(r.nullity_histogram.has_value());
      mpz_class sum = 0;
      for (const auto& [k, count] : *r.nullity_histogram) {
        CHECK(k >= 0);
        sum += count;
      }
      CHECK(sum == r.total);
      const auto zero = r.nullity_histogram->find(0);
      CHECK((zero == r.nullity_histogram->end() ? mpz_class(0) : zero->second) == r.primitive);

      // The rank is even, so odd nullity occurs exactly on odd white counts.
      std::map<int, std::uint64_t> even_d, odd_d;
      for_each_diagram(m, n, [&](const CauchonDiagram& d) {
        (d.white_count() % 2 == 0 ? even_d : odd_d)[nullity(d)]++;
      });
      for (const auto& [k, c] : even_d) CHECK(k % 2 == 0);
      for (const auto& [k, c] : odd_d) CHECK(k % 2 == 1);
    }
  }
}

TEST_CASE("record merge and proportion") {
  CensusRecord a = run_census(2, 3);
  const CensusRecord b = run_census(2, 3);
  a.merge(b);
  CHECK(a.total == 2 * b.total);
  CHECK(a.primitive == 2 * b.primitive);
  CHECK(a.proportion() == b.proportion());

  for (int n = 1; n <= 10; ++n) CHECK(proportion(1, n) == mpq_class(1, 2));
  for (int m = 1; m <= 4; ++m) CHECK(proportion(m, 0) == 1);
  CHECK(proportion(2, 2) == mpq_class(5, 14));
}

TEST_CASE("published table lookup") {
  CHECK(published_primitive_count(2, 2) == 5u);
  CHECK(published_primitive_count(5, 5) == 80806u);
  CHECK(published_primitive_count(3, 9) == 447874u);
  CHECK_FALSE(published_primitive_count(4, 6).has_value());
  CHECK_FALSE(published_primitive_count(6, 1).has_value());
  CHECK_FALSE(published_primitive_count(1, 10).has_value());
  for (int m = 1; m <= 5; ++m) {
    for (int n = 1; n <= 5; ++n) CHECK(published_primitive_count(m, n) == published_primitive_count(n, m));
  }
}

TEST_CASE("formula identifiers") {
  for (FormulaId id : {FormulaId::P1Closed, FormulaId::P2Closed, FormulaId::C2Total, FormulaId::C2PrimeTotal,
                       FormulaId::P3Conjectured, FormulaId::ProportionLimit}) {
    CHECK(parse_formula_id(to_string(id)) == id);
  }
  CHECK(is_conjecture(FormulaId::P3Conjectured));
  CHECK(is_conjecture(FormulaId::ProportionLimit));
  CHECK_FALSE(is_conjecture(FormulaId::P2Closed));
  try {
    parse_formula_id("P4_closed");
    FAIL("expected UnknownFormula");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownFormula);
  }
}

TEST_CASE("formula values") {
  CHECK(formula_value(FormulaId::P2Closed, 3) == 17);
  CHECK(formula_value(FormulaId::P3Conjectured, 2) == 17);
  CHECK(formula_value(FormulaId::ProportionLimit, 0, 2) == mpq_class(3, 8));
  CHECK(formula_value(FormulaId::ProportionLimit, 0, 1) == mpq_class(1, 2));
  CHECK(formula_value(FormulaId::P1Closed, 9) == 256);
  CHECK(formula_value(FormulaId::C2Total, 2) == 14);
  CHECK(formula_value(FormulaId::C2PrimeTotal, 2) == 7);
  CHECK_THROWS(formula_value(FormulaId::ProportionLimit, 3));
  CHECK_THROWS(formula_value(FormulaId::P2Closed, 0));

  for (int m = 1; m <= 8; ++m) {
    mpq_class limit(binomial(2 * m, m), mpz_class(1) << (2 * m));
    limit.canonicalize();
    CHECK(formula_value(FormulaId::ProportionLimit, 0, m) == limit);
  }
  // Integer-valued closed forms stay integral.
  for (int n = 1; n <= 30; ++n) {
    CHECK(formula_value(FormulaId::P2Closed, n).get_den() == 1);
    CHECK(formula_value(FormulaId::P3Conjectured, n).get_den() == 1);
  }
}

TEST_CASE("check_formula rows") {
  const auto p1 = check_formula(FormulaId::P1Closed, 1, 9);
  REQUIRE(p1.size() == 9);
  for (const auto& row : p1) {
    CHECK(row.match);
    CHECK(row.census == mpq_class(mpz_class(1) << (row.n - 1)));
  }
  const auto p2 = check_formula(FormulaId::P2Closed, 1, 8);
  for (const auto& row : p2) {
    CHECK(row.match);
    CHECK(row.census == *published_primitive_count(2, row.n));
  }
  for (const auto& row : check_formula(FormulaId::P3Conjectured, 1, 5)) {
    CHECK(row.match);
    CHECK(row.census == *published_primitive_count(3, row.n));
  }
  for (const auto& row : check_formula(FormulaId::C2Total, 1, 8)) CHECK(row.match);
  for (const auto& row : check_formula(FormulaId::C2PrimeTotal, 1, 8)) CHECK(row.match);
  CHECK_THROWS_AS(check_formula(FormulaId::ProportionLimit, 1, 3), std::invalid_argument);
}

TEST_CASE("black-column relation rows") {
  for (int m = 1; m <= 3; ++m) {
    const auto rows = check_relation_eqc(m, 6);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0].lhs == 1);
    CHECK(rows[0].rhs == 1);
    for (const auto& row : rows) {
      CHECK(row.match);
      CHECK(row.lhs == count_diagrams(m, row.n));
    }
  }
  // One row: the only black-column-free row is all white.
  for (int n = 0; n <= 10; ++n) CHECK(enumerated_count_without_black_columns(1, n) == 1);
}

TEST_CASE("power-of-two scan") {
  CHECK(is_zero_or_power_of_two(0));
  CHECK(is_zero_or_power_of_two(1));
  CHECK(is_zero_or_power_of_two(-8));
  CHECK_FALSE(is_zero_or_power_of_two(3));
  CHECK_FALSE(is_zero_or_power_of_two(-6));

  for (int n = 1; n <= 10; ++n) {
    const auto r = scan_power_of_two_shape(1, n);
    CHECK(r.violations.empty());
    for (const auto& [value, count] : r.abs_values) CHECK((value == 0 || value == 1));
  }
  const auto two = scan_power_of_two_shape(2, 5);
  CHECK(two.violations.empty());
  CHECK(two.diagrams == enumerated_count(2, 5));

  const auto all = scan_power_of_two(3, 3);
  std::uint64_t expected = 0;
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) expected += enumerated_count(m, n);
  }
  CHECK(all.diagrams == expected);
  CHECK(all.violations.empty());
}

TEST_CASE("exponential shape fit") {
  const std::vector<mpz_class> row2{2, 5, 17, 53, 167, 515, 1577, 4793, 14507};
  const ShapeFit fit2 = fit_exponential_shape(2, row2, -1);
  CHECK(fit2.bases == std::vector<int>{-1, 1, 2, 3});
  CHECK(fit2.exact);
  CHECK(fit2.coefficients.back() == mpq_class(3, 4));
  CHECK(fit2.coefficients.back() == fit2.expected_leading);
  // c_{-1} = -1/4, c_1 = 1/2, c_2 = -1/2 from the closed form.
  CHECK(fit2.coefficients[0] == mpq_class(-1, 4));
  CHECK(fit2.coefficients[1] == mpq_class(1, 2));
  CHECK(fit2.coefficients[2] == mpq_class(-1, 2));

  // Without the base -1 the data do not fit exactly.
  CHECK_FALSE(fit_exponential_shape(2, row2, 1).exact);

  const std::vector<mpz_class> row3{4, 17, 70, 329, 1414, 6167, 25960, 108629, 447874};
  const ShapeFit fit3 = fit_exponential_shape(3, row3, -2);
  CHECK(fit3.exact);
  CHECK(fit3.coefficients.back() == mpq_class(15, 8));
  CHECK(fit3.coefficients.back() == fit3.expected_leading);
  CHECK_FALSE(fit_exponential_shape(3, row3, -1).exact);

  CHECK_THROWS_AS(fit_exponential_shape(3, std::vector<mpz_class>{1, 2}, -2), std::invalid_argument);
}
