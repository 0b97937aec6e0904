#include "cauchon/scalar.hpp"

#include "cauchon/error.hpp"

#include <limits>
#include <numeric>

namespace cauchon {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw ScalarOverflow{};
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw ScalarOverflow{};
  return out;
}

std::int64_t checked_neg(std::int64_t a) {
  std::int64_t out;
  if (__builtin_sub_overflow(std::int64_t{0}, a, &out)) throw ScalarOverflow{};
  return out;
}

std::int64_t checked_gcd(std::int64_t a, std::int64_t b) {
  constexpr auto lowest = std::numeric_limits<std::int64_t>::min();
  if (a == lowest || b == lowest) throw ScalarOverflow{};
  return std::gcd(a, b);
}

}  // namespace

CheckedRational::CheckedRational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  *this = make_reduced(num, den);
}

CheckedRational CheckedRational::make_reduced(std::int64_t num, std::int64_t den) {
  if (den < 0) {
    num = checked_neg(num);
    den = checked_neg(den);
  }
  CheckedRational q;
  if (num == 0) return q;
  const std::int64_t g = checked_gcd(num, den);
  q.num_ = num / g;
  q.den_ = den / g;
  return q;
}

CheckedRational CheckedRational::operator-() const {
  CheckedRational q = *this;
  q.num_ = checked_neg(num_);
  return q;
}

CheckedRational& CheckedRational::operator+=(const CheckedRational& rhs) {
  if (den_ == 1 && rhs.den_ == 1) {
    num_ = checked_add(num_, rhs.num_);
    return *this;
  }
  const std::int64_t g = checked_gcd(den_, rhs.den_);
  const std::int64_t num = checked_add(checked_mul(num_, rhs.den_ / g), checked_mul(rhs.num_, den_ / g));
  *this = make_reduced(num, checked_mul(den_ / g, rhs.den_));
  return *this;
}

CheckedRational& CheckedRational::operator-=(const CheckedRational& rhs) { return *this += -rhs; }

CheckedRational& CheckedRational::operator*=(const CheckedRational& rhs) {
  if (num_ == 0 || rhs.num_ == 0) {
    *this = CheckedRational{};
    return *this;
  }
  if (den_ == 1 && rhs.den_ == 1) {
    num_ = checked_mul(num_, rhs.num_);
    return *this;
  }
  const std::int64_t g1 = checked_gcd(num_, rhs.den_);
  const std::int64_t g2 = checked_gcd(rhs.num_, den_);
  num_ = checked_mul(num_ / g1, rhs.num_ / g2);
  den_ = checked_mul(den_ / g2, rhs.den_ / g1);
  return *this;
}

CheckedRational& CheckedRational::operator/=(const CheckedRational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("division by zero");
  CheckedRational inv;
  inv.num_ = rhs.den_;
  inv.den_ = rhs.num_;
  if (inv.den_ < 0) {
    inv.num_ = checked_neg(inv.num_);
    inv.den_ = checked_neg(inv.den_);
  }
  return *this *= inv;
}

mpz_class to_integer(const CheckedRational& q) {
  if (!q.is_integer()) throw std::domain_error("rational value is not an integer");
  return mpz_class(static_cast<long>(q.num()));
}

mpz_class to_integer(const mpq_class& q) {
  if (q.get_den() != 1) throw std::domain_error("rational value is not an integer");
  return q.get_num();
}

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyGrid: return "EmptyGrid";
    case Errc::NonRectangular: return "NonRectangular";
    case Errc::BadCharacter: return "BadCharacter";
    case Errc::NotCauchon: return "NotCauchon";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::BadLabels: return "BadLabels";
    case Errc::MalformedMatching: return "MalformedMatching";
    case Errc::HasBlackColumn: return "HasBlackColumn";
    case Errc::InvalidSubset: return "InvalidSubset";
    case Errc::WrongRowCount: return "WrongRowCount";
    case Errc::UnknownFormula: return "UnknownFormula";
  }
  return "Unknown";
}

}  // namespace cauchon
