#pragma once

// Exact scalar types usable as Eigen matrix coefficients.
//
// CheckedRational is a normalized int64 fraction that throws ScalarOverflow
// instead of wrapping; callers that need unconditional exactness retry with
// mpq_class when it throws.

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace cauchon {

struct ScalarOverflow : std::overflow_error {
  ScalarOverflow() : std::overflow_error("int64 rational overflow") {}
};

class CheckedRational {
 public:
  constexpr CheckedRational() = default;
  constexpr CheckedRational(std::int64_t value) : num_(value) {}  // NOLINT
  CheckedRational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }

  CheckedRational operator-() const;
  CheckedRational& operator+=(const CheckedRational& rhs);
  CheckedRational& operator-=(const CheckedRational& rhs);
  CheckedRational& operator*=(const CheckedRational& rhs);
  CheckedRational& operator/=(const CheckedRational& rhs);

  friend CheckedRational operator+(CheckedRational a, const CheckedRational& b) { return a += b; }
  friend CheckedRational operator-(CheckedRational a, const CheckedRational& b) { return a -= b; }
  friend CheckedRational operator*(CheckedRational a, const CheckedRational& b) { return a *= b; }
  friend CheckedRational operator/(CheckedRational a, const CheckedRational& b) { return a /= b; }
  friend bool operator==(const CheckedRational&, const CheckedRational&) = default;

  friend std::ostream& operator<<(std::ostream& os, const CheckedRational& q) {
    os << q.num_;
    if (q.den_ != 1) os << '/' << q.den_;
    return os;
  }

 private:
  static CheckedRational make_reduced(std::int64_t num, std::int64_t den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline bool is_zero(const CheckedRational& q) { return q.is_zero(); }
inline bool is_zero(const mpq_class& q) { return sgn(q) == 0; }
inline bool is_zero(const mpz_class& z) { return sgn(z) == 0; }

// Both throw std::domain_error when the value is not an integer.
mpz_class to_integer(const CheckedRational& q);
mpz_class to_integer(const mpq_class& q);

}  // namespace cauchon

namespace Eigen {

template <>
struct NumTraits<cauchon::CheckedRational> : GenericNumTraits<cauchon::CheckedRational> {
  using Real = cauchon::CheckedRational;
  using NonInteger = cauchon::CheckedRational;
  using Literal = cauchon::CheckedRational;
  using Nested = cauchon::CheckedRational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 10,
    MulCost = 10
  };
  static Real epsilon() { return 0; }
  static Real dummy_precision() { return 0; }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Literal = mpq_class;
  using Nested = mpq_class;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static Real epsilon() { return 0; }
  static Real dummy_precision() { return 0; }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpq_class;
  using Literal = mpz_class;
  using Nested = mpz_class;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 100,
    MulCost = 100
  };
  static Real epsilon() { return 0; }
  static Real dummy_precision() { return 0; }
  static int digits10() { return 0; }
};

}  // namespace Eigen
