#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace ergolab {

/// Exact real number: either a rational, or a + b*sqrt(D) with rational a, b
/// and a squarefree radicand D >= 2.
///
/// A value with b == 0 is always stored in rational form (radicand 0).
/// Arithmetic between two quadratic values requires the same radicand;
/// mixing fields throws UsageError. Ordering is decided with integer
/// arithmetic only.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(long value) : a_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(long long value);          // NOLINT(google-explicit-constructor)
  Scalar(unsigned long value);      // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class value);
  explicit Scalar(const mpz_class& value) : a_(value) {}

  static Scalar fraction(const mpz_class& numerator, const mpz_class& denominator);
  /// a + b*sqrt(d). `d` must be positive; square factors are pulled out.
  static Scalar quadratic(const mpq_class& a, const mpq_class& b, std::int64_t d);
  static Scalar sqrt(std::int64_t d) { return quadratic(0, 1, d); }

  bool is_rational() const noexcept { return radicand_ == 0; }
  const mpq_class& rational_part() const noexcept { return a_; }
  const mpq_class& irrational_part() const noexcept { return b_; }
  /// 0 for rationals.
  std::int64_t radicand() const noexcept { return radicand_; }

  int sign() const;
  bool is_zero() const { return radicand_ == 0 && sgn(a_) == 0; }

  mpz_class floor() const;
  /// x - floor(x), in [0, 1).
  Scalar frac() const;
  Scalar abs() const { return sign() < 0 ? -*this : *this; }
  Scalar reciprocal() const;

  double to_double() const;
  /// Exact text: "p", "p/q" or "(a+b*sqrt(D))". Reparses with parse_scalar.
  std::string to_string() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  friend bool operator==(const Scalar& lhs, const Scalar& rhs);
  friend std::strong_ordering operator<=>(const Scalar& lhs, const Scalar& rhs);

 private:
  Scalar(mpq_class a, mpq_class b, std::int64_t radicand);
  void canonicalize();

  mpq_class a_{0};
  mpq_class b_{0};
  std::int64_t radicand_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& value);

/// Radicand shared by both operands; throws UsageError for distinct fields.
std::int64_t common_field(std::int64_t lhs, std::int64_t rhs);

inline Scalar min(const Scalar& lhs, const Scalar& rhs) { return rhs < lhs ? rhs : lhs; }
inline Scalar max(const Scalar& lhs, const Scalar& rhs) { return lhs < rhs ? rhs : lhs; }

}  // namespace ergolab
