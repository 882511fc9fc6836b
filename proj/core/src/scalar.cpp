#include "ergolab/scalar.hpp"

#include <cmath>
#include <ostream>
#include <utility>

#include "ergolab/errors.hpp"

namespace ergolab {
namespace {

mpz_class from_int64(long long value) {
  mpz_class out;
  unsigned long long magnitude = value < 0 ? 0ULL - static_cast<unsigned long long>(value)
                                           : static_cast<unsigned long long>(value);
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(magnitude), 0, 0, &magnitude);
  if (value < 0) out = -out;
  return out;
}

// Splits d = s^2 * f with f squarefree; returns {s, f}.
std::pair<std::int64_t, std::int64_t> split_square(std::int64_t d) {
  std::int64_t square = 1;
  std::int64_t free = d;
  for (std::int64_t p = 2; p * p <= free; ++p) {
    while (free % (p * p) == 0) {
      free /= p * p;
      square *= p;
    }
  }
  return {square, free};
}

}  // namespace

std::int64_t common_field(std::int64_t lhs, std::int64_t rhs) {
  if (lhs == 0) return rhs;
  if (rhs == 0 || lhs == rhs) return lhs;
  throw UsageError("scalars from different fields Q(sqrt(" + std::to_string(lhs) +
                   ")) and Q(sqrt(" + std::to_string(rhs) + "))");
}

Scalar::Scalar(long long value) : a_(from_int64(value)) {}

Scalar::Scalar(unsigned long value) : a_(value) {}

Scalar::Scalar(mpq_class value) : a_(std::move(value)) { a_.canonicalize(); }

Scalar::Scalar(mpq_class a, mpq_class b, std::int64_t radicand)
    : a_(std::move(a)), b_(std::move(b)), radicand_(radicand) {
  canonicalize();
}

void Scalar::canonicalize() {
  a_.canonicalize();
  b_.canonicalize();
  if (radicand_ == 0 || sgn(b_) == 0) {
    b_ = 0;
    radicand_ = 0;
  }
}

Scalar Scalar::fraction(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) throw UsageError("zero denominator");
  return Scalar(mpq_class(numerator, denominator));
}

Scalar Scalar::quadratic(const mpq_class& a, const mpq_class& b, std::int64_t d) {
  if (d <= 0) throw StructuralError("radicand must be positive, got " + std::to_string(d));
  auto [square, free] = split_square(d);
  if (free == 1) return Scalar(mpq_class(a + b * square));
  return Scalar(a, b * square, free);
}

int Scalar::sign() const {
  if (radicand_ == 0) return sgn(a_);
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sa >= 0 && sb >= 0) return 1;
  if (sa <= 0 && sb <= 0) return -1;
  // Opposite signs: compare a^2 with b^2 * D.
  const mpq_class lhs = a_ * a_;
  const mpq_class rhs = b_ * b_ * radicand_;
  const int c = cmp(lhs, rhs);
  return sa > 0 ? c : -c;
}

mpz_class Scalar::floor() const {
  mpz_class base;
  mpz_fdiv_q(base.get_mpz_t(), a_.get_num_mpz_t(), a_.get_den_mpz_t());
  if (radicand_ == 0) return base;
  // |b| sqrt(D) = sqrt(p^2 D) / q, and floor(sqrt(N)/q) = floor(isqrt(N)/q).
  const mpz_class p = ::abs(b_.get_num());
  const mpz_class& q = b_.get_den();
  mpz_class n = p * p * radicand_;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  mpz_class g;
  mpz_fdiv_q(g.get_mpz_t(), root.get_mpz_t(), q.get_mpz_t());
  mpz_class estimate = base + (sgn(b_) > 0 ? g : mpz_class(-g - 1));
  // estimate <= x < estimate + 3
  while (Scalar(mpz_class(estimate + 1)) <= *this) ++estimate;
  return estimate;
}

Scalar Scalar::frac() const { return *this - Scalar(floor()); }

Scalar Scalar::reciprocal() const {
  if (is_zero()) throw UsageError("division by zero");
  if (radicand_ == 0) return Scalar(mpq_class(1) / a_);
  const mpq_class norm = a_ * a_ - b_ * b_ * radicand_;
  return Scalar(mpq_class(a_ / norm), mpq_class(-b_ / norm), radicand_);
}

double Scalar::to_double() const {
  double out = a_.get_d();
  if (radicand_ != 0) out += b_.get_d() * std::sqrt(static_cast<double>(radicand_));
  return out;
}

std::string Scalar::to_string() const {
  if (radicand_ == 0) return a_.get_str();
  std::string out = "(";
  if (sgn(a_) != 0) out += a_.get_str();
  if (sgn(b_) < 0) {
    out += "-";
  } else if (sgn(a_) != 0) {
    out += "+";
  }
  out += mpq_class(::abs(b_)).get_str();
  out += "*sqrt(" + std::to_string(radicand_) + "))";
  return out;
}

Scalar Scalar::operator-() const { return Scalar(mpq_class(-a_), mpq_class(-b_), radicand_); }

Scalar& Scalar::operator+=(const Scalar& rhs) {
  radicand_ = common_field(radicand_, rhs.radicand_);
  a_ += rhs.a_;
  b_ += rhs.b_;
  canonicalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  radicand_ = common_field(radicand_, rhs.radicand_);
  a_ -= rhs.a_;
  b_ -= rhs.b_;
  canonicalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  const std::int64_t d = common_field(radicand_, rhs.radicand_);
  mpq_class a = a_ * rhs.a_ + b_ * rhs.b_ * d;
  mpq_class b = a_ * rhs.b_ + b_ * rhs.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  radicand_ = d;
  canonicalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  common_field(radicand_, rhs.radicand_);
  return *this *= rhs.reciprocal();
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  return lhs.radicand_ == rhs.radicand_ && lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_;
}

std::strong_ordering operator<=>(const Scalar& lhs, const Scalar& rhs) {
  if (lhs.radicand_ == 0 && rhs.radicand_ == 0) {
    const int c = cmp(lhs.a_, rhs.a_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  const int s = (lhs - rhs).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Scalar& value) {
  return os << value.to_string();
}

}  // namespace ergolab
