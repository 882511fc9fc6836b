#include <gtest/gtest.h>

#include "ergolab/errors.hpp"
#include "ergolab/parse.hpp"
#include "ergolab/sampling.hpp"
#include "ergolab/scalar.hpp"

namespace ergolab {
namespace {

Scalar golden() { return Scalar::quadratic(mpq_class(-1, 2), mpq_class(1, 2), 5); }

TEST(Scalar, RationalsAreReduced) {
  EXPECT_EQ(Scalar::fraction(6, 16).to_string(), "3/8");
  EXPECT_EQ((Scalar::fraction(1, 3) + Scalar::fraction(1, 6)).to_string(), "1/2");
  EXPECT_TRUE(Scalar::fraction(0, 5).is_zero());
  EXPECT_THROW(Scalar::fraction(1, 0), UsageError);
}

TEST(Scalar, GoldenRatioConjugateIdentities) {
  const Scalar g = golden();
  EXPECT_FALSE(g.is_rational());
  EXPECT_EQ(g * g + g, Scalar(1));
  EXPECT_EQ(g.reciprocal(), g + Scalar(1));
  EXPECT_LT(Scalar::fraction(3, 5), g);
  EXPECT_LT(g, Scalar::fraction(5, 8));
  EXPECT_EQ(g.floor(), 0);
  EXPECT_EQ((g * Scalar(7)).floor(), 4);
  EXPECT_EQ((Scalar(3) * g).frac(), Scalar(3) * g - Scalar(1));
  EXPECT_EQ((-g).floor(), -1);
}

TEST(Scalar, SquareFactorsArePulledOut) {
  EXPECT_EQ(Scalar::sqrt(8), Scalar(2) * Scalar::sqrt(2));
  EXPECT_EQ(Scalar::sqrt(9), Scalar(3));
  EXPECT_EQ(Scalar::sqrt(12).radicand(), 3);
  EXPECT_EQ((Scalar::sqrt(2) * Scalar::sqrt(2)), Scalar(2));
}

TEST(Scalar, MixedFieldsAreRejected) {
  EXPECT_THROW(Scalar::sqrt(2) + Scalar::sqrt(3), UsageError);
  EXPECT_THROW((void)(Scalar::sqrt(2) < Scalar::sqrt(3)), UsageError);
  EXPECT_NO_THROW(Scalar::sqrt(2) + Scalar(1));
}

TEST(Scalar, OrderingIsExactNearTies) {
  // sqrt(2) lies between consecutive continued-fraction convergents.
  const Scalar r2 = Scalar::sqrt(2);
  EXPECT_LT(Scalar::fraction(577, 408) - r2, Scalar::fraction(1, 100000));
  EXPECT_GT(Scalar::fraction(577, 408), r2);
  EXPECT_LT(Scalar::fraction(1393, 985), r2);
  EXPECT_EQ((r2 - Scalar::fraction(1393, 985)).sign(), 1);
}

TEST(Scalar, FloorMatchesDoubleAwayFromIntegers) {
  CounterRng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto a = static_cast<long>(rng.below(2001)) - 1000;
    const auto b = static_cast<long>(rng.below(2001)) - 1000;
    const auto q = static_cast<long>(rng.between(1, 50));
    const Scalar x = Scalar::quadratic(mpq_class(a, q), mpq_class(b, q), 7);
    const double d = x.to_double();
    const Scalar f(x.floor());
    EXPECT_LE(f, x);
    EXPECT_LT(x, f + Scalar(1));
    if (std::abs(d - std::round(d)) > 1e-9) EXPECT_EQ(x.floor().get_d(), std::floor(d));
  }
}

TEST(Scalar, TextRoundTrips) {
  CounterRng rng(9);
  for (int i = 0; i < 500; ++i) {
    const auto a = static_cast<long>(rng.below(200)) - 100;
    const auto b = static_cast<long>(rng.below(200)) - 100;
    const auto q = static_cast<long>(rng.between(1, 30));
    const Scalar x = Scalar::quadratic(mpq_class(a, q), mpq_class(b, q), 5);
    EXPECT_EQ(parse_scalar(x.to_string()), x) << x.to_string();
  }
  EXPECT_EQ(golden().to_string(), "(-1/2+1/2*sqrt(5))");
}

}  // namespace
}  // namespace ergolab
