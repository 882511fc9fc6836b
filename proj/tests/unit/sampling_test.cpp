#include <gtest/gtest.h>

#include <set>

#include "ergolab/sampling.hpp"

namespace ergolab {
namespace {

Scalar q(long p, long r) { return Scalar::fraction(p, r); }

TEST(CounterRng, StreamIsFixedByTheFormula) {
  CounterRng rng(42);
  const std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;
  for (std::uint64_t i = 0; i < 5; ++i) EXPECT_EQ(rng.next(), splitmix64(42 + (i + 1) * golden_gamma));
  EXPECT_EQ(rng.counter(), 5U);
  // Reference value of the SplitMix64 finalizer.
  EXPECT_EQ(splitmix64(0x9E3779B97F4A7C15ULL), 0xE220A8397B1DCDAFULL);
}

TEST(CounterRng, BoundedDrawsStayInRange) {
  CounterRng rng(1);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t x = rng.below(7);
    ASSERT_LT(x, 7U);
    seen.insert(x);
    const std::uint64_t y = rng.between(3, 5);
    ASSERT_GE(y, 3U);
    ASSERT_LE(y, 5U);
  }
  EXPECT_EQ(seen.size(), 7U);
}

TEST(Perturb, StaysWithinRadius) {
  CounterRng rng(5);
  const std::vector<SpaceRef> spaces{Space::cylinders(2), Space::cylinders(7), Space::circle(),
                                     Space::uniform_atoms(300), Space::product({q(1, 4), q(3, 4)}, Space::cylinders(3))};
  for (const SpaceRef& space : spaces) {
    for (int i = 0; i < 200; ++i) {
      const SetClass a = random_set(space, SetGrain{}, rng);
      for (const Scalar& r : {q(1, 2), q(1, 32), q(1, 1000)}) {
        const SetClass b = perturb(a, r, rng);
        ASSERT_LT(distance(a, b), r) << space->describe();
      }
    }
  }
}

TEST(Perturb, ReturnsThePointWhenNothingFits) {
  CounterRng rng(6);
  const SpaceRef atoms = Space::uniform_atoms(4);
  const SetClass a = random_set(atoms, SetGrain{}, rng);
  EXPECT_EQ(perturb(a, q(1, 8), rng), a);
}

TEST(RandomSet, Deterministic) {
  CounterRng x(77);
  CounterRng y(77);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(random_set(Space::circle(), SetGrain{}, x), random_set(Space::circle(), SetGrain{}, y));
  }
}

}  // namespace
}  // namespace ergolab
