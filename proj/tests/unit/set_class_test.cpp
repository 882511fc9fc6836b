#include <gtest/gtest.h>

#include <algorithm>

#include "ergolab/checks/random_sets.hpp"
#include "ergolab/errors.hpp"
#include "ergolab/parse.hpp"
#include "ergolab/sampling.hpp"
#include "ergolab/set_class.hpp"

namespace ergolab {
namespace {

Scalar q(long p, long r) { return Scalar::fraction(p, r); }

SpaceRef binary() { return Space::cylinders(2); }

TEST(Normalize, MergesAdjacentIntervals) {
  const SpaceRef circle = Space::circle();
  const SetClass s = SetClass::raw(circle, IntervalSet{{{Scalar(0), q(1, 2)}, {q(1, 2), Scalar(1)}}});
  const SetClass n = normalize(s);
  ASSERT_EQ(n.as<IntervalSet>().intervals.size(), 1U);
  EXPECT_EQ(n, SetClass::full(circle));
}

TEST(Normalize, FullCylinderLevelPrunesToLevelZero) {
  const SetClass s = SetClass::raw(binary(), CylinderSet{2, {0, 1, 2, 3}});
  const SetClass n = normalize(s);
  EXPECT_EQ(n.as<CylinderSet>().level, 0U);
  EXPECT_EQ(n.as<CylinderSet>().indices, std::vector<std::uint64_t>{0});
  EXPECT_TRUE(is_full(n));
}

TEST(Normalize, EmptyMaskIsTheNullClass) {
  const SpaceRef atoms = Space::uniform_atoms(4);
  const SetClass s = SetClass::raw(atoms, AtomSet{boost::dynamic_bitset<>(4)});
  EXPECT_TRUE(is_null(s));
  EXPECT_EQ(normalize(s), SetClass::empty(atoms));
}

TEST(Normalize, DropsDegenerateIntervals) {
  const SpaceRef circle = Space::circle();
  const SetClass s = SetClass::raw(circle, IntervalSet{{{q(1, 3), q(1, 3)}}});
  EXPECT_EQ(normalize(s), SetClass::empty(circle));
}

TEST(Normalize, StructuralErrors) {
  const SpaceRef circle = Space::circle();
  EXPECT_THROW(SetClass::raw(circle, IntervalSet{{{q(1, 2), q(1, 3)}}}), StructuralError);
  EXPECT_THROW(SetClass::raw(circle, IntervalSet{{{q(-1, 2), q(1, 3)}}}), StructuralError);
  EXPECT_THROW(SetClass::raw(binary(), CylinderSet{2, {4}}), StructuralError);
  EXPECT_THROW(SetClass::raw(Space::uniform_atoms(3), AtomSet{boost::dynamic_bitset<>(4)}), StructuralError);
}

TEST(BooleanOps, SymdiffOfNestedCylinders) {
  const SetClass a = SetClass::word(binary(), "0");
  const SetClass b = SetClass::word(binary(), "00");
  EXPECT_EQ(symdiff(a, b), SetClass::word(binary(), "01"));
  // Little-endian: the word "01" has index 0 + 1 * 2.
  EXPECT_EQ(SetClass::word(binary(), "01").as<CylinderSet>().indices, std::vector<std::uint64_t>{2});
}

TEST(BooleanOps, ComplementOfInterval) {
  const SpaceRef circle = Space::circle();
  const SetClass c = complement(SetClass::interval(circle, q(1, 3), q(1, 2)));
  const auto& ivs = c.as<IntervalSet>().intervals;
  ASSERT_EQ(ivs.size(), 2U);
  EXPECT_EQ(ivs[0].lo, Scalar(0));
  EXPECT_EQ(ivs[0].hi, q(1, 3));
  EXPECT_EQ(ivs[1].lo, q(1, 2));
  EXPECT_EQ(ivs[1].hi, Scalar(1));
}

TEST(BooleanOps, UnionWithEmptyIsIdentity) {
  CounterRng rng(1);
  for (const SpaceRef& space : {binary(), Space::circle(), Space::uniform_atoms(5)}) {
    const SetClass a = gen::any_set(space, rng);
    EXPECT_EQ(unite(a, SetClass::empty(space)), a);
  }
}

TEST(BooleanOps, MismatchedSpacesAreUsageErrors) {
  EXPECT_THROW(unite(SetClass::full(binary()), SetClass::full(Space::cylinders(3))), UsageError);
  EXPECT_THROW(distance(SetClass::full(binary()), SetClass::full(Space::circle())), UsageError);
}

TEST(Measure, Examples) {
  EXPECT_EQ(measure(SetClass::cylinders(binary(), 3, {0, 5})), q(1, 4));
  const Scalar g = Scalar::quadratic(mpq_class(-1, 2), mpq_class(1, 2), 5);
  EXPECT_EQ(measure(SetClass::interval(Space::circle(5), Scalar(0), g)), g);
  const SpaceRef atoms = Space::atoms({q(1, 2), q(1, 4), q(1, 8), q(1, 8)});
  const std::vector<std::size_t> members{0, 2};
  EXPECT_EQ(measure(SetClass::atoms(atoms, members)), q(5, 8));
}

TEST(Distance, Examples) {
  const SetClass zero = SetClass::word(binary(), "0");
  EXPECT_EQ(distance(zero, unite(SetClass::word(binary(), "00"), SetClass::word(binary(), "01"))), Scalar(0));
  EXPECT_EQ(distance(zero, SetClass::empty(binary())), q(1, 2));
  EXPECT_EQ(distance(zero, SetClass::word(binary(), "1")), Scalar(1));
}

TEST(IsNull, Examples) {
  EXPECT_TRUE(is_null(SetClass::empty(binary())));
  EXPECT_FALSE(is_null(SetClass::cylinders(binary(), 10, {17})));
  EXPECT_TRUE(is_null(SetClass::intervals(Space::circle(), {})));
}

TEST(Spaces, AtomWeightsMustSumToOne) {
  EXPECT_THROW(Space::atoms({q(1, 2), q(1, 3)}), StructuralError);
  EXPECT_THROW(Space::atoms({Scalar(1), Scalar(0)}), StructuralError);
  EXPECT_THROW(Space::cylinders(1), StructuralError);
  EXPECT_NO_THROW(Space::atoms({q(1, 3), q(2, 3)}));
}

// Raw, deliberately messy inputs for each representation.
SetClass messy(const SpaceRef& space, CounterRng& rng) {
  switch (space->kind()) {
    case SpaceKind::atoms: {
      boost::dynamic_bitset<> mask(space->atom_count());
      for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = rng.coin();
      return SetClass::raw(space, AtomSet{mask});
    }
    case SpaceKind::cylinders: {
      const auto level = static_cast<std::uint32_t>(rng.below(6));
      const std::uint64_t count = cylinder_count(space->base(), level);
      std::vector<std::uint64_t> indices;
      const std::uint64_t draws = rng.below(2 * count + 1);
      for (std::uint64_t i = 0; i < draws; ++i) indices.push_back(rng.below(count));
      return SetClass::raw(space, CylinderSet{level, indices});
    }
    case SpaceKind::circle: {
      std::vector<Interval> ivs;
      const std::uint64_t n = rng.below(6);
      for (std::uint64_t i = 0; i < n; ++i) {
        auto a = static_cast<long>(rng.below(17));
        auto b = static_cast<long>(rng.below(17));
        if (b < a) std::swap(a, b);
        ivs.push_back({q(a, 16), q(b, 16)});
      }
      return SetClass::raw(space, IntervalSet{ivs});
    }
    case SpaceKind::product: {
      ProductSet p;
      for (std::size_t i = 0; i < space->atom_count(); ++i) p.fibers.push_back(messy(space->fiber(), rng));
      return SetClass::raw(space, p);
    }
  }
  return SetClass::empty(space);
}

// Measure of a messy set computed without normalize: grid cells or indicator bits.
Scalar brute_measure(const SetClass& s) {
  const Space& space = *s.space();
  switch (space.kind()) {
    case SpaceKind::atoms: {
      Scalar total;
      const auto& mask = s.as<AtomSet>().mask;
      for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) total += space.weights()[i];
      }
      return total;
    }
    case SpaceKind::cylinders: {
      const auto& c = s.as<CylinderSet>();
      std::vector<std::uint64_t> unique = c.indices;
      std::sort(unique.begin(), unique.end());
      unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
      return Scalar::fraction(unique.size(), cylinder_count(space.base(), c.level));
    }
    case SpaceKind::circle: {
      std::vector<bool> cells(16, false);
      for (const Interval& iv : s.as<IntervalSet>().intervals) {
        for (int j = 0; j < 16; ++j) {
          if (!(q(j, 16) < iv.lo) && !(iv.hi < q(j + 1, 16))) cells[j] = true;
        }
      }
      return Scalar::fraction(std::count(cells.begin(), cells.end(), true), 16);
    }
    case SpaceKind::product: {
      Scalar total;
      const auto& fibers = s.as<ProductSet>().fibers;
      for (std::size_t i = 0; i < fibers.size(); ++i) total += space.weights()[i] * brute_measure(fibers[i]);
      return total;
    }
  }
  return {};
}

class PerVariant : public ::testing::TestWithParam<int> {
 protected:
  SpaceRef space() const {
    switch (GetParam()) {
      case 0:
        return Space::atoms({q(1, 2), q(1, 8), q(1, 8), q(1, 16), q(3, 16)});
      case 1:
        return Space::cylinders(2);
      case 2:
        return Space::cylinders(3);
      case 3:
        return Space::circle();
      default:
        return Space::product({q(1, 3), q(2, 3)}, Space::cylinders(2));
    }
  }
};

TEST_P(PerVariant, NormalizeIsIdempotentAndMeasurePreserving) {
  CounterRng rng(100 + GetParam());
  const SpaceRef s = space();
  for (int i = 0; i < 10000; ++i) {
    const SetClass raw = messy(s, rng);
    const SetClass n = normalize(raw);
    ASSERT_EQ(normalize(n), n);
    ASSERT_TRUE(n.is_canonical());
    ASSERT_EQ(measure(n), brute_measure(raw)) << to_text(n);
  }
}

TEST_P(PerVariant, BooleanAlgebraLaws) {
  CounterRng rng(200 + GetParam());
  const SpaceRef s = space();
  for (int i = 0; i < 300; ++i) {
    const SetClass a = gen::any_set(s, rng);
    const SetClass b = gen::any_set(s, rng);
    const SetClass c = gen::any_set(s, rng);
    ASSERT_EQ(complement(unite(a, b)), intersect(complement(a), complement(b)));
    ASSERT_EQ(complement(intersect(a, b)), unite(complement(a), complement(b)));
    ASSERT_EQ(intersect(a, unite(b, c)), unite(intersect(a, b), intersect(a, c)));
    ASSERT_EQ(unite(a, intersect(b, c)), intersect(unite(a, b), unite(a, c)));
    ASSERT_EQ(complement(complement(a)), a);
    ASSERT_EQ(symdiff(a, b), unite(difference(a, b), difference(b, a)));
    ASSERT_EQ(measure(unite(a, b)) + measure(intersect(a, b)), measure(a) + measure(b));
    ASSERT_LE(distance(a, c), distance(a, b) + distance(b, c));
    ASSERT_EQ(distance(a, b), measure(symdiff(a, b)));
    ASSERT_EQ(is_subset(a, b), is_null(difference(a, b)));
  }
}

TEST_P(PerVariant, TextRoundTrips) {
  CounterRng rng(300 + GetParam());
  const SpaceRef s = space();
  for (int i = 0; i < 300; ++i) {
    const SetClass a = gen::any_set(s, rng);
    ASSERT_EQ(parse_set_expr(to_text(a), s), a) << to_text(a);
  }
}

INSTANTIATE_TEST_SUITE_P(Sets, PerVariant, ::testing::Range(0, 5));

TEST(QuadraticIntervals, AlgebraInOneField) {
  const SpaceRef circle = Space::circle(5);
  const Scalar g = Scalar::quadratic(mpq_class(-1, 2), mpq_class(1, 2), 5);
  const SetClass a = SetClass::interval(circle, Scalar(0), g);
  const SetClass b = SetClass::interval(circle, q(1, 2), Scalar(1));
  EXPECT_EQ(measure(intersect(a, b)), g - q(1, 2));
  EXPECT_EQ(measure(unite(a, b)), Scalar(1));
  EXPECT_THROW(SetClass::interval(Space::circle(), Scalar(0), g), StructuralError);
}

}  // namespace
}  // namespace ergolab
