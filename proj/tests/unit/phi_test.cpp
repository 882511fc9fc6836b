#include <gtest/gtest.h>

#include <numeric>

#include "ergolab/checks/oracles.hpp"
#include "ergolab/checks/random_sets.hpp"
#include "ergolab/errors.hpp"
#include "ergolab/phi.hpp"

namespace ergolab {
namespace {

Scalar q(long p, long r) { return Scalar::fraction(p, r); }
Scalar golden() { return Scalar::quadratic(mpq_class(-1, 2), mpq_class(1, 2), 5); }

TEST(PhiM, Examples) {
  const System odo = System::odometer(2);
  const SetClass a = SetClass::cylinders(odo.space(), 2, {0});
  EXPECT_EQ(phi_m(odo, a, 0), q(1, 4));
  EXPECT_EQ(phi_m(odo, a, 1), q(1, 2));
  EXPECT_EQ(phi_m(odo, a, 3), Scalar(1));
  EXPECT_EQ(phi_m(odo, SetClass::empty(odo.space()), 17), Scalar(0));

  const System rot = System::rotation(q(1, 4));
  const SetClass quarter = SetClass::interval(rot.space(), Scalar(0), q(1, 4));
  EXPECT_EQ(phi_m(rot, quarter, 1), q(1, 2));
  EXPECT_EQ(phi_m(rot, quarter, 3), Scalar(1));
}

TEST(PhiM, SequenceMatchesPointwiseAndIsMonotone) {
  CounterRng rng(5);
  const std::vector<System> systems{System::odometer(3), System::rotation(golden()), System::rotation(q(2, 9)),
                                    System::product(System::identity(2), System::odometer(2))};
  for (const System& T : systems) {
    for (int i = 0; i < 30; ++i) {
      const SetClass a = gen::any_set(T.space(), rng);
      const auto seq = phi_m_sequence(T, a, 20);
      ASSERT_EQ(seq[0], measure(a));
      for (std::size_t m = 0; m < seq.size(); ++m) {
        if (m + 1 < seq.size()) ASSERT_LE(seq[m], seq[m + 1]);
        if (m % 7 == 0) ASSERT_EQ(seq[m], phi_m(T, a, m));
      }
    }
  }
}

TEST(Phi, Examples) {
  const System perm = System::permutation({1, 0, 3, 2});
  const std::vector<std::size_t> zero{0};
  const PhiResult r = phi(perm, SetClass::atoms(perm.space(), zero));
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.value(), q(1, 2));
  EXPECT_EQ(r.steps_used, 1U);
  EXPECT_EQ(r.certificate, PhiCertificate::stabilized);

  const System prod = System::product(System::identity(2), System::odometer(2));
  const SetClass a = SetClass::product(prod.space(), {SetClass::full(prod.space()->fiber()), SetClass::empty(prod.space()->fiber())});
  EXPECT_EQ(phi(prod, a).value(), q(1, 2));
}

TEST(Phi, BracketWhenBudgetRunsOut) {
  const System rot = System::rotation(golden());
  const PhiResult r = phi(rot, SetClass::interval(rot.space(), Scalar(0), q(1, 1000)), 10);
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(r.upper, Scalar(1));
  EXPECT_EQ(r.lower, phi_m(rot, SetClass::interval(rot.space(), Scalar(0), q(1, 1000)), 10));
  EXPECT_EQ(r.certificate, PhiCertificate::budget_exhausted);
  EXPECT_THROW(r.value(), BudgetError);
}

TEST(Phi, ErgodicityCriterion) {
  CounterRng rng(31);
  std::vector<System> systems{System::odometer(2),
                              System::odometer(6).power(4),
                              System::odometer(3).power(2),
                              System::rotation(q(3, 10)),
                              System::product(System::identity(2), System::odometer(2)),
                              System::product(System::permutation({1, 0}), System::odometer(3)),
                              System::product(System::permutation({1, 2, 0}), System::odometer(2))};
  for (int i = 0; i < 20; ++i) systems.push_back(gen::permutation(rng, rng.between(1, 40), true));
  for (const System& T : systems) {
    const ErgodicityVerdict v = is_ergodic(T);
    if (v.ergodic) {
      for (int i = 0; i < 40; ++i) {
        const SetClass a = gen::any_set(T.space(), rng);
        if (is_null(a)) continue;
        const PhiResult r = phi(T, a);
        ASSERT_TRUE(r.exact && r.lower == Scalar(1)) << T.describe() << " " << to_text(a);
      }
    } else {
      const PhiResult r = phi(T, *v.invariant);
      ASSERT_TRUE(r.exact) << T.describe();
      ASSERT_EQ(r.lower, measure(*v.invariant));
      ASSERT_LT(r.lower, Scalar(1));
    }
  }
}

TEST(Phi, OdometerCylinderUnionsAreErgodic) {
  CounterRng rng(2);
  const System T = System::odometer(2);
  for (int i = 0; i < 200; ++i) {
    const SetClass a = gen::cylinder_union(T.space(), static_cast<std::uint32_t>(rng.between(1, 8)), rng);
    const PhiResult r = phi(T, a);
    ASSERT_TRUE(r.exact);
    ASSERT_EQ(r.lower, Scalar(1));
    ASSERT_LE(r.steps_used, 255U);
  }
}

TEST(Phi, PeriodicCaseStabilizesWithinThePeriod) {
  CounterRng rng(17);
  for (long qd = 2; qd <= 30; ++qd) {
    const System T = System::rotation(q(1, qd));
    const SetClass a = gen::any_set(T.space(), rng);
    const PhiResult r = phi(T, a);
    ASSERT_TRUE(r.exact);
    ASSERT_LE(r.steps_used, static_cast<std::size_t>(qd - 1));
    ASSERT_EQ(r.lower, phi_m(T, a, static_cast<std::size_t>(qd - 1)));
  }
  for (int i = 0; i < 30; ++i) {
    const System T = gen::permutation(rng, rng.between(1, 30), true);
    std::uint64_t lcm = 1;
    for (const auto& c : T.cycles()) lcm = std::lcm(lcm, c.size());
    const SetClass a = gen::any_set(T.space(), rng);
    const PhiResult r = phi(T, a);
    ASSERT_TRUE(r.exact);
    ASSERT_LE(r.steps_used, lcm - 1);
    ASSERT_EQ(r.lower, oracle::permutation_phi(T.map(), T.space()->weights(), oracle::atom_bits(a)));
  }
}

TEST(PhiStar, OdometerCylinders) {
  const System T = System::odometer(2);
  const PhiStarResult half = phi_star(T, SetClass::word(T.space(), "0"));
  EXPECT_TRUE(half.value.exact);
  EXPECT_EQ(half.value.lower, q(1, 2));
  ASSERT_TRUE(half.attained_at.has_value());
  EXPECT_EQ(*half.attained_at, 2U);
  EXPECT_EQ(half.value.certificate, PhiCertificate::invariance);
  ASSERT_TRUE(half.profile.k0.has_value());
  EXPECT_EQ(*half.profile.k0, 2U);
  EXPECT_EQ(phi(T, SetClass::word(T.space(), "0")).value(), Scalar(1));

  for (std::uint32_t level = 1; level <= 5; ++level) {
    const SetClass a = SetClass::cylinders(T.space(), level, {(std::uint64_t{1} << level) - 1});
    const PhiStarResult r = phi_star(T, a);
    ASSERT_TRUE(r.value.exact);
    EXPECT_EQ(r.value.lower, q(1, 1L << level));
    EXPECT_EQ(*r.attained_at, std::uint64_t{1} << level);
  }
}

TEST(PhiStar, TotallyErgodicRotation) {
  const System T = System::rotation(golden());
  const PhiStarResult r = phi_star(T, SetClass::interval(T.space(), Scalar(0), q(1, 10)), 16);
  EXPECT_TRUE(r.value.exact);
  EXPECT_EQ(r.value.lower, Scalar(1));
  EXPECT_EQ(r.value.certificate, PhiCertificate::totally_ergodic);
  EXPECT_FALSE(r.profile.k0.has_value());
  EXPECT_TRUE(r.profile.classes.empty());
}

TEST(PhiStar, ProfileOfOdometerSix) {
  const System T = System::odometer(6);
  const PhiStarResult r = phi_star(T, SetClass::word(T.space(), "1"), 12);
  EXPECT_EQ(r.profile.k0, std::optional<std::uint64_t>(2));
  EXPECT_EQ(r.profile.classes, (std::vector<std::uint64_t>{2, 3}));
  EXPECT_EQ(r.profile.kappa, 6);
  EXPECT_EQ(r.value.lower, q(1, 6));
}

// Brute-force inf over every exponent up to b^level, where it is attained.
Scalar true_phi_star(const SetClass& a) {
  const std::uint32_t level = oracle::cylinder_level(a);
  const std::uint64_t top = cylinder_count(a.space()->base(), level);
  Scalar best(1);
  for (std::uint64_t m = 1; m <= top; ++m) best = min(best, oracle::odometer_phi(a, m));
  return best;
}

TEST(PhiStar, BracketsAreSound) {
  CounterRng rng(44);
  for (unsigned base : {2U, 3U}) {
    const System T = System::odometer(base);
    for (int i = 0; i < 60; ++i) {
      const SetClass a = gen::cylinder_union(T.space(), static_cast<std::uint32_t>(rng.between(1, base == 2 ? 5 : 3)), rng);
      const Scalar truth = true_phi_star(a);
      for (std::uint64_t budget : {1U, 3U, 12U}) {
        const PhiStarResult r = phi_star(T, a, budget);
        ASSERT_LE(r.value.lower, truth) << to_text(a) << " budget " << budget;
        ASSERT_LE(truth, r.value.upper) << to_text(a) << " budget " << budget;
        if (r.value.exact) ASSERT_EQ(r.value.lower, truth);
      }
    }
  }
}

TEST(PhiStar, AgreesWithOracleOnPowersOfPermutations) {
  CounterRng rng(45);
  for (int i = 0; i < 40; ++i) {
    const System T = gen::permutation(rng, rng.between(1, 24), true);
    const SetClass a = gen::any_set(T.space(), rng);
    const auto bits = oracle::atom_bits(a);
    Scalar brute(1);
    for (std::uint64_t m = 1; m <= 64; ++m) {
      brute = min(brute, oracle::permutation_phi(T.map(), T.space()->weights(), bits, m));
    }
    const PhiStarResult r = phi_star(T, a, 64);
    // T^L is the identity for L the lcm of the cycle lengths, so the
    // infimum over all powers is mu(A) even when L exceeds the brute range.
    ASSERT_TRUE(r.value.exact);
    ASSERT_EQ(r.value.lower, measure(a));
    ASSERT_LE(r.value.lower, brute);
    if (r.attained_at <= 64) ASSERT_EQ(r.value.lower, brute);
  }
}

void expect_valid_decomposition(const System& T, const Decomposition& d) {
  Scalar total;
  SetClass seen = SetClass::empty(T.space());
  for (const Component& c : d.components) {
    EXPECT_EQ(apply(T, c.set), c.set) << T.describe();
    EXPECT_EQ(measure(c.set), c.measure);
    EXPECT_TRUE(is_null(intersect(seen, c.set))) << T.describe();
    seen = unite(seen, c.set);
    total += c.measure;
  }
  EXPECT_EQ(total, Scalar(1)) << T.describe();
}

TEST(Decomposition, Examples) {
  const System perm = System::permutation({1, 0, 3, 2});
  const Decomposition d = ergodic_decomposition(perm);
  ASSERT_EQ(d.components.size(), 2U);
  const std::vector<std::size_t> first{0, 1};
  EXPECT_EQ(d.components[0].set, SetClass::atoms(perm.space(), first));
  EXPECT_EQ(d.components[0].measure, q(1, 2));

  const System odo2 = System::odometer(2).power(2);
  const Decomposition e = ergodic_decomposition(odo2);
  ASSERT_EQ(e.components.size(), 2U);
  EXPECT_EQ(e.components[0].set, SetClass::word(odo2.space(), "0"));
  EXPECT_EQ(e.components[1].set, SetClass::word(odo2.space(), "1"));

  // +4 on base 6: residues modulo 4 survive, so four pieces of 1/4.
  const System odo6 = System::odometer(6).power(4);
  const Decomposition f = ergodic_decomposition(odo6);
  ASSERT_EQ(f.components.size(), 4U);
  for (const Component& c : f.components) {
    EXPECT_EQ(c.measure, q(1, 4));
    EXPECT_TRUE(is_ergodic(odo6).ergodic == false);
  }
}

TEST(Decomposition, ComponentsAreInvariantDisjointAndExhaustive) {
  CounterRng rng(46);
  std::vector<System> systems{System::odometer(2),
                              System::odometer(6).power(4),
                              System::odometer(6).power(9),
                              System::odometer(10).power(8),
                              System::rotation(golden()),
                              System::rotation(q(2, 7)),
                              System::product(System::identity(3), System::odometer(2)),
                              System::product(System::permutation({1, 0, 2}), System::odometer(2).power(3))};
  for (int i = 0; i < 20; ++i) systems.push_back(gen::permutation(rng, rng.between(1, 50), true).power(rng.between(1, 4)));
  for (const System& T : systems) expect_valid_decomposition(T, ergodic_decomposition(T));
  EXPECT_EQ(ergodic_decomposition(System::rotation(q(2, 7))).orbit_granularity, std::optional<std::uint64_t>(7));
}

TEST(Decomposition, ComponentRestrictionsAreErgodic) {
  // On each component of an odometer power, phi of any non-null subset fills the component.
  const System T = System::odometer(6).power(4);
  CounterRng rng(47);
  for (const Component& c : ergodic_decomposition(T).components) {
    for (int i = 0; i < 10; ++i) {
      const SetClass a = intersect(c.set, gen::any_set(T.space(), rng));
      if (is_null(a)) continue;
      ASSERT_EQ(phi(T, a).value(), c.measure);
    }
  }
}

}  // namespace
}  // namespace ergolab
