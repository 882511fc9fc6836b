#include <map>
#include <numeric>

#include "ergolab/errors.hpp"
#include "ergolab/system.hpp"

namespace ergolab {
namespace {

using ProfileMap = std::map<std::uint64_t, Scalar>;

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t g = std::gcd(a, b);
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a / g, b, &out)) throw UsageError("period lcm overflows 64 bits");
  return out;
}

std::int64_t as_signed(std::uint64_t k) {
  if (k > static_cast<std::uint64_t>(INT64_MAX)) throw UsageError("exponent overflows");
  return static_cast<std::int64_t>(k);
}

// Rotation angle of R_alpha^k, reduced mod 1.
Scalar rotation_step(const System& rotation, std::uint64_t k) {
  return (Scalar(static_cast<unsigned long>(k)) * rotation.alpha()).frac();
}

PeriodicProfile to_profile(const ProfileMap& periods, Scalar aperiodic) {
  PeriodicProfile out;
  for (const auto& [period, mass] : periods) {
    if (!mass.is_zero()) out.periodic.emplace_back(period, mass);
  }
  out.aperiodic = std::move(aperiodic);
  return out;
}

PeriodicProfile profile_of_root(const System& R, std::uint64_t k) {
  ProfileMap periods;
  switch (R.kind()) {
    case SystemKind::permutation: {
      const auto& weights = R.space()->weights();
      for (const auto& cycle : R.cycles()) {
        const std::uint64_t length = cycle.size();
        const std::uint64_t period = length / std::gcd(length, k);
        periods[period] += weights[cycle.front()] * Scalar(static_cast<unsigned long>(length));
      }
      return to_profile(periods, Scalar(0));
    }
    case SystemKind::odometer:
      return to_profile(periods, Scalar(1));
    case SystemKind::rotation: {
      const Scalar step = rotation_step(R, k);
      if (!step.is_rational()) return to_profile(periods, Scalar(1));
      const mpz_class denominator = step.rational_part().get_den();
      periods[denominator.get_ui()] = Scalar(1);
      return to_profile(periods, Scalar(0));
    }
    case SystemKind::product: {
      const PeriodicProfile base = profile_of_root(R.finite(), k);
      const PeriodicProfile fiber = periodic_profile(R.fiber().power(k));
      Scalar aperiodic;
      for (const auto& [cycle_period, cycle_mass] : base.periodic) {
        for (const auto& [fiber_period, fiber_mass] : fiber.periodic) {
          periods[checked_lcm(cycle_period, fiber_period)] += cycle_mass * fiber_mass;
        }
        aperiodic += cycle_mass * fiber.aperiodic;
      }
      return to_profile(periods, std::move(aperiodic));
    }
    case SystemKind::power:
      break;
  }
  throw UsageError("unexpected nested power");
}

// Atoms visited by atom `start` under pi^k.
boost::dynamic_bitset<> orbit_of(const System& permutation, std::size_t start, std::uint64_t k) {
  boost::dynamic_bitset<> mask(permutation.map().size());
  const std::int64_t step = as_signed(k);
  for (std::size_t i = start; !mask.test(i); i = permutation.permute(i, step)) mask.set(i);
  return mask;
}

ErgodicityVerdict verdict_of_root(const System& R, std::uint64_t k) {
  switch (R.kind()) {
    case SystemKind::permutation: {
      auto orbit = orbit_of(R, 0, k);
      if (orbit.all()) return {true, "permutation: single cycle covering all atoms", std::nullopt};
      return {false, "permutation: several cycles",
              SetClass::raw(R.space(), AtomSet{std::move(orbit)})};
    }
    case SystemKind::odometer: {
      const std::uint64_t g = std::gcd<std::uint64_t>(k, R.base());
      if (g == 1) return {true, "odometer power: gcd(k, b) = 1", std::nullopt};
      std::vector<std::uint64_t> digits;
      for (std::uint64_t d = 0; d < R.base(); d += g) digits.push_back(d);
      return {false, "odometer power: gcd(k, b) = " + std::to_string(g),
              SetClass::cylinders(R.space(), 1, std::move(digits))};
    }
    case SystemKind::rotation: {
      const Scalar step = rotation_step(R, k);
      if (!step.is_rational()) return {true, "rotation: irrational angle", std::nullopt};
      const mpz_class q = step.rational_part().get_den();
      std::vector<Interval> pieces;
      if (q == 1) {
        pieces.push_back({Scalar(0), Scalar::fraction(1, 2)});
      } else {
        const Scalar width = Scalar::fraction(1, q);
        const Scalar half = Scalar::fraction(1, 2 * q);
        for (mpz_class j = 0; j < q; ++j) {
          Scalar lo = Scalar(j) * width;
          pieces.push_back({lo, lo + half});
        }
      }
      return {false, "rotation: rational angle with denominator " + q.get_str(),
              SetClass::intervals(R.space(), std::move(pieces))};
    }
    case SystemKind::product: {
      const System& finite = R.finite();
      auto orbit = orbit_of(finite, 0, k);
      if (!orbit.all()) {
        std::vector<SetClass> fibers;
        for (std::size_t i = 0; i < orbit.size(); ++i) {
          fibers.push_back(orbit.test(i) ? SetClass::full(R.fiber().space()) : SetClass::empty(R.fiber().space()));
        }
        return {false, "product: finite part has several cycles",
                SetClass::product(R.space(), std::move(fibers))};
      }
      const std::uint64_t c = orbit.size();
      std::uint64_t kc = 0;
      if (__builtin_mul_overflow(k, c, &kc)) throw UsageError("exponent overflows");
      ErgodicityVerdict fiber = is_ergodic(R.fiber().power(kc));
      if (fiber.ergodic) {
        return {true, "product: single " + std::to_string(c) + "-cycle, fiber power ergodic", std::nullopt};
      }
      // Lift the S^{kc}-invariant fiber set F along the cycle: S^{kt} F over (pi^k)^t(0).
      std::vector<SetClass> fibers(c, SetClass::empty(R.fiber().space()));
      const std::int64_t step = as_signed(k);
      std::size_t atom = 0;
      for (std::uint64_t t = 0; t < c; ++t) {
        fibers[atom] = apply_power(R.fiber(), *fiber.invariant, as_signed(t) * step);
        atom = finite.permute(atom, step);
      }
      return {false, "product: fiber power not ergodic (" + fiber.rule + ")",
              SetClass::product(R.space(), std::move(fibers))};
    }
    case SystemKind::power:
      break;
  }
  throw UsageError("unexpected nested power");
}

}  // namespace

PeriodicProfile periodic_profile(const System& T) {
  auto [root, k] = T.root();
  return profile_of_root(root, k);
}

ErgodicityVerdict is_ergodic(const System& T) {
  auto [root, k] = T.root();
  return verdict_of_root(root, k);
}

std::optional<SetClass> invariant_set(const System& T) { return is_ergodic(T).invariant; }

bool is_totally_ergodic(const System& T) {
  switch (T.kind()) {
    case SystemKind::permutation:
      return T.map().size() == 1;
    case SystemKind::odometer:
      return false;
    case SystemKind::rotation:
      return !T.alpha().is_rational();
    case SystemKind::product:
      return T.finite().map().size() == 1 && is_totally_ergodic(T.fiber());
    case SystemKind::power:
      return is_totally_ergodic(T.power_base());
  }
  return false;
}

}  // namespace ergolab
