#include <numeric>

#include "ergolab/errors.hpp"
#include "ergolab/phi.hpp"

namespace ergolab {
namespace {

std::int64_t as_signed(std::uint64_t k) {
  if (k > static_cast<std::uint64_t>(INT64_MAX)) throw UsageError("exponent overflows");
  return static_cast<std::int64_t>(k);
}

// The part of k built from primes dividing b.
std::uint64_t base_part(std::uint64_t k, unsigned base) {
  std::uint64_t out = 1;
  unsigned rest = base;
  for (unsigned p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    while (k % p == 0) {
      k /= p;
      out *= p;
    }
  }
  return out;
}

Decomposition odometer_components(const System& odometer, std::uint64_t k) {
  const unsigned base = odometer.base();
  const std::uint64_t g = base_part(k, base);
  // +k generates g * Z_b inside the b-adic integers, so the residue classes
  // mod g are the ergodic components of T^k.
  std::uint32_t level = 0;
  while (cylinder_count(base, level) % g != 0) ++level;
  const std::uint64_t count = cylinder_count(base, level);
  Decomposition out;
  for (std::uint64_t r = 0; r < g; ++r) {
    std::vector<std::uint64_t> indices;
    for (std::uint64_t j = r; j < count; j += g) indices.push_back(j);
    SetClass set = SetClass::cylinders(odometer.space(), level, std::move(indices));
    Scalar mu = measure(set);
    out.components.push_back({std::move(set), std::move(mu)});
  }
  return out;
}

Decomposition root_components(const System& R, std::uint64_t k) {
  switch (R.kind()) {
    case SystemKind::permutation: {
      Decomposition out;
      const std::size_t n = R.map().size();
      boost::dynamic_bitset<> seen(n);
      for (std::size_t start = 0; start < n; ++start) {
        if (seen.test(start)) continue;
        boost::dynamic_bitset<> orbit(n);
        for (std::size_t i = start; !orbit.test(i); i = R.permute(i, as_signed(k))) orbit.set(i);
        seen |= orbit;
        SetClass set = SetClass::raw(R.space(), AtomSet{std::move(orbit)});
        Scalar mu = measure(set);
        out.components.push_back({std::move(set), std::move(mu)});
      }
      return out;
    }
    case SystemKind::odometer:
      return odometer_components(R, k);
    case SystemKind::rotation: {
      const Scalar step = (Scalar(static_cast<unsigned long>(k)) * R.alpha()).frac();
      Decomposition out;
      out.components.push_back({SetClass::full(R.space()), Scalar(1)});
      if (step.is_rational()) out.orbit_granularity = step.rational_part().get_den().get_ui();
      return out;
    }
    case SystemKind::product: {
      const System& finite = R.finite();
      const std::size_t n = finite.map().size();
      const std::int64_t step = as_signed(k);
      const SpaceRef& fiber_space = R.fiber().space();
      Decomposition out;
      boost::dynamic_bitset<> seen(n);
      for (std::size_t start = 0; start < n; ++start) {
        if (seen.test(start)) continue;
        std::vector<std::size_t> cycle;
        for (std::size_t i = start; !seen.test(i); i = finite.permute(i, step)) {
          seen.set(i);
          cycle.push_back(i);
        }
        std::uint64_t kc = 0;
        if (__builtin_mul_overflow(k, cycle.size(), &kc)) throw UsageError("exponent overflows");
        const Decomposition fiber = ergodic_decomposition(R.fiber().power(kc));
        if (fiber.orbit_granularity) {
          throw CapabilityError("not decomposable by this artifact: product fiber " + R.fiber().describe() +
                                " has only finite-orbit components");
        }
        for (const Component& piece : fiber.components) {
          std::vector<SetClass> fibers(n, SetClass::empty(fiber_space));
          for (std::size_t t = 0; t < cycle.size(); ++t) {
            fibers[cycle[t]] = apply_power(R.fiber(), piece.set, as_signed(t) * step);
          }
          SetClass set = SetClass::product(R.space(), std::move(fibers));
          Scalar mu = measure(set);
          out.components.push_back({std::move(set), std::move(mu)});
        }
      }
      return out;
    }
    case SystemKind::power:
      break;
  }
  throw UsageError("unexpected nested power");
}

}  // namespace

Decomposition ergodic_decomposition(const System& T) {
  if (is_ergodic(T).ergodic) {
    Decomposition out;
    out.components.push_back({SetClass::full(T.space()), Scalar(1)});
    return out;
  }
  auto [root, k] = T.root();
  return root_components(root, k);
}

}  // namespace ergolab
