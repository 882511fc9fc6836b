#pragma once

#include <cstdint>

#include "ergolab/scalar.hpp"
#include "ergolab/set_class.hpp"

namespace ergolab {

/// Counter-based generator: output i is splitmix64(seed + (i + 1) * 0x9E3779B97F4A7C15).
///
/// The stream is fixed by this formula alone, so reports are reproducible
/// bit for bit across compilers and standard libraries. Bounded draws use
/// rejection sampling (no std::uniform_int_distribution).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return (next() >> 63) != 0; }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Resolution used to build random sets and perturbations.
struct SetGrain {
  /// Cylinder level (cylinders), number of equal cells (circle).
  std::uint32_t cylinder_level = 6;
  std::uint64_t circle_cells = 32;
};

/// Random set on `space`: each atom / level-l cylinder / circle cell is
/// included with probability 1/2. Product sets are fiberwise.
SetClass random_set(const SpaceRef& space, const SetGrain& grain, CounterRng& rng);

/// Random B with distance(A, B) < radius, built by toggling pieces of
/// measure at most radius / 8. May return A itself when no piece fits.
SetClass perturb(const SetClass& A, const Scalar& radius, CounterRng& rng);

}  // namespace ergolab
