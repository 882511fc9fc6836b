#pragma once

#include <cstddef>
#include <cstdint>

#include "ergolab/sampling.hpp"
#include "ergolab/set_class.hpp"
#include "ergolab/system.hpp"

namespace ergolab::gen {

/// Uniform random permutation of n atoms (Fisher-Yates). With `weighted`,
/// each cycle gets a random integer weight in 1..8 before normalization.
System permutation(CounterRng& rng, std::size_t n, bool weighted);

/// Non-empty random union of level-`level` cylinders.
SetClass cylinder_union(const SpaceRef& space, std::uint32_t level, CounterRng& rng);

/// Random set for `space` with a random grain drawn from small levels.
SetClass any_set(const SpaceRef& space, CounterRng& rng);

}  // namespace ergolab::gen
