#include "ergolab/checks/random_sets.hpp"

#include <numeric>
#include <vector>

namespace ergolab::gen {

System permutation(CounterRng& rng, std::size_t n, bool weighted) {
  std::vector<std::size_t> map(n);
  std::iota(map.begin(), map.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(map[i - 1], map[rng.below(i)]);
  if (!weighted) return System::permutation(std::move(map));

  std::vector<std::uint64_t> raw(n, 0);
  std::uint64_t total = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (raw[start] != 0) continue;
    const std::uint64_t w = rng.between(1, 8);
    for (std::size_t x = start; raw[x] == 0; x = map[x]) {
      raw[x] = w;
      total += w;
    }
  }
  std::vector<Scalar> weights;
  weights.reserve(n);
  for (std::uint64_t w : raw) weights.push_back(Scalar::fraction(w, total));
  return System::permutation(std::move(map), std::move(weights));
}

SetClass cylinder_union(const SpaceRef& space, std::uint32_t level, CounterRng& rng) {
  const std::uint64_t count = cylinder_count(space->base(), level);
  std::vector<std::uint64_t> indices;
  for (std::uint64_t j = 0; j < count; ++j) {
    if (rng.coin()) indices.push_back(j);
  }
  if (indices.empty()) indices.push_back(rng.below(count));
  return SetClass::cylinders(space, level, std::move(indices));
}

SetClass any_set(const SpaceRef& space, CounterRng& rng) {
  SetGrain grain;
  grain.cylinder_level = static_cast<std::uint32_t>(rng.between(1, space->kind() == SpaceKind::product ? 4 : 6));
  grain.circle_cells = std::uint64_t{1} << rng.between(1, 5);
  return random_set(space, grain, rng);
}

}  // namespace ergolab::gen
