#include "ergolab/checks/oracles.hpp"

#include <algorithm>

#include "ergolab/errors.hpp"

namespace ergolab::oracle {
namespace {

std::uint64_t power_of(unsigned base, std::uint32_t level) {
  std::uint64_t out = 1;
  for (std::uint32_t i = 0; i < level; ++i) out *= base;
  return out;
}

std::vector<std::size_t> iterate(const std::vector<std::size_t>& map, std::uint64_t k) {
  std::vector<std::size_t> out(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    std::size_t x = i;
    for (std::uint64_t step = 0; step < k; ++step) x = map[x];
    out[i] = x;
  }
  return out;
}

Scalar weight_of(const std::vector<bool>& bits, const std::vector<Scalar>& weights) {
  Scalar total;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) total += weights[i];
  }
  return total;
}

}  // namespace

std::uint32_t cylinder_level(const SetClass& s) { return normalize(s).as<CylinderSet>().level; }

std::vector<bool> cylinder_bits(const SetClass& s, std::uint32_t level) {
  const auto& cyl = s.as<CylinderSet>();
  if (level < cyl.level) throw UsageError("oracle level below the set's level");
  const unsigned base = s.space()->base();
  const std::uint64_t coarse = power_of(base, cyl.level);
  std::vector<bool> own(coarse, false);
  for (std::uint64_t i : cyl.indices) own[i] = true;
  const std::uint64_t fine = power_of(base, level);
  std::vector<bool> bits(fine);
  for (std::uint64_t j = 0; j < fine; ++j) bits[j] = own[j % coarse];
  return bits;
}

SetClass from_bits(const SpaceRef& space, std::uint32_t level, const std::vector<bool>& bits) {
  std::vector<std::uint64_t> indices;
  for (std::uint64_t j = 0; j < bits.size(); ++j) {
    if (bits[j]) indices.push_back(j);
  }
  return SetClass::cylinders(space, level, std::move(indices));
}

std::vector<bool> atom_bits(const SetClass& s) {
  const auto& mask = s.as<AtomSet>().mask;
  std::vector<bool> bits(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i) bits[i] = mask[i];
  return bits;
}

Scalar atom_measure(const SetClass& s, const std::vector<Scalar>& weights) {
  return weight_of(atom_bits(s), weights);
}

Scalar permutation_phi_m(const std::vector<std::size_t>& map, const std::vector<Scalar>& weights,
                         const std::vector<bool>& A, std::uint64_t k, std::uint64_t m) {
  const auto step = iterate(map, k);
  std::vector<bool> current = A;
  std::vector<bool> seen = A;
  for (std::uint64_t n = 1; n <= m; ++n) {
    std::vector<bool> next(current.size(), false);
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (current[i]) next[step[i]] = true;
    }
    current = std::move(next);
    for (std::size_t i = 0; i < current.size(); ++i) seen[i] = seen[i] || current[i];
  }
  return weight_of(seen, weights);
}

Scalar permutation_phi(const std::vector<std::size_t>& map, const std::vector<Scalar>& weights,
                       const std::vector<bool>& A, std::uint64_t k) {
  const auto step = iterate(map, k);
  std::vector<bool> visited(map.size(), false);
  std::vector<bool> covered(map.size(), false);
  for (std::size_t start = 0; start < map.size(); ++start) {
    if (visited[start]) continue;
    std::vector<std::size_t> orbit;
    bool meets = false;
    for (std::size_t x = start; !visited[x]; x = step[x]) {
      visited[x] = true;
      orbit.push_back(x);
      meets = meets || A[x];
    }
    if (meets) {
      for (std::size_t x : orbit) covered[x] = true;
    }
  }
  return weight_of(covered, weights);
}

Scalar odometer_phi(const SetClass& A, std::uint64_t k) {
  const SetClass canonical = normalize(A);
  const std::uint32_t level = canonical.as<CylinderSet>().level;
  const auto bits = cylinder_bits(canonical, level);
  const std::uint64_t n = bits.size();
  const std::uint64_t shift = k % n;
  std::vector<bool> visited(n, false);
  std::uint64_t covered = 0;
  for (std::uint64_t start = 0; start < n; ++start) {
    if (visited[start]) continue;
    std::uint64_t length = 0;
    bool meets = false;
    for (std::uint64_t x = start; !visited[x]; x = (x + shift) % n) {
      visited[x] = true;
      ++length;
      meets = meets || bits[x];
    }
    if (meets) covered += length;
  }
  return Scalar::fraction(covered, n);
}

Scalar odometer_phi_m(const SetClass& A, std::uint64_t k, std::uint64_t m) {
  const SetClass canonical = normalize(A);
  const std::uint32_t level = canonical.as<CylinderSet>().level;
  const auto bits = cylinder_bits(canonical, level);
  const std::uint64_t n = bits.size();
  std::vector<bool> seen(n, false);
  for (std::uint64_t x = 0; x < n; ++x) {
    if (!bits[x]) continue;
    for (std::uint64_t step = 0; step <= std::min<std::uint64_t>(m, n); ++step) {
      seen[(x + (step % n) * (k % n)) % n] = true;
    }
  }
  std::uint64_t count = 0;
  for (bool b : seen) count += b ? 1 : 0;
  return Scalar::fraction(count, n);
}

}  // namespace ergolab::oracle
