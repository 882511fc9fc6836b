#include "ergolab/sampling.hpp"

#include <optional>

#include "ergolab/errors.hpp"

namespace ergolab {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Smallest level L with b^-L <= bound.
std::uint32_t level_for(unsigned base, const Scalar& bound) {
  std::uint32_t level = 0;
  while (bound < Scalar::fraction(1, static_cast<unsigned long>(cylinder_count(base, level)))) ++level;
  return level;
}

std::optional<SetClass> random_piece(const SpaceRef& space, const Scalar& bound, bool strict, CounterRng& rng) {
  switch (space->kind()) {
    case SpaceKind::atoms: {
      std::vector<std::size_t> fitting;
      for (std::size_t i = 0; i < space->atom_count(); ++i) {
        const Scalar& w = space->weights()[i];
        if (strict ? w < bound : w <= bound) fitting.push_back(i);
      }
      if (fitting.empty()) return std::nullopt;
      const std::size_t pick = fitting[rng.below(fitting.size())];
      return SetClass::atoms(space, std::span<const std::size_t>(&pick, 1));
    }
    case SpaceKind::cylinders: {
      const std::uint32_t level = level_for(space->base(), bound);
      const std::uint64_t count = cylinder_count(space->base(), level);
      return SetClass::cylinders(space, level, {rng.below(count)});
    }
    case SpaceKind::circle: {
      // N cells of width 1/N <= bound.
      const Scalar inverse = bound.reciprocal();
      mpz_class cells = inverse.floor();
      if (Scalar(cells) != inverse) ++cells;
      const std::uint64_t n = cells.get_ui();
      const std::uint64_t j = rng.below(n);
      return SetClass::interval(space, Scalar::fraction(static_cast<unsigned long>(j), cells),
                                Scalar::fraction(static_cast<unsigned long>(j + 1), cells));
    }
    case SpaceKind::product: {
      const std::size_t i = rng.below(space->atom_count());
      auto piece = random_piece(space->fiber(), bound / space->weights()[i], strict, rng);
      if (!piece) return std::nullopt;
      std::vector<SetClass> fibers(space->atom_count(), SetClass::empty(space->fiber()));
      fibers[i] = std::move(*piece);
      return SetClass::product(space, std::move(fibers));
    }
  }
  return std::nullopt;
}

bool atom_based(const Space& space) {
  if (space.kind() == SpaceKind::atoms) return true;
  if (space.kind() == SpaceKind::product) return atom_based(*space.fiber());
  return false;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::next() {
  ++counter_;
  return splitmix64(seed_ + counter_ * kGolden);
}

std::uint64_t CounterRng::below(std::uint64_t bound) {
  if (bound == 0) throw UsageError("CounterRng::below(0)");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
  std::uint64_t x = next();
  while (x > limit) x = next();
  return x % bound;
}

SetClass random_set(const SpaceRef& space, const SetGrain& grain, CounterRng& rng) {
  switch (space->kind()) {
    case SpaceKind::atoms: {
      boost::dynamic_bitset<> mask(space->atom_count());
      for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = rng.coin();
      return SetClass::raw(space, AtomSet{std::move(mask)});
    }
    case SpaceKind::cylinders: {
      const std::uint64_t count = cylinder_count(space->base(), grain.cylinder_level);
      std::vector<std::uint64_t> indices;
      for (std::uint64_t j = 0; j < count; ++j) {
        if (rng.coin()) indices.push_back(j);
      }
      return SetClass::cylinders(space, grain.cylinder_level, std::move(indices));
    }
    case SpaceKind::circle: {
      const auto cells = static_cast<unsigned long>(grain.circle_cells);
      std::vector<Interval> pieces;
      for (unsigned long j = 0; j < cells; ++j) {
        if (rng.coin()) pieces.push_back({Scalar::fraction(j, cells), Scalar::fraction(j + 1, cells)});
      }
      return SetClass::intervals(space, std::move(pieces));
    }
    case SpaceKind::product: {
      std::vector<SetClass> fibers;
      for (std::size_t i = 0; i < space->atom_count(); ++i) fibers.push_back(random_set(space->fiber(), grain, rng));
      return SetClass::product(space, std::move(fibers));
    }
  }
  return SetClass::empty(space);
}

SetClass perturb(const SetClass& A, const Scalar& radius, CounterRng& rng) {
  if (radius.sign() <= 0) throw UsageError("perturbation radius must be positive");
  const SpaceRef& space = A.space();
  // Atom spaces cannot be refined, so any atom lighter than the radius is a piece.
  const bool strict = atom_based(*space);
  const Scalar bound = strict ? radius : radius / Scalar(8);
  SetClass toggled = SetClass::empty(space);
  Scalar total;
  const std::uint64_t pieces = rng.between(1, 7);
  for (std::uint64_t p = 0; p < pieces; ++p) {
    auto piece = random_piece(space, bound, strict, rng);
    if (!piece) break;
    Scalar mu = measure(*piece);
    if (!(total + mu < radius)) continue;
    toggled = symdiff(toggled, *piece);
    total += mu;
  }
  return symdiff(A, toggled);
}

}  // namespace ergolab
