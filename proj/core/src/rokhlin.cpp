#include "ergolab/errors.hpp"
#include "ergolab/probes.hpp"

namespace ergolab {
namespace {

constexpr std::uint32_t kExtraLevels = 8;
const mpz_class kMaxConvergent{10'000'000};

// Smallest level l with height / b^l <= target.
std::uint32_t first_level(unsigned base, std::uint64_t height, const Scalar& target) {
  std::uint32_t level = 0;
  while (target < Scalar::fraction(static_cast<unsigned long>(height),
                                   static_cast<unsigned long>(cylinder_count(base, level)))) {
    ++level;
  }
  return level;
}

// Column bases j * height, j < floor(b^l / height), at level l.
SetClass odometer_columns(const SpaceRef& space, std::uint32_t level, std::uint64_t height) {
  const std::uint64_t count = cylinder_count(space->base(), level);
  const std::uint64_t columns = count / height;
  std::vector<std::uint64_t> indices;
  indices.reserve(columns);
  for (std::uint64_t j = 0; j < columns; ++j) indices.push_back(j * height);
  return SetClass::cylinders(space, level, std::move(indices));
}

SetClass union_of_floors(const System& T, const SetClass& base, std::uint64_t height) {
  SetClass floor = base;
  SetClass cover = base;
  for (std::uint64_t k = 1; k < height; ++k) {
    floor = apply(T, floor);
    cover = unite(cover, floor);
  }
  return cover;
}

bool accept(const System& T, RokhlinTower& tower, const Scalar& target) {
  if (!is_subset(tower.base, tower.region)) return false;
  if (!tower_floors_disjoint(T, tower.base, tower.height)) return false;
  const SetClass cover = union_of_floors(T, tower.base, tower.height);
  if (!is_subset(cover, tower.region)) return false;
  tower.residual_measure = measure(tower.region) - measure(cover);
  return tower.residual_measure < target;
}

RokhlinTower cylinder_tower(const System& T, const SetClass& region, std::uint64_t height,
                            const Scalar& target) {
  const bool product = T.kind() == SystemKind::product;
  const SpaceRef& fiber_space = product ? T.fiber().space() : T.space();
  const std::uint32_t start = first_level(fiber_space->base(), height, target);
  for (std::uint32_t level = start; level <= start + kExtraLevels; ++level) {
    SetClass columns = odometer_columns(fiber_space, level, height);
    SetClass base = product ? SetClass::product(T.space(), std::vector<SetClass>(T.space()->atom_count(), columns))
                            : columns;
    RokhlinTower tower{intersect(base, region), height, region, Scalar(0), level};
    if (accept(T, tower, target)) return tower;
  }
  throw BudgetError("no verified tower within " + std::to_string(kExtraLevels) + " extra levels");
}

// Continued-fraction convergent denominators of an irrational alpha in (0, 1).
class Convergents {
 public:
  explicit Convergents(Scalar alpha) : x_(std::move(alpha)) {}

  mpz_class next() {
    if (x_.is_zero()) throw PreconditionError("rational rotation has no infinite continued fraction");
    const mpz_class a = x_.floor();
    const mpz_class q = a * q1_ + q0_;
    q0_ = q1_;
    q1_ = q;
    x_ = (x_ - Scalar(a)).reciprocal();
    return q;
  }

 private:
  Scalar x_;
  mpz_class q0_{0};
  mpz_class q1_{1};
};

Scalar distance_to_integer(const Scalar& x) {
  const Scalar f = x.frac();
  return min(f, Scalar(1) - f);
}

RokhlinTower rotation_tower(const System& T, const SetClass& region, std::uint64_t height,
                            const Scalar& target) {
  const SpaceRef& space = T.space();
  Convergents convergents(T.alpha().reciprocal());
  // Convergents of alpha: q_0 = 1, then those of the expansion of 1/alpha.
  std::vector<mpz_class> denominators{1};
  for (;;) {
    const mpz_class& q = denominators.back();
    if (q > kMaxConvergent) throw BudgetError("convergent denominators exceed the tower budget");
    const Scalar gap = distance_to_integer(Scalar(q) * T.alpha());
    if (Scalar(static_cast<unsigned long>(height)) * gap <= target) {
      const SetClass base_interval = SetClass::interval(space, Scalar(0), gap);
      // First-return partition of the base interval.
      std::vector<std::pair<std::uint64_t, SetClass>> pieces;
      SetClass remaining = base_interval;
      for (std::int64_t j = 1; !is_null(remaining); ++j) {
        if (static_cast<std::uint64_t>(j) > kMaxConvergent.get_ui()) throw BudgetError("return time too large");
        SetClass back = intersect(remaining, apply_power(T, base_interval, -j));
        if (is_null(back)) continue;
        remaining = difference(remaining, back);
        pieces.emplace_back(static_cast<std::uint64_t>(j), std::move(back));
      }
      // Stack floors 0, h, 2h, ... of every column that fit below its top.
      SetClass base = SetClass::empty(space);
      for (const auto& [return_time, piece] : pieces) {
        for (std::uint64_t t = 0; (t + 1) * height <= return_time; ++t) {
          base = unite(base, apply_power(T, piece, static_cast<std::int64_t>(t * height)));
        }
      }
      RokhlinTower tower{intersect(base, region), height, region, Scalar(0), q.get_ui()};
      if (accept(T, tower, target)) return tower;
    }
    denominators.push_back(convergents.next());
  }
}

}  // namespace

bool tower_floors_disjoint(const System& T, const SetClass& base, std::uint64_t height) {
  SetClass floor = base;
  SetClass cover = base;
  for (std::uint64_t k = 1; k < height; ++k) {
    floor = apply(T, floor);
    if (!is_null(intersect(cover, floor))) return false;
    cover = unite(cover, floor);
  }
  return true;
}

RokhlinTower rokhlin_tower(const System& T, const SetClass& region, std::uint64_t height, const Scalar& eps) {
  require_same_space(T.space(), region.space(), "rokhlin tower");
  if (height == 0) throw PreconditionError("tower height must be >= 1");
  if (eps.sign() <= 0 || !(eps < Scalar(1))) throw PreconditionError("tower eps must lie in (0, 1)");
  const SetClass r = normalize(region);
  if (is_null(r)) throw PreconditionError("tower region is null");
  if (apply(T, r) != r) throw PreconditionError("tower region is not T-invariant");

  const bool odometer_like =
      T.kind() == SystemKind::odometer ||
      (T.kind() == SystemKind::product && T.fiber().kind() == SystemKind::odometer);
  const bool irrational_rotation = T.kind() == SystemKind::rotation && !T.alpha().is_rational();
  if (!odometer_like && !irrational_rotation) {
    if (!periodic_profile(T).is_aperiodic()) {
      throw PreconditionError("tower region has a periodic part under " + T.describe());
    }
    throw CapabilityError("no tower construction for " + T.describe());
  }

  const Scalar target = eps * measure(r);
  return odometer_like ? cylinder_tower(T, r, height, target) : rotation_tower(T, r, height, target);
}

}  // namespace ergolab
