#include "ergolab/errors.hpp"
#include "ergolab/probes.hpp"

namespace ergolab {
namespace {

// A subset of s with 0 < measure < limit.
SetClass small_piece(const SetClass& s, const Scalar& limit) {
  const SpaceRef& space = s.space();
  switch (space->kind()) {
    case SpaceKind::atoms: {
      const auto& mask = s.as<AtomSet>().mask;
      for (auto i = mask.find_first(); i != boost::dynamic_bitset<>::npos; i = mask.find_next(i)) {
        if (space->weights()[i] < limit) {
          const std::size_t atom = i;
          return SetClass::atoms(space, std::span<const std::size_t>(&atom, 1));
        }
      }
      throw CapabilityError("no atom lighter than " + limit.to_string());
    }
    case SpaceKind::cylinders: {
      const auto& cyl = s.as<CylinderSet>();
      std::uint32_t level = cyl.level;
      while (!(Scalar::fraction(1, static_cast<unsigned long>(cylinder_count(space->base(), level))) < limit)) {
        ++level;
      }
      // Index j at a finer level is the first refinement of cylinder j.
      return SetClass::cylinders(space, level, {cyl.indices.front()});
    }
    case SpaceKind::circle: {
      const Interval& first = s.as<IntervalSet>().intervals.front();
      const Scalar width = min(first.hi - first.lo, limit / Scalar(2));
      return SetClass::interval(space, first.lo, first.lo + width);
    }
    case SpaceKind::product: {
      const auto& fibers = s.as<ProductSet>().fibers;
      for (std::size_t i = 0; i < fibers.size(); ++i) {
        if (is_null(fibers[i])) continue;
        std::vector<SetClass> out(fibers.size(), SetClass::empty(space->fiber()));
        out[i] = small_piece(fibers[i], limit / space->weights()[i]);
        return SetClass::product(space, std::move(out));
      }
      break;
    }
  }
  throw PreconditionError("cannot take a piece of a null set");
}

}  // namespace

std::uint64_t height_for_radius(const Scalar& outside, const Scalar& radius) {
  if (radius.sign() <= 0) throw PreconditionError("radius must be positive");
  return (outside / radius).floor().get_ui() + 1;
}

DiscontinuityWitness discontinuity_witness(const System& T, const SetClass& A, const Scalar& eps,
                                           std::uint64_t height, std::size_t m_max) {
  require_same_space(T.space(), A.space(), "discontinuity witness");
  if (eps.sign() <= 0 || Scalar::fraction(1, 2) < eps) {
    throw PreconditionError("witness eps must lie in (0, 1/2]");
  }
  if (!periodic_profile(T).is_aperiodic()) {
    throw PreconditionError(T.describe() + " is not aperiodic");
  }
  const SetClass a = normalize(A);
  PhiResult phi_a = phi(T, a, m_max);
  if (!phi_a.exact) throw BudgetError("phi(A) not exact within " + std::to_string(m_max) + " steps");
  if (phi_a.lower == Scalar(1)) throw PreconditionError("point is continuous: phi(A) = 1");

  Saturation hull = full_saturation(T, a, m_max);
  if (!hull.stabilized) throw BudgetError("invariant hull of A did not stabilize");
  const SetClass outside = complement(hull.set);

  RokhlinTower tower = rokhlin_tower(T, outside, height, eps);
  SetClass c = unite(a, tower.base);
  PhiResult phi_c = phi(T, c, m_max);
  if (!phi_c.exact) throw BudgetError("phi(C) not exact within " + std::to_string(m_max) + " steps");

  Scalar jump = phi_c.lower - phi_a.lower;
  Scalar guarantee = (Scalar(1) - eps) * measure(outside);
  Scalar dist = distance(a, c);
  if (!(guarantee < jump)) {
    throw Error("witness jump " + jump.to_string() + " does not exceed guarantee " + guarantee.to_string());
  }
  return {a,        std::move(c),     std::move(hull.set), std::move(tower), std::move(dist),
          phi_a,    std::move(phi_c), std::move(jump),     std::move(guarantee)};
}

PhiStarWitness phi_star_discontinuity_witness(const System& T, const SetClass& A, const Scalar& delta,
                                              const std::vector<std::uint64_t>& exponents, std::size_t m_max) {
  require_same_space(T.space(), A.space(), "phi* witness");
  if (delta.sign() <= 0) throw PreconditionError("delta must be positive");
  if (exponents.empty()) throw PreconditionError("no non-ergodic exponent listed: no kappa exists");
  const SetClass a = normalize(A);
  const Scalar mu = measure(a);
  if (mu.is_zero() || mu == Scalar(1)) throw PreconditionError("A must satisfy 0 < mu(A) < 1");
  for (std::uint64_t m : exponents) {
    if (apply(T.power(m), a) != a) {
      throw PreconditionError("A is not invariant under T^" + std::to_string(m));
    }
  }

  const SetClass outside = complement(a);
  PhiStarWitness out{a, Scalar(0), {}, measure(outside) / Scalar(2)};
  Scalar rank_bound = delta;
  for (std::uint64_t m : exponents) {
    rank_bound /= Scalar(2);
    const Decomposition parts = ergodic_decomposition(T.power(m));
    if (parts.orbit_granularity) {
      throw CapabilityError("T^" + std::to_string(m) + " has only finite-orbit components");
    }
    std::vector<SetClass> targets;
    for (const Component& part : parts.components) {
      SetClass rest = intersect(part.set, outside);
      if (!is_null(rest)) targets.push_back(std::move(rest));
    }
    // One piece per T^m-saturation class of the complement.
    const Scalar per_piece = rank_bound / Scalar(static_cast<unsigned long>(std::max<std::size_t>(targets.size(), 1)));
    SetClass piece = SetClass::empty(T.space());
    for (const SetClass& target : targets) piece = unite(piece, small_piece(target, per_piece));
    out.set = unite(out.set, piece);
    out.jumps.push_back({m, std::move(piece), mu, Scalar(0), Scalar(0)});
  }
  out.distance = distance(a, out.set);
  if (!(out.distance < delta)) {
    throw Error("phi* witness distance " + out.distance.to_string() + " is not below " + delta.to_string());
  }
  for (auto& entry : out.jumps) {
    PhiResult value = phi(T.power(entry.exponent), out.set, m_max);
    if (!value.exact) throw BudgetError("phi_{T^" + std::to_string(entry.exponent) + "}(B) not exact");
    entry.phi_witness = value.lower;
    entry.jump = entry.phi_witness - entry.phi_point;
    if (!(out.guarantee < entry.jump)) {
      throw Error("phi* witness jump at T^" + std::to_string(entry.exponent) + " is " + entry.jump.to_string());
    }
  }
  return out;
}

}  // namespace ergolab
