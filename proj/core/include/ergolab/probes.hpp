#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ergolab/phi.hpp"
#include "ergolab/scalar.hpp"
#include "ergolab/set_class.hpp"
#include "ergolab/system.hpp"

namespace ergolab {

/// Base E of a tower whose floors T^k E, 0 <= k < height, are pairwise
/// disjoint subsets of `region`.
struct RokhlinTower {
  SetClass base;
  std::uint64_t height = 1;
  SetClass region;
  /// mu(region minus the union of the floors).
  Scalar residual_measure;
  /// Cylinder level (odometer fibers) or convergent denominator (rotations)
  /// the tower was built at.
  std::uint64_t resolution = 0;
};

/// Tower of the given height inside a T-invariant region on which T is
/// aperiodic, leaving less than eps * mu(region) uncovered.
///
/// Supported: odometers, products whose fiber is an odometer, irrational
/// rotations. Floors and coverage are re-verified by set algebra before
/// returning.
RokhlinTower rokhlin_tower(const System& T, const SetClass& region, std::uint64_t height, const Scalar& eps);

/// Pairwise disjointness of T^k E, 0 <= k < height, checked from scratch.
bool tower_floors_disjoint(const System& T, const SetClass& base, std::uint64_t height);

struct DiscontinuityWitness {
  SetClass point;
  /// C = A union E.
  SetClass witness;
  /// Invariant hull of A (full saturation).
  SetClass hull;
  RokhlinTower tower;
  Scalar distance;
  PhiResult phi_point;
  PhiResult phi_witness;
  Scalar jump;
  /// (1 - eps) * mu(complement of hull); jump > guarantee.
  Scalar guarantee;
};

/// C = A union E with E the base of a tower in the complement of A's
/// invariant hull. Requires T aperiodic, phi(A) exact and < 1, 0 < eps <= 1/2.
DiscontinuityWitness discontinuity_witness(const System& T, const SetClass& A, const Scalar& eps,
                                           std::uint64_t height, std::size_t m_max = kDefaultMMax);

/// Smallest tower height guaranteeing distance(A, C) < radius when the
/// complement of the hull has measure `outside`.
std::uint64_t height_for_radius(const Scalar& outside, const Scalar& radius);

struct PhiStarWitness {
  /// B = A union (union of E_m).
  SetClass set;
  Scalar distance;
  struct ExponentJump {
    std::uint64_t exponent;
    SetClass piece;
    Scalar phi_point;
    Scalar phi_witness;
    Scalar jump;
  };
  std::vector<ExponentJump> jumps;
  /// mu(complement of A) / 2; every listed jump exceeds it.
  Scalar guarantee;
};

/// For A invariant under every listed power T^m (0 < mu(A) < 1), adds to A
/// one small piece E_m per exponent, mu(E_m) < delta / 2^rank, whose
/// T^m-saturation covers the complement of A.
PhiStarWitness phi_star_discontinuity_witness(const System& T, const SetClass& A, const Scalar& delta,
                                              const std::vector<std::uint64_t>& exponents,
                                              std::size_t m_max = kDefaultMMax);

enum class ProbeTarget { phi, phi_star };
enum class ProbeVerdict { no_jump_observed, discontinuity_witnessed };

std::string to_string(ProbeVerdict verdict);

struct ProbeOptions {
  std::vector<Scalar> radii;
  std::size_t samples_per_radius = 16;
  std::uint64_t seed = 0;
  std::size_t m_max = kDefaultMMax;
  ProbeTarget target = ProbeTarget::phi;
  std::uint64_t exponent_budget = kDefaultExponentBudget;
  /// Tower coverage defect used by the adversarial witness.
  Scalar witness_eps = Scalar::fraction(1, 2);
};

struct RadiusObservation {
  Scalar radius;
  /// Max |f(A) - f(B)| over samples where both values were exact.
  Scalar sup_jump;
  std::size_t samples = 0;
  /// Samples skipped because f(B) was only bracketed.
  std::size_t bracketed = 0;
  /// Jump of the adversarial witness built for this radius, if any.
  std::optional<Scalar> witness_jump;
};

struct ProbeWitness {
  SetClass set;
  Scalar distance;
  Scalar jump;
  Scalar guarantee;
};

struct ProbeReport {
  SetClass point;
  ProbeTarget target = ProbeTarget::phi;
  PhiResult value_at_point;
  std::vector<RadiusObservation> radii;
  /// Witness at the smallest radius.
  std::optional<ProbeWitness> witness;
  ProbeVerdict verdict = ProbeVerdict::no_jump_observed;
  /// In-band capability notes (why no witness was attempted, ...).
  std::vector<std::string> notes;
};

/// Empirical epsilon-delta sweep of phi (or phi*) around A plus an
/// adversarial witness attempt. Deterministic given the seed.
ProbeReport continuity_probe(const System& T, const SetClass& A, const ProbeOptions& options);

}  // namespace ergolab
