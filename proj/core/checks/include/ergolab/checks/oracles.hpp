#pragma once

#include <cstdint>
#include <vector>

#include "ergolab/scalar.hpp"
#include "ergolab/set_class.hpp"
#include "ergolab/system.hpp"

/// Brute-force reference implementations. They share nothing with the
/// library's algorithms beyond the value types, so agreement between the two
/// is evidence rather than tautology.
namespace ergolab::oracle {

/// Membership of every level-`level` cylinder (little-endian index) in `s`.
/// `level` must be at least the level of `s`.
std::vector<bool> cylinder_bits(const SetClass& s, std::uint32_t level);

/// The union of the cylinders whose bit is set.
SetClass from_bits(const SpaceRef& space, std::uint32_t level, const std::vector<bool>& bits);

/// Lowest level at which `s` is a union of cylinders.
std::uint32_t cylinder_level(const SetClass& s);

/// Weight of the atoms in `s` (atom spaces).
Scalar atom_measure(const SetClass& s, const std::vector<Scalar>& weights);

/// Atoms in `s` as a boolean vector (atom spaces).
std::vector<bool> atom_bits(const SetClass& s);

/// mu(union of pi^{kn} A, n = 0..m) by explicit iteration of the map.
Scalar permutation_phi_m(const std::vector<std::size_t>& map, const std::vector<Scalar>& weights,
                         const std::vector<bool>& A, std::uint64_t k, std::uint64_t m);

/// mu of the union of the pi^k-orbits meeting A, by walking every orbit.
Scalar permutation_phi(const std::vector<std::size_t>& map, const std::vector<Scalar>& weights,
                       const std::vector<bool>& A, std::uint64_t k = 1);

/// phi of the odometer power T^k on a cylinder union: the +k orbits of the
/// level-L indices meeting A, L = level of A, counted one by one.
Scalar odometer_phi(const SetClass& A, std::uint64_t k);

/// Same as odometer_phi but truncated at m steps.
Scalar odometer_phi_m(const SetClass& A, std::uint64_t k, std::uint64_t m);

}  // namespace ergolab::oracle
