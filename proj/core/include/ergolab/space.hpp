#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ergolab/scalar.hpp"

namespace ergolab {

class Space;
using SpaceRef = std::shared_ptr<const Space>;

enum class SpaceKind { atoms, cylinders, circle, product };

/// A concrete probability space (Omega, F, mu).
///
///  - atoms:     n points with strictly positive weights summing to 1;
///  - cylinders: one-sided sequences over {0..b-1} with the uniform
///               Bernoulli measure;
///  - circle:    [0, 1) with Lebesgue measure; endpoints live in Q or in
///               a fixed Q(sqrt(D));
///  - product:   a finite atom space times a fiber space.
///
/// Spaces are immutable and compared structurally.
class Space {
 public:
  static SpaceRef atoms(std::vector<Scalar> weights);
  static SpaceRef uniform_atoms(std::size_t n);
  static SpaceRef cylinders(unsigned base);
  static SpaceRef circle(std::int64_t field = 0);
  static SpaceRef product(std::vector<Scalar> weights, SpaceRef fiber);

  SpaceKind kind() const noexcept { return kind_; }

  /// atoms/product: the atom weights.
  const std::vector<Scalar>& weights() const noexcept { return weights_; }
  std::size_t atom_count() const noexcept { return weights_.size(); }
  /// cylinders: the alphabet size.
  unsigned base() const noexcept { return base_; }
  /// circle: radicand of the endpoint field (0 for Q).
  std::int64_t field() const noexcept { return field_; }
  /// product: the fiber space.
  const SpaceRef& fiber() const noexcept { return fiber_; }

  std::string describe() const;

  friend bool operator==(const Space& lhs, const Space& rhs);

 private:
  Space() = default;

  SpaceKind kind_ = SpaceKind::atoms;
  std::vector<Scalar> weights_;
  unsigned base_ = 0;
  std::int64_t field_ = 0;
  SpaceRef fiber_;
};

bool same_space(const SpaceRef& lhs, const SpaceRef& rhs);

/// Throws UsageError unless both references denote the same space.
void require_same_space(const SpaceRef& lhs, const SpaceRef& rhs, const char* what);

/// Largest supported b^k for cylinder levels.
inline constexpr std::uint64_t kMaxCylinderCount = std::uint64_t{1} << 40;

/// b^k, throwing StructuralError when it exceeds kMaxCylinderCount.
std::uint64_t cylinder_count(unsigned base, std::uint32_t level);

}  // namespace ergolab
