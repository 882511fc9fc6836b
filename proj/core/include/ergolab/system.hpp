#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ergolab/scalar.hpp"
#include "ergolab/set_class.hpp"
#include "ergolab/space.hpp"

namespace ergolab {

enum class SystemKind { permutation, odometer, rotation, product, power };

/// A measure-preserving automorphism of one of the concrete spaces.
///
///  - permutation: a bijection of n weighted atoms, weights constant on cycles;
///  - odometer:    +1 with carry on base-b digit sequences;
///  - rotation:    x -> x + alpha mod 1 on the circle;
///  - product:     (i, x) -> (pi(i), S x) for a permutation pi and fiber S;
///  - power:       T^k, kept symbolic. Nested powers flatten.
///
/// Systems are immutable handles; copying shares the description.
class System {
 public:
  static System permutation(std::vector<std::size_t> map, std::vector<Scalar> weights);
  /// Uniform weights 1/n.
  static System permutation(std::vector<std::size_t> map);
  static System identity(std::size_t n);
  static System odometer(unsigned base);
  /// 0 <= alpha < 1, rational or quadratic.
  static System rotation(Scalar alpha);
  static System product(System finite, System fiber);

  /// T^k for k >= 1. power(1) is *this; powers of powers multiply.
  System power(std::uint64_t k) const;

  SystemKind kind() const noexcept;
  const SpaceRef& space() const noexcept;

  // permutation
  const std::vector<std::size_t>& map() const;
  const std::vector<std::vector<std::size_t>>& cycles() const;
  /// Image of atom i under pi^n (n may be negative).
  std::size_t permute(std::size_t atom, std::int64_t n) const;
  // odometer
  unsigned base() const;
  // rotation
  const Scalar& alpha() const;
  // product
  const System& finite() const;
  const System& fiber() const;
  // power
  const System& power_base() const;
  std::uint64_t exponent() const;

  /// The non-power system R and exponent k with *this == R^k.
  std::pair<System, std::uint64_t> root() const;

  std::string describe() const;

  friend bool operator==(const System& lhs, const System& rhs);

 private:
  struct Node;
  explicit System(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// T(s), canonical.
SetClass apply(const System& T, const SetClass& s);
/// T^{-1}(s), canonical.
SetClass apply_inverse(const System& T, const SetClass& s);
/// T^n(s) for any integer n.
SetClass apply_power(const System& T, const SetClass& s, std::int64_t n);

struct PeriodicProfile {
  /// (period n >= 1, mu(P_n)), periods distinct and increasing.
  std::vector<std::pair<std::uint64_t, Scalar>> periodic;
  /// mu(P_0), the aperiodic part.
  Scalar aperiodic;

  bool is_aperiodic() const { return aperiodic == Scalar(1); }
  bool is_periodic() const { return aperiodic.is_zero(); }
};

PeriodicProfile periodic_profile(const System& T);

struct ErgodicityVerdict {
  bool ergodic = false;
  /// Which class rule decided the verdict.
  std::string rule;
  /// Present iff !ergodic: T-invariant, 0 < mu < 1.
  std::optional<SetClass> invariant;
};

ErgodicityVerdict is_ergodic(const System& T);
std::optional<SetClass> invariant_set(const System& T);
/// Every power T^k, k >= 1, is ergodic.
bool is_totally_ergodic(const System& T);

struct Saturation {
  SetClass set;
  bool stabilized = false;
  /// Index m of the last union U_m that was formed.
  std::size_t steps = 0;
};

/// U_m = union of T^n A for n = 0..m, stopping at the first m with T U_m in U_m.
Saturation forward_saturation(const System& T, const SetClass& A, std::size_t m_max);
/// Union of T^n A for |n| <= m, stopping once both T U and T^{-1} U lie in U.
Saturation full_saturation(const System& T, const SetClass& A, std::size_t m_max);

}  // namespace ergolab
