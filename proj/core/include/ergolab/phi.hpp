#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ergolab/scalar.hpp"
#include "ergolab/set_class.hpp"
#include "ergolab/system.hpp"

namespace ergolab {

inline constexpr std::size_t kDefaultMMax = 4096;
inline constexpr std::uint64_t kDefaultExponentBudget = 64;

enum class PhiCertificate {
  /// The forward union stabilized; value is exact.
  stabilized,
  /// A power of T fixes the set, so the infimum mu(A) is attained.
  invariance,
  /// T is totally ergodic and the set is non-null; every power gives 1.
  totally_ergodic,
  /// Budget ran out; [lower, upper] brackets the value.
  budget_exhausted,
};

std::string to_string(PhiCertificate certificate);

/// Value of phi or phi* with its exactness certificate.
struct PhiResult {
  Scalar lower;
  Scalar upper;
  bool exact = false;
  std::size_t steps_used = 0;
  PhiCertificate certificate = PhiCertificate::budget_exhausted;

  /// The exact value; throws BudgetError on a bracket.
  const Scalar& value() const;
};

/// mu(union of T^n A, n = 0..m).
Scalar phi_m(const System& T, const SetClass& A, std::size_t m);

/// The values phi_m(T, A, m) for m = 0..m_last, computed incrementally.
std::vector<Scalar> phi_m_sequence(const System& T, const SetClass& A, std::size_t m_last);

/// lim_m phi_m(T, A, m): exact when the forward union stabilizes within
/// m_max steps, otherwise the bracket [phi_m(m_max), 1].
PhiResult phi(const System& T, const SetClass& A, std::size_t m_max = kDefaultMMax);

/// Non-ergodic powers met while evaluating phi*.
struct ErgodicPowerProfile {
  /// Smallest k >= 1 with T^k not ergodic, if one lies within the budget.
  std::optional<std::uint64_t> k0;
  /// Divisibility-minimal non-ergodic exponents within the budget.
  std::vector<std::uint64_t> classes;
  /// Product of `classes`.
  mpz_class kappa{1};
  /// Every non-ergodic exponent whose phi was evaluated, in order.
  std::vector<std::uint64_t> explored;
};

struct PhiStarResult {
  PhiResult value;
  ErgodicPowerProfile profile;
  /// Exponent m at which inf_m phi_{T^m}(A) was attained, when exact.
  std::optional<std::uint64_t> attained_at;
};

/// inf over m >= 1 of phi_{T^m}(A), exploring exponents 1..exponent_budget.
PhiStarResult phi_star(const System& T, const SetClass& A,
                       std::uint64_t exponent_budget = kDefaultExponentBudget,
                       std::size_t m_max = kDefaultMMax);

struct Component {
  SetClass set;
  Scalar measure;
};

/// Partition of the space into T-invariant pieces with ergodic restrictions.
///
/// For a rational rotation the ergodic components are single finite orbits;
/// the decomposition then holds the full circle as one piece and records
/// the common orbit length in `orbit_granularity` (every orbit meets the
/// fundamental domain [0, 1/q) exactly once).
struct Decomposition {
  std::vector<Component> components;
  std::optional<std::uint64_t> orbit_granularity;
};

Decomposition ergodic_decomposition(const System& T);

}  // namespace ergolab
