#include "ergolab/phi.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "ergolab/errors.hpp"

namespace ergolab {

std::string to_string(PhiCertificate certificate) {
  switch (certificate) {
    case PhiCertificate::stabilized:
      return "stabilized";
    case PhiCertificate::invariance:
      return "invariance";
    case PhiCertificate::totally_ergodic:
      return "totally-ergodic";
    case PhiCertificate::budget_exhausted:
      return "budget-exhausted";
  }
  return "?";
}

const Scalar& PhiResult::value() const {
  if (!exact) {
    throw BudgetError("value only bracketed in [" + lower.to_string() + ", " + upper.to_string() +
                      "] after " + std::to_string(steps_used) + " steps");
  }
  return lower;
}

Scalar phi_m(const System& T, const SetClass& A, std::size_t m) {
  return measure(forward_saturation(T, A, m).set);
}

std::vector<Scalar> phi_m_sequence(const System& T, const SetClass& A, std::size_t m_last) {
  require_same_space(T.space(), A.space(), "phi_m");
  std::vector<Scalar> values;
  values.reserve(m_last + 1);
  SetClass united = normalize(A);
  SetClass current = united;
  values.push_back(measure(united));
  while (values.size() <= m_last) {
    SetClass next = apply(T, current);
    if (is_subset(next, united)) {
      values.resize(m_last + 1, values.back());
      break;
    }
    united = unite(united, next);
    current = std::move(next);
    values.push_back(measure(united));
  }
  return values;
}

PhiResult phi(const System& T, const SetClass& A, std::size_t m_max) {
  Saturation sat = forward_saturation(T, A, m_max);
  Scalar value = measure(sat.set);
  if (sat.stabilized) {
    return {value, value, true, sat.steps, PhiCertificate::stabilized};
  }
  return {std::move(value), Scalar(1), false, sat.steps, PhiCertificate::budget_exhausted};
}

PhiStarResult phi_star(const System& T, const SetClass& A, std::uint64_t exponent_budget,
                       std::size_t m_max) {
  require_same_space(T.space(), A.space(), "phi*");
  const SetClass a = normalize(A);
  const Scalar mu = measure(a);

  PhiStarResult out;
  ErgodicPowerProfile& profile = out.profile;
  std::vector<System> non_ergodic;
  for (std::uint64_t m = 1; m <= exponent_budget; ++m) {
    System power = T.power(m);
    if (is_ergodic(power).ergodic) continue;
    if (!profile.k0) profile.k0 = m;
    const bool divisible = std::any_of(profile.classes.begin(), profile.classes.end(),
                                       [m](std::uint64_t k) { return m % k == 0; });
    if (!divisible) {
      profile.classes.push_back(m);
      profile.kappa *= static_cast<unsigned long>(m);
    }
    non_ergodic.push_back(std::move(power));
  }

  if (is_null(a)) {
    out.value = {mu, mu, true, 0, PhiCertificate::invariance};
    out.attained_at = 1;
    return out;
  }

  Scalar best(1);
  std::size_t steps = 0;
  // Increasing exponents visit every divisor before its multiples, and
  // phi_{T^{kj}} <= phi_{T^k}, so this walks down the divisibility lattice.
  for (const System& power : non_ergodic) {
    const std::uint64_t m = power.exponent();
    profile.explored.push_back(m);
    if (apply(power, a) == a) {
      out.value = {mu, mu, true, steps, PhiCertificate::invariance};
      out.attained_at = m;
      return out;
    }
    PhiResult r = phi(power, a, m_max);
    steps += r.steps_used;
    if (r.upper < best) best = r.upper;
  }

  if (non_ergodic.empty() && is_totally_ergodic(T)) {
    out.value = {Scalar(1), Scalar(1), true, steps, PhiCertificate::totally_ergodic};
    out.attained_at = 1;
    return out;
  }
  // A purely periodic system has T^L = id for L the lcm of its periods, and
  // every set is invariant under the identity.
  const PeriodicProfile periods = periodic_profile(T);
  if (periods.is_periodic()) {
    std::uint64_t lcm = 1;
    bool fits = true;
    for (const auto& [n, weight] : periods.periodic) {
      const std::uint64_t step = n / std::gcd(lcm, n);
      if (lcm > std::numeric_limits<std::uint64_t>::max() / step) {
        fits = false;
        break;
      }
      lcm *= step;
    }
    if (fits) {
      out.value = {mu, mu, true, steps, PhiCertificate::invariance};
      out.attained_at = lcm;
      return out;
    }
  }
  out.value = {mu, best, false, steps, PhiCertificate::budget_exhausted};
  return out;
}

}  // namespace ergolab
