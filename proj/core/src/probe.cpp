#include "ergolab/errors.hpp"
#include "ergolab/probes.hpp"
#include "ergolab/sampling.hpp"

namespace ergolab {

std::string to_string(ProbeVerdict verdict) {
  return verdict == ProbeVerdict::discontinuity_witnessed ? "discontinuity-witnessed" : "no-jump-observed";
}

ProbeReport continuity_probe(const System& T, const SetClass& A, const ProbeOptions& options) {
  require_same_space(T.space(), A.space(), "continuity probe");
  const SetClass a = normalize(A);
  auto evaluate = [&](const SetClass& s) {
    if (options.target == ProbeTarget::phi) return phi(T, s, options.m_max);
    return phi_star(T, s, options.exponent_budget, options.m_max).value;
  };

  ProbeReport report{a, options.target, evaluate(a), {}, std::nullopt, ProbeVerdict::no_jump_observed, {}};

  // Adversarial tower witness: only for phi, aperiodic T, phi(A) exact and < 1.
  std::optional<Scalar> outside;
  if (options.target == ProbeTarget::phi_star) {
    report.notes.push_back("phi* witnesses are built by phi_star_discontinuity_witness, not by the probe");
  } else if (!periodic_profile(T).is_aperiodic()) {
    report.notes.push_back(T.describe() + " is not aperiodic: no tower witness");
  } else if (!report.value_at_point.exact) {
    report.notes.push_back("phi(A) only bracketed: no tower witness");
  } else if (report.value_at_point.lower == Scalar(1)) {
    report.notes.push_back("phi(A) = 1: continuity point, no witness exists");
  } else {
    Saturation hull = full_saturation(T, a, options.m_max);
    if (hull.stabilized) {
      outside = measure(complement(hull.set));
    } else {
      report.notes.push_back("invariant hull did not stabilize: no tower witness");
    }
  }

  CounterRng rng(options.seed);
  std::optional<Scalar> smallest_radius;
  bool witnessed_everywhere = !options.radii.empty();
  for (const Scalar& radius : options.radii) {
    if (radius.sign() <= 0) throw UsageError("probe radius must be positive");
    RadiusObservation obs{radius, Scalar(0), 0, 0, std::nullopt};
    for (std::size_t s = 0; s < options.samples_per_radius; ++s) {
      const SetClass b = perturb(a, radius, rng);
      const PhiResult value = evaluate(b);
      ++obs.samples;
      if (!report.value_at_point.exact || !value.exact) {
        ++obs.bracketed;
        continue;
      }
      obs.sup_jump = max(obs.sup_jump, (value.lower - report.value_at_point.lower).abs());
    }

    bool witnessed = false;
    if (outside) {
      try {
        const std::uint64_t height = height_for_radius(*outside, radius);
        DiscontinuityWitness w = discontinuity_witness(T, a, options.witness_eps, height, options.m_max);
        obs.witness_jump = w.jump;
        obs.sup_jump = max(obs.sup_jump, w.jump);
        witnessed = w.distance < radius;
        if (witnessed && (!smallest_radius || radius < *smallest_radius)) {
          smallest_radius = radius;
          report.witness = ProbeWitness{w.witness, w.distance, w.jump, w.guarantee};
        }
      } catch (const CapabilityError& e) {
        report.notes.push_back(e.what());
      } catch (const BudgetError& e) {
        report.notes.push_back(e.what());
      }
    }
    witnessed_everywhere = witnessed_everywhere && witnessed;
    report.radii.push_back(std::move(obs));
  }
  if (witnessed_everywhere) report.verdict = ProbeVerdict::discontinuity_witnessed;
  return report;
}

}  // namespace ergolab
