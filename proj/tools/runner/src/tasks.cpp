#include <sstream>

#include "ergolab/checks/suites.hpp"
#include "ergolab/errors.hpp"
#include "ergolab/parse.hpp"
#include "ergolab/phi.hpp"
#include "ergolab/probes.hpp"
#include "ergolab/runner.hpp"

namespace ergolab::runner {
namespace {

ReportRow exact_row(std::string task, std::string param, const Scalar& value, std::string certificate) {
  ReportRow row;
  row.task = std::move(task);
  row.param = std::move(param);
  row.lower = value;
  row.upper = value;
  row.exact = true;
  row.certificate = std::move(certificate);
  return row;
}

std::string join(const std::vector<std::uint64_t>& values) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
  return out.str();
}

}  // namespace

TaskOutput phi_table(const System& T, const std::string& set, const std::vector<std::size_t>& ms) {
  const SetClass A = parse_set_expr(set, T.space());
  std::size_t last = 0;
  for (std::size_t m : ms) last = std::max(last, m);
  const auto sequence = phi_m_sequence(T, A, last);
  TaskOutput out;
  for (std::size_t m : ms) {
    ReportRow row = exact_row("phi-table", std::to_string(m), sequence[m], "exact");
    row.steps = m;
    row.details_name = "set";
    row.details.emplace_back("expr", set);
    out.rows.push_back(std::move(row));
  }
  return out;
}

TaskOutput phi_task(const System& T, const std::string& set, const Budgets& budgets) {
  const SetClass A = parse_set_expr(set, T.space());
  TaskOutput out;
  out.rows.push_back(phi_row("phi", set, phi(T, A, budgets.m_max)));
  return out;
}

TaskOutput phi_star_task(const System& T, const std::string& set, const Budgets& budgets) {
  const SetClass A = parse_set_expr(set, T.space());
  const PhiStarResult r = phi_star(T, A, budgets.exponent_budget, budgets.m_max);
  ReportRow row = phi_row("phi-star", set, r.value);
  row.details_name = "powers";
  row.details.emplace_back("k0", r.profile.k0 ? std::to_string(*r.profile.k0) : "none");
  row.details.emplace_back("classes", join(r.profile.classes));
  row.details.emplace_back("kappa", r.profile.kappa.get_str());
  row.details.emplace_back("explored", join(r.profile.explored));
  row.details.emplace_back("attained_at", r.attained_at ? std::to_string(*r.attained_at) : "none");
  TaskOutput out;
  out.rows.push_back(std::move(row));
  return out;
}

TaskOutput probe_task(const System& T, const std::string& set, const ProbeOptions& options) {
  const SetClass A = parse_set_expr(set, T.space());
  TaskOutput out;
  out.rows = probe_rows(continuity_probe(T, A, options));
  for (ReportRow& row : out.rows) {
    if (row.param == "point") row.param = set;
  }
  return out;
}

TaskOutput witness_task(const System& T, const std::string& set, const Scalar& eps, std::optional<std::uint64_t> height,
                        std::optional<Scalar> radius, const Budgets& budgets) {
  const SetClass A = parse_set_expr(set, T.space());
  std::uint64_t n0 = height.value_or(0);
  if (!height) {
    if (!radius) throw UsageError("witness needs a height or a radius");
    const SetClass hull = full_saturation(T, A, budgets.m_max).set;
    n0 = height_for_radius(measure(complement(hull)), *radius);
  }
  const DiscontinuityWitness w = discontinuity_witness(T, A, eps, n0, budgets.m_max);
  ReportRow row = exact_row("witness", set, w.jump, "witness");
  row.steps = n0;
  row.details.emplace_back("set", to_text(w.witness));
  row.details.emplace_back("distance", w.distance.to_string());
  row.details.emplace_back("phi_point", w.phi_point.lower.to_string());
  row.details.emplace_back("phi_witness", w.phi_witness.lower.to_string());
  row.details.emplace_back("jump", w.jump.to_string());
  row.details.emplace_back("guarantee", w.guarantee.to_string());
  row.details.emplace_back("height", std::to_string(n0));
  if (radius) row.details.emplace_back("radius", radius->to_string());
  TaskOutput out;
  out.violation = !(w.jump > w.guarantee) || (radius && !(w.distance < *radius));
  if (out.violation) row.certificate = "violated";
  out.rows.push_back(std::move(row));
  return out;
}

TaskOutput tower_task(const System& T, const std::string& region_text, std::uint64_t height, const Scalar& eps) {
  const SetClass region = parse_set_expr(region_text, T.space());
  const RokhlinTower tower = rokhlin_tower(T, region, height, eps);
  const bool disjoint = tower_floors_disjoint(T, tower.base, height);
  const Scalar covered = measure(region) - tower.residual_measure;
  const bool enough = covered > (Scalar(1) - eps) * measure(region);
  ReportRow row = exact_row("tower", "n0=" + std::to_string(height) + " eps=" + eps.to_string(), covered,
                            disjoint && enough ? "verified" : "violated");
  row.steps = tower.resolution;
  row.details_name = "tower";
  row.details.emplace_back("region", to_text(tower.region));
  row.details.emplace_back("base", to_text(tower.base));
  row.details.emplace_back("base_measure", measure(tower.base).to_string());
  row.details.emplace_back("residual", tower.residual_measure.to_string());
  row.details.emplace_back("resolution", std::to_string(tower.resolution));
  TaskOutput out;
  out.violation = !(disjoint && enough);
  out.rows.push_back(std::move(row));
  return out;
}

TaskOutput decompose_task(const System& T) {
  const Decomposition d = ergodic_decomposition(T);
  TaskOutput out;
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    ReportRow row = exact_row("decompose", std::to_string(i), d.components[i].measure, "ergodic-component");
    row.details_name = "component";
    row.details.emplace_back("set", to_text(d.components[i].set));
    if (d.orbit_granularity) row.details.emplace_back("orbit_granularity", std::to_string(*d.orbit_granularity));
    out.rows.push_back(std::move(row));
  }
  return out;
}

TaskOutput check_task(const std::string& suite, std::uint64_t seed, std::vector<std::string>* timings) {
  TaskOutput out;
  for (const checks::CheckOutcome& outcome : checks::run_checks(suite, seed)) {
    ReportRow row = exact_row("check", outcome.name, Scalar(outcome.passed ? 1 : 0), outcome.passed ? "pass" : "fail");
    row.details_name = "check";
    row.details.emplace_back("detail", outcome.detail);
    row.details.emplace_back("limit_seconds", std::to_string(static_cast<long>(outcome.limit_seconds)));
    out.violation = out.violation || !outcome.passed;
    if (timings != nullptr) {
      std::ostringstream line;
      line << outcome.name << ": " << (outcome.passed ? "PASS" : "FAIL") << " in " << outcome.seconds << " s";
      timings->push_back(line.str());
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace ergolab::runner
