#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ergolab/report.hpp"
#include "ergolab/system.hpp"

namespace ergolab::runner {

/// Budgets shared by every task unless a task overrides them.
struct Budgets {
  std::size_t m_max = kDefaultMMax;
  std::uint64_t exponent_budget = kDefaultExponentBudget;
};

/// Rows produced by one task, plus whether it observed a property violation
/// (a witness below its guarantee, a tower that fails verification, a
/// failing check suite).
struct TaskOutput {
  std::vector<ReportRow> rows;
  bool violation = false;
};

TaskOutput phi_table(const System& T, const std::string& set, const std::vector<std::size_t>& ms);
TaskOutput phi_task(const System& T, const std::string& set, const Budgets& budgets);
TaskOutput phi_star_task(const System& T, const std::string& set, const Budgets& budgets);
TaskOutput probe_task(const System& T, const std::string& set, const ProbeOptions& options);
/// Either `height` or `radius` selects the tower height.
TaskOutput witness_task(const System& T, const std::string& set, const Scalar& eps, std::optional<std::uint64_t> height,
                        std::optional<Scalar> radius, const Budgets& budgets);
TaskOutput tower_task(const System& T, const std::string& region, std::uint64_t height, const Scalar& eps);
TaskOutput decompose_task(const System& T);
/// Check rows carry no timings, so reports stay byte-identical across runs;
/// timings go to `timings` when given.
TaskOutput check_task(const std::string& suite, std::uint64_t seed, std::vector<std::string>* timings = nullptr);

/// One entry of a plan's task list. Fields not used by `kind` stay default.
struct PlanTask {
  /// phi-table, phi, phi-star, probe, witness, tower, check or decompose.
  std::string kind;
  /// Set expression (region for tower).
  std::string set;
  std::vector<std::size_t> ms;
  std::optional<std::size_t> m_max;
  std::optional<std::uint64_t> exponent_budget;
  std::vector<Scalar> radii;
  std::size_t samples = 16;
  std::optional<std::uint64_t> seed;
  ProbeTarget target = ProbeTarget::phi;
  Scalar eps = Scalar::fraction(1, 2);
  std::optional<std::uint64_t> height;
  std::optional<Scalar> radius;
  std::string suite;
};

/// Parsed experiment plan (JSON). See README for the format.
struct ExperimentPlan {
  std::string system_text;
  std::uint64_t seed = 0;
  Budgets budgets;
  ReportFormat format = ReportFormat::csv;
  bool decimal = false;
  std::optional<std::filesystem::path> output;
  std::optional<std::filesystem::path> output_dir;
  std::vector<PlanTask> tasks;
};

/// Reads and validates a plan: the system parses, every set expression
/// parses against its space, every task kind and field is known.
/// Relative paths are resolved against the plan's directory.
ExperimentPlan load_plan(const std::filesystem::path& path);
ExperimentPlan parse_plan(const std::string& json_text, const std::filesystem::path& base_dir);

struct RunResult {
  Report report;
  bool violation = false;
};

RunResult run_plan(const ExperimentPlan& plan, std::vector<std::string>* timings = nullptr);

/// Writes through a temporary file in the same directory, then renames.
void write_atomically(const std::filesystem::path& path, const std::string& content);

/// "1/4,1/16" or a JSON-style list of strings.
std::vector<Scalar> parse_scalar_list(const std::string& text);

/// "0..4" or "0,1,2,8".
std::vector<std::size_t> parse_index_list(const std::string& text);

}  // namespace ergolab::runner
