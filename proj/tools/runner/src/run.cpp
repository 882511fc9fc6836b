#include <fstream>
#include <sstream>

#include "ergolab/errors.hpp"
#include "ergolab/parse.hpp"
#include "ergolab/runner.hpp"

namespace ergolab::runner {
namespace {

std::string extension(ReportFormat format) {
  switch (format) {
    case ReportFormat::csv:
      return ".csv";
    case ReportFormat::json:
      return ".json";
    case ReportFormat::markdown:
      return ".md";
  }
  return ".txt";
}

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n\r");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t\n\r");
  return text.substr(first, last - first + 1);
}

std::size_t to_index(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size() || t[0] == '-') throw UsageError("not a non-negative integer: '" + text + "'");
  return static_cast<std::size_t>(value);
}

}  // namespace

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path temp = path;
  temp += ".partial";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write " + temp.string());
    out << content;
    out.flush();
    if (!out) throw UsageError("write failed for " + temp.string());
  }
  std::filesystem::rename(temp, path);
}

std::vector<Scalar> parse_scalar_list(const std::string& text) {
  std::vector<Scalar> out;
  std::string item;
  int depth = 0;
  for (char c : text + ",") {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      if (!trim(item).empty()) out.push_back(parse_scalar(trim(item)));
      item.clear();
    } else {
      item += c;
    }
  }
  if (out.empty()) throw UsageError("empty scalar list");
  return out;
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const std::size_t lo = to_index(text.substr(0, dots));
    const std::size_t hi = to_index(text.substr(dots + 2));
    if (hi < lo) throw UsageError("empty range '" + text + "'");
    for (std::size_t m = lo; m <= hi; ++m) out.push_back(m);
    return out;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(to_index(item));
  if (out.empty()) throw UsageError("empty index list");
  return out;
}

RunResult run_plan(const ExperimentPlan& plan, std::vector<std::string>* timings) {
  const System T = parse_system_spec(plan.system_text);
  RunResult result;
  result.report.provenance = default_provenance();
  result.report.provenance.seed = plan.seed;
  result.report.provenance.system = to_spec_text(T);
  result.report.provenance.budgets = {{"m_max", std::to_string(plan.budgets.m_max)},
                                      {"exponent_budget", std::to_string(plan.budgets.exponent_budget)}};

  for (std::size_t i = 0; i < plan.tasks.size(); ++i) {
    const PlanTask& task = plan.tasks[i];
    Budgets budgets = plan.budgets;
    if (task.m_max) budgets.m_max = *task.m_max;
    if (task.exponent_budget) budgets.exponent_budget = *task.exponent_budget;
    // Each task draws from its own stream, so adding a task never shifts another's samples.
    const std::uint64_t task_seed = task.seed.value_or(plan.seed + i);

    TaskOutput out;
    if (task.kind == "phi-table") {
      out = phi_table(T, task.set, task.ms);
    } else if (task.kind == "phi") {
      out = phi_task(T, task.set, budgets);
    } else if (task.kind == "phi-star") {
      out = phi_star_task(T, task.set, budgets);
    } else if (task.kind == "probe") {
      ProbeOptions options;
      options.radii = task.radii;
      options.samples_per_radius = task.samples;
      options.seed = task_seed;
      options.m_max = budgets.m_max;
      options.exponent_budget = budgets.exponent_budget;
      options.target = task.target;
      out = probe_task(T, task.set, options);
    } else if (task.kind == "witness") {
      out = witness_task(T, task.set, task.eps, task.height, task.radius, budgets);
    } else if (task.kind == "tower") {
      out = tower_task(T, task.set, *task.height, task.eps);
    } else if (task.kind == "check") {
      out = check_task(task.suite, plan.seed, timings);
    } else if (task.kind == "decompose") {
      out = decompose_task(T);
    }
    result.violation = result.violation || out.violation;

    if (plan.output_dir) {
      Report single{result.report.provenance, out.rows};
      std::ostringstream name;
      name << "task-" << (i + 1) << "-" << task.kind << extension(plan.format);
      write_atomically(*plan.output_dir / name.str(), render(single, plan.format, plan.decimal));
    }
    for (ReportRow& row : out.rows) result.report.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace ergolab::runner
