// ergolab command-line front end. Exit codes: 0 ok, 1 property violation,
// 2 usage, parse or input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ergolab/errors.hpp"
#include "ergolab/parse.hpp"
#include "ergolab/runner.hpp"

namespace {

using namespace ergolab;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Common {
  std::string system_file;
  std::string system_text;
  std::string set;
  std::size_t m_max = kDefaultMMax;
  std::uint64_t seed = 0;
  std::string format = "csv";
  bool decimal = false;
  std::string output;
};

enum class SetFlag { none, optional, required };

void add_common(CLI::App& cmd, Common& c, SetFlag set_flag) {
  auto* file = cmd.add_option("--system", c.system_file, "System spec file");
  auto* text = cmd.add_option("--system-text", c.system_text, "System spec given inline");
  file->excludes(text);
  if (set_flag != SetFlag::none) {
    auto* set = cmd.add_option("--set", c.set, "Set expression");
    if (set_flag == SetFlag::required) set->required();
  }
  cmd.add_option("--m-max", c.m_max, "Step budget for saturations")->capture_default_str();
  cmd.add_option("--seed", c.seed, "Seed of the counter-based generator")->capture_default_str();
  cmd.add_option("--format", c.format, "csv, json or markdown")->capture_default_str();
  cmd.add_flag("--decimal", c.decimal, "Add decimal columns next to the exact ones");
  cmd.add_option("-o,--output", c.output, "Write the report here instead of stdout");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string system_text(const Common& c) {
  if (!c.system_text.empty()) return c.system_text;
  if (!c.system_file.empty()) return read_file(c.system_file);
  throw UsageError("give --system FILE or --system-text TEXT");
}

void emit(const Report& report, ReportFormat format, bool decimal, const std::string& output) {
  const std::string text = render(report, format, decimal);
  if (output.empty()) {
    std::cout << text;
  } else {
    runner::write_atomically(output, text);
  }
}

int finish(const Common& c, const System& T, runner::TaskOutput out, std::size_t exponent_budget = 0) {
  Report report;
  report.provenance = default_provenance();
  report.provenance.seed = c.seed;
  report.provenance.system = to_spec_text(T);
  report.provenance.budgets.emplace_back("m_max", std::to_string(c.m_max));
  if (exponent_budget != 0) report.provenance.budgets.emplace_back("exponent_budget", std::to_string(exponent_budget));
  report.rows = std::move(out.rows);
  emit(report, parse_report_format(c.format), c.decimal, c.output);
  return out.violation ? kViolation : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact experiments with wandering rates of measure-preserving systems"};
  app.set_version_flag("--version", std::string("ergolab ") + ERGOLAB_VERSION);
  app.require_subcommand(1);

  Common common;

  auto* phi_cmd = app.add_subcommand("phi", "phi(A), or the table of phi_m(A) with --table");
  add_common(*phi_cmd, common, SetFlag::required);
  std::string table;
  phi_cmd->add_option("--table", table, "Values of m, e.g. 0..4 or 0,1,8");

  auto* star_cmd = app.add_subcommand("phistar", "phi*(A) = inf over powers of phi");
  add_common(*star_cmd, common, SetFlag::required);
  std::uint64_t exponent_budget = kDefaultExponentBudget;
  star_cmd->add_option("--exponent-budget", exponent_budget, "Largest power explored")->capture_default_str();

  auto* probe_cmd = app.add_subcommand("probe", "Empirical continuity probe around A");
  add_common(*probe_cmd, common, SetFlag::required);
  std::string radii;
  std::size_t samples = 16;
  std::string target = "phi";
  probe_cmd->add_option("--radii", radii, "Comma-separated radii, e.g. 1/4,1/16")->required();
  probe_cmd->add_option("--samples", samples, "Samples per radius")->capture_default_str();
  probe_cmd->add_option("--target", target, "phi or phi-star")->capture_default_str();
  probe_cmd->add_option("--exponent-budget", exponent_budget, "Largest power explored for phi-star");

  auto* witness_cmd = app.add_subcommand("witness", "Discontinuity witness C = A u E");
  add_common(*witness_cmd, common, SetFlag::required);
  std::string eps = "1/2";
  std::uint64_t height = 0;
  std::string radius;
  witness_cmd->add_option("--eps", eps, "Tower coverage defect")->capture_default_str();
  auto* height_opt = witness_cmd->add_option("--height", height, "Tower height n0");
  auto* radius_opt = witness_cmd->add_option("--radius", radius, "Target distance; picks the height");
  height_opt->excludes(radius_opt);

  auto* tower_cmd = app.add_subcommand("tower", "Rokhlin tower inside an invariant region");
  add_common(*tower_cmd, common, SetFlag::none);
  std::string region = "full";
  tower_cmd->add_option("--region", region, "Invariant region")->capture_default_str();
  tower_cmd->add_option("--n0", height, "Tower height")->required();
  tower_cmd->add_option("--eps", eps, "Coverage defect")->required();

  auto* decompose_cmd = app.add_subcommand("decompose", "Ergodic decomposition");
  add_common(*decompose_cmd, common, SetFlag::none);

  auto* check_cmd = app.add_subcommand("check", "Run an acceptance suite");
  std::string suite = "all";
  check_cmd->add_option("suite", suite, "Suite name or 'all'")->capture_default_str();
  check_cmd->add_option("--seed", common.seed, "Seed")->capture_default_str();
  check_cmd->add_option("--format", common.format, "csv, json or markdown")->capture_default_str();
  check_cmd->add_option("-o,--output", common.output, "Write the report here instead of stdout");

  auto* run_cmd = app.add_subcommand("run", "Run an experiment plan (JSON)");
  std::string plan_path;
  run_cmd->add_option("plan", plan_path, "Plan file")->required();
  run_cmd->add_option("-o,--output", common.output, "Override the plan's output file");

  auto* show_cmd = app.add_subcommand("show", "Print the canonical system spec and set expression");
  add_common(*show_cmd, common, SetFlag::optional);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) {
      const runner::ExperimentPlan plan = runner::load_plan(plan_path);
      std::vector<std::string> timings;
      const runner::RunResult result = runner::run_plan(plan, &timings);
      for (const std::string& line : timings) std::cerr << line << "\n";
      std::string output = common.output;
      if (output.empty() && plan.output) output = plan.output->string();
      emit(result.report, plan.format, plan.decimal, output);
      return result.violation ? kViolation : kOk;
    }
    if (*check_cmd) {
      std::vector<std::string> timings;
      runner::TaskOutput out = runner::check_task(suite, common.seed, &timings);
      for (const std::string& line : timings) std::cerr << line << "\n";
      Report report;
      report.provenance = default_provenance();
      report.provenance.seed = common.seed;
      report.rows = std::move(out.rows);
      emit(report, parse_report_format(common.format), false, common.output);
      return out.violation ? kViolation : kOk;
    }

    const System T = parse_system_spec(system_text(common));
    runner::Budgets budgets;
    budgets.m_max = common.m_max;
    budgets.exponent_budget = exponent_budget;

    if (*phi_cmd) {
      if (!table.empty()) return finish(common, T, runner::phi_table(T, common.set, runner::parse_index_list(table)));
      return finish(common, T, runner::phi_task(T, common.set, budgets));
    }
    if (*star_cmd) return finish(common, T, runner::phi_star_task(T, common.set, budgets), exponent_budget);
    if (*probe_cmd) {
      ProbeOptions options;
      options.radii = runner::parse_scalar_list(radii);
      options.samples_per_radius = samples;
      options.seed = common.seed;
      options.m_max = common.m_max;
      options.exponent_budget = exponent_budget;
      if (target == "phi") {
        options.target = ProbeTarget::phi;
      } else if (target == "phi-star") {
        options.target = ProbeTarget::phi_star;
      } else {
        throw UsageError("--target must be phi or phi-star");
      }
      return finish(common, T, runner::probe_task(T, common.set, options), exponent_budget);
    }
    if (*witness_cmd) {
      std::optional<std::uint64_t> h;
      std::optional<Scalar> r;
      if (*height_opt) h = height;
      if (*radius_opt) r = parse_scalar(radius);
      if (!h && !r) throw UsageError("witness needs --height or --radius");
      return finish(common, T, runner::witness_task(T, common.set, parse_scalar(eps), h, r, budgets));
    }
    if (*tower_cmd) return finish(common, T, runner::tower_task(T, region, height, parse_scalar(eps)));
    if (*decompose_cmd) return finish(common, T, runner::decompose_task(T));
    if (*show_cmd) {
      std::cout << to_spec_text(T);
      if (!common.set.empty()) std::cout << to_text(parse_set_expr(common.set, T.space())) << "\n";
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "ergolab: parse error at " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "ergolab: " << e.what() << "\n";
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "ergolab: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
