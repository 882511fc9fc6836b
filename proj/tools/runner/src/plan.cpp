#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ergolab/checks/suites.hpp"
#include "ergolab/errors.hpp"
#include "ergolab/parse.hpp"
#include "ergolab/runner.hpp"

namespace ergolab::runner {
namespace {

using json = nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Scalar scalar_field(const json& value, const std::string& name) {
  if (value.is_number_integer()) return Scalar(value.get<long long>());
  if (value.is_string()) return parse_scalar(value.get<std::string>());
  throw UsageError("'" + name + "' must be an integer or an exact scalar string");
}

std::uint64_t count_field(const json& value, const std::string& name) {
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
    throw UsageError("'" + name + "' must be a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

void only_keys(const json& object, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& item : object.items()) {
    if (!allowed.contains(item.key())) throw UsageError("unknown field '" + item.key() + "' in " + where);
  }
}

std::string required_string(const json& object, const std::string& key, const std::string& where) {
  if (!object.contains(key) || !object[key].is_string()) throw UsageError(where + " needs a string '" + key + "'");
  return object[key].get<std::string>();
}

PlanTask parse_task(const json& t, std::size_t index) {
  const std::string where = "task " + std::to_string(index + 1);
  if (!t.is_object()) throw UsageError(where + " must be an object");
  PlanTask task;
  task.kind = required_string(t, "task", where);
  const std::string label = where + " (" + task.kind + ")";
  if (t.contains("m_max")) task.m_max = count_field(t["m_max"], "m_max");
  if (t.contains("exponent_budget")) task.exponent_budget = count_field(t["exponent_budget"], "exponent_budget");

  if (task.kind == "phi-table") {
    only_keys(t, {"task", "set", "m"}, label);
    task.set = required_string(t, "set", label);
    if (!t.contains("m")) throw UsageError(label + " needs 'm'");
    if (t["m"].is_string()) {
      task.ms = parse_index_list(t["m"].get<std::string>());
    } else if (t["m"].is_array()) {
      for (const json& m : t["m"]) task.ms.push_back(count_field(m, "m"));
    } else {
      throw UsageError(label + ": 'm' must be a list or a range such as \"0..4\"");
    }
  } else if (task.kind == "phi") {
    only_keys(t, {"task", "set", "m_max"}, label);
    task.set = required_string(t, "set", label);
  } else if (task.kind == "phi-star") {
    only_keys(t, {"task", "set", "m_max", "exponent_budget"}, label);
    task.set = required_string(t, "set", label);
  } else if (task.kind == "probe") {
    only_keys(t, {"task", "set", "radii", "samples", "seed", "target", "m_max", "exponent_budget"}, label);
    task.set = required_string(t, "set", label);
    if (!t.contains("radii") || !t["radii"].is_array()) throw UsageError(label + " needs a 'radii' list");
    for (const json& r : t["radii"]) task.radii.push_back(scalar_field(r, "radii"));
    if (t.contains("samples")) task.samples = count_field(t["samples"], "samples");
    if (t.contains("seed")) task.seed = count_field(t["seed"], "seed");
    if (t.contains("target")) {
      const std::string target = t["target"].get<std::string>();
      if (target == "phi") {
        task.target = ProbeTarget::phi;
      } else if (target == "phi-star") {
        task.target = ProbeTarget::phi_star;
      } else {
        throw UsageError(label + ": target must be phi or phi-star");
      }
    }
  } else if (task.kind == "witness") {
    only_keys(t, {"task", "set", "eps", "height", "radius", "m_max"}, label);
    task.set = required_string(t, "set", label);
    if (t.contains("eps")) task.eps = scalar_field(t["eps"], "eps");
    if (t.contains("height")) task.height = count_field(t["height"], "height");
    if (t.contains("radius")) task.radius = scalar_field(t["radius"], "radius");
    if (!task.height && !task.radius) throw UsageError(label + " needs 'height' or 'radius'");
  } else if (task.kind == "tower") {
    only_keys(t, {"task", "region", "n0", "eps"}, label);
    task.set = t.contains("region") ? required_string(t, "region", label) : "full";
    if (!t.contains("n0")) throw UsageError(label + " needs 'n0'");
    task.height = count_field(t["n0"], "n0");
    if (!t.contains("eps")) throw UsageError(label + " needs 'eps'");
    task.eps = scalar_field(t["eps"], "eps");
  } else if (task.kind == "check") {
    only_keys(t, {"task", "suite"}, label);
    task.suite = required_string(t, "suite", label);
    if (!checks::is_suite_name(task.suite)) throw UsageError(label + ": unknown suite '" + task.suite + "'");
  } else if (task.kind == "decompose") {
    only_keys(t, {"task"}, label);
  } else {
    throw UsageError(where + ": unknown task '" + task.kind + "'");
  }
  return task;
}

}  // namespace

ExperimentPlan parse_plan(const std::string& json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("plan: ") + e.what(), 1, e.byte);
  }
  if (!doc.is_object()) throw UsageError("plan must be a JSON object");
  only_keys(doc, {"system", "system_file", "seed", "m_max", "exponent_budget", "format", "decimal", "output",
                  "output_dir", "tasks"},
            "plan");

  ExperimentPlan plan;
  if (doc.contains("system") == doc.contains("system_file")) {
    throw UsageError("plan needs exactly one of 'system' and 'system_file'");
  }
  if (doc.contains("system")) {
    plan.system_text = required_string(doc, "system", "plan");
  } else {
    plan.system_text = read_file(base_dir / required_string(doc, "system_file", "plan"));
  }
  if (doc.contains("seed")) plan.seed = count_field(doc["seed"], "seed");
  if (doc.contains("m_max")) plan.budgets.m_max = count_field(doc["m_max"], "m_max");
  if (doc.contains("exponent_budget")) {
    plan.budgets.exponent_budget = count_field(doc["exponent_budget"], "exponent_budget");
  }
  if (doc.contains("format")) plan.format = parse_report_format(required_string(doc, "format", "plan"));
  if (doc.contains("decimal")) plan.decimal = doc["decimal"].get<bool>();
  if (doc.contains("output")) plan.output = base_dir / required_string(doc, "output", "plan");
  if (doc.contains("output_dir")) plan.output_dir = base_dir / required_string(doc, "output_dir", "plan");
  if (!doc.contains("tasks") || !doc["tasks"].is_array()) throw UsageError("plan needs a 'tasks' list");
  for (std::size_t i = 0; i < doc["tasks"].size(); ++i) plan.tasks.push_back(parse_task(doc["tasks"][i], i));

  // Validate before running anything.
  const System system = parse_system_spec(plan.system_text);
  for (const PlanTask& task : plan.tasks) {
    if (!task.set.empty()) parse_set_expr(task.set, system.space());
  }
  return plan;
}

ExperimentPlan load_plan(const std::filesystem::path& path) {
  return parse_plan(read_file(path), path.parent_path());
}

}  // namespace ergolab::runner
