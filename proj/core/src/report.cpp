#include "ergolab/report.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ergolab/errors.hpp"
#include "ergolab/set_class.hpp"

namespace ergolab {
namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string one_line(const std::string& text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (c == '\n' || c == '\r' || c == '\t' || c == ' ') {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

std::string decimal_text(const Scalar& value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value.to_double());
  return buffer;
}

std::vector<std::string> columns(bool decimal) {
  std::vector<std::string> names{"task", "param", "lower", "upper", "exact", "steps", "certificate"};
  if (decimal) {
    names.emplace_back("lower_decimal");
    names.emplace_back("upper_decimal");
  }
  return names;
}

std::vector<std::string> cells(const ReportRow& row, bool decimal) {
  std::vector<std::string> out{row.task,           row.param, row.lower.to_string(), row.upper.to_string(),
                               row.exact ? "true" : "false", std::to_string(row.steps), row.certificate};
  if (decimal) {
    out.push_back(decimal_text(row.lower));
    out.push_back(decimal_text(row.upper));
  }
  return out;
}

std::string render_csv(const Report& report, bool decimal) {
  std::ostringstream out;
  const Provenance& p = report.provenance;
  out << "# tool: ergolab " << p.tool_version << "\n";
  out << "# seed: " << p.seed << "\n";
  if (!p.system.empty()) out << "# system: " << one_line(p.system) << "\n";
  for (const auto& [name, value] : p.budgets) out << "# budget " << name << ": " << value << "\n";
  const auto header = columns(decimal);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const ReportRow& row : report.rows) {
    const auto values = cells(row, decimal);
    for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << csv_field(values[i]);
    out << "\n";
  }
  return out.str();
}

std::string render_json(const Report& report, bool decimal) {
  using json = nlohmann::ordered_json;
  const Provenance& p = report.provenance;
  json doc;
  doc["schema"] = kReportSchema;
  json provenance;
  provenance["tool"] = "ergolab " + p.tool_version;
  provenance["seed"] = p.seed;
  provenance["system"] = one_line(p.system);
  json budgets = json::object();
  for (const auto& [name, value] : p.budgets) budgets[name] = value;
  provenance["budgets"] = budgets;
  doc["provenance"] = provenance;
  json rows = json::array();
  for (const ReportRow& row : report.rows) {
    json r;
    r["task"] = row.task;
    r["param"] = row.param;
    r["lower"] = row.lower.to_string();
    r["upper"] = row.upper.to_string();
    r["exact"] = row.exact;
    r["steps"] = row.steps;
    r["certificate"] = row.certificate;
    if (decimal) {
      r["lower_decimal"] = decimal_text(row.lower);
      r["upper_decimal"] = decimal_text(row.upper);
    }
    if (!row.details.empty()) {
      json nested;
      for (const auto& [key, value] : row.details) nested[key] = value;
      r[row.details_name] = nested;
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

std::string markdown_cell(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string render_markdown(const Report& report, bool decimal) {
  std::ostringstream out;
  const Provenance& p = report.provenance;
  out << "ergolab " << p.tool_version << ", seed " << p.seed;
  for (const auto& [name, value] : p.budgets) out << ", " << name << " " << value;
  out << "\n\n";
  if (!p.system.empty()) out << "System: `" << one_line(p.system) << "`\n\n";
  const auto header = columns(decimal);
  out << "|";
  for (const auto& h : header) out << " " << h << " |";
  out << "\n|";
  for (std::size_t i = 0; i < header.size(); ++i) out << " --- |";
  out << "\n";
  for (const ReportRow& row : report.rows) {
    out << "|";
    for (const auto& cell : cells(row, decimal)) out << " " << markdown_cell(cell) << " |";
    out << "\n";
  }
  return out.str();
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  if (name == "markdown" || name == "md") return ReportFormat::markdown;
  throw UsageError("unknown report format '" + std::string(name) + "' (csv, json, markdown)");
}

std::string render(const Report& report, ReportFormat format, bool decimal) {
  switch (format) {
    case ReportFormat::csv:
      return render_csv(report, decimal);
    case ReportFormat::json:
      return render_json(report, decimal);
    case ReportFormat::markdown:
      return render_markdown(report, decimal);
  }
  return {};
}

Provenance default_provenance() {
  Provenance p;
  p.tool_version = ERGOLAB_VERSION;
  return p;
}

ReportRow phi_row(std::string task, std::string param, const PhiResult& result) {
  ReportRow row;
  row.task = std::move(task);
  row.param = std::move(param);
  row.lower = result.lower;
  row.upper = result.upper;
  row.exact = result.exact;
  row.steps = result.steps_used;
  row.certificate = to_string(result.certificate);
  return row;
}

std::vector<ReportRow> probe_rows(const ProbeReport& report) {
  const std::string target = report.target == ProbeTarget::phi ? "phi" : "phi-star";
  std::vector<ReportRow> rows;
  ReportRow point = phi_row("probe", "point", report.value_at_point);
  point.details_name = "point";
  point.details.emplace_back("target", target);
  point.details.emplace_back("set", to_text(report.point));
  point.details.emplace_back("verdict", to_string(report.verdict));
  for (std::size_t i = 0; i < report.notes.size(); ++i) {
    point.details.emplace_back("note" + std::to_string(i + 1), report.notes[i]);
  }
  rows.push_back(std::move(point));

  for (const RadiusObservation& obs : report.radii) {
    ReportRow row;
    row.task = "probe";
    row.param = "radius=" + obs.radius.to_string();
    row.lower = obs.sup_jump;
    row.upper = obs.sup_jump;
    row.exact = true;
    row.steps = obs.samples;
    row.certificate = "sup-jump";
    row.details_name = "samples";
    row.details.emplace_back("evaluated", std::to_string(obs.samples));
    row.details.emplace_back("bracketed", std::to_string(obs.bracketed));
    if (obs.witness_jump) row.details.emplace_back("witness_jump", obs.witness_jump->to_string());
    rows.push_back(std::move(row));
  }

  if (report.witness) {
    const ProbeWitness& w = *report.witness;
    ReportRow row;
    row.task = "probe";
    row.param = "witness";
    row.lower = w.jump;
    row.upper = w.jump;
    row.exact = true;
    row.certificate = "witness";
    row.details.emplace_back("set", to_text(w.set));
    row.details.emplace_back("distance", w.distance.to_string());
    row.details.emplace_back("jump", w.jump.to_string());
    row.details.emplace_back("guarantee", w.guarantee.to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ergolab
