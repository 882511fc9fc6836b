#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ergolab/probes.hpp"
#include "ergolab/scalar.hpp"

namespace ergolab {

/// Version tag written into every JSON report.
inline constexpr std::string_view kReportSchema = "ergolab-report/1";

/// One line of the CSV schema `task,param,lower,upper,exact,steps,certificate`.
struct ReportRow {
  std::string task;
  std::string param;
  Scalar lower;
  Scalar upper;
  bool exact = false;
  std::uint64_t steps = 0;
  std::string certificate;
  /// Extra exact fields. JSON nests them under `details_name`; CSV and
  /// markdown leave them out.
  std::vector<std::pair<std::string, std::string>> details;
  std::string details_name = "witness";
};

struct Provenance {
  std::string tool_version;
  std::uint64_t seed = 0;
  std::string system;
  /// Budget name and value, in output order.
  std::vector<std::pair<std::string, std::string>> budgets;
};

struct Report {
  Provenance provenance;
  std::vector<ReportRow> rows;
};

enum class ReportFormat { csv, json, markdown };

/// "csv", "json" or "markdown" (also "md"); UsageError otherwise.
ReportFormat parse_report_format(std::string_view name);

/// Deterministic rendering. With `decimal`, lower_decimal/upper_decimal
/// columns are added next to the exact ones.
std::string render(const Report& report, ReportFormat format, bool decimal = false);

Provenance default_provenance();

/// Row for a phi / phi* value.
ReportRow phi_row(std::string task, std::string param, const PhiResult& result);

/// One row for the value at the point, one per radius, and a row with
/// certificate "witness" when the probe built one.
std::vector<ReportRow> probe_rows(const ProbeReport& report);

}  // namespace ergolab
