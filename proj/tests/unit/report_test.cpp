#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "ergolab/errors.hpp"
#include "ergolab/report.hpp"

namespace ergolab {
namespace {

Scalar q(long p, long r) { return Scalar::fraction(p, r); }

Report sample() {
  Report r;
  r.provenance.tool_version = "9.9.9";
  r.provenance.seed = 4;
  r.provenance.system = "kind=odometer\nbase=2\n";
  r.provenance.budgets = {{"m_max", "4096"}};
  ReportRow row;
  row.task = "phi";
  row.param = "cyl(\"0\") | cyl(\"11\")";
  row.lower = q(3, 4);
  row.upper = Scalar(1);
  row.exact = false;
  row.steps = 12;
  row.certificate = "budget-exhausted";
  row.details = {{"set", "full"}};
  r.rows.push_back(row);
  return r;
}

TEST(Report, CsvHeaderProvenanceAndQuoting) {
  const std::string csv = render(sample(), ReportFormat::csv);
  EXPECT_EQ(csv,
            "# tool: ergolab 9.9.9\n"
            "# seed: 4\n"
            "# system: kind=odometer base=2\n"
            "# budget m_max: 4096\n"
            "task,param,lower,upper,exact,steps,certificate\n"
            "phi,\"cyl(\"\"0\"\") | cyl(\"\"11\"\")\",3/4,1,false,12,budget-exhausted\n");
}

TEST(Report, DecimalColumnsAreOptIn) {
  const std::string csv = render(sample(), ReportFormat::csv, true);
  EXPECT_NE(csv.find("certificate,lower_decimal,upper_decimal\n"), std::string::npos);
  EXPECT_NE(csv.find(",0.75,1\n"), std::string::npos);
  EXPECT_EQ(render(sample(), ReportFormat::csv).find("0.75"), std::string::npos);
}

TEST(Report, JsonMirrorsCsvWithNestedDetails) {
  const auto doc = nlohmann::json::parse(render(sample(), ReportFormat::json));
  EXPECT_EQ(doc["schema"], "ergolab-report/1");
  EXPECT_EQ(doc["provenance"]["seed"], 4);
  const auto& row = doc["rows"][0];
  EXPECT_EQ(row["lower"], "3/4");
  EXPECT_EQ(row["exact"], false);
  EXPECT_EQ(row["witness"]["set"], "full");
}

TEST(Report, Markdown) {
  const std::string md = render(sample(), ReportFormat::markdown);
  EXPECT_NE(md.find("| task | param |"), std::string::npos);
  EXPECT_NE(md.find("cyl(\"0\") \\| cyl(\"11\")"), std::string::npos);
}

TEST(Report, FormatNames) {
  EXPECT_EQ(parse_report_format("md"), ReportFormat::markdown);
  EXPECT_THROW(parse_report_format("xml"), UsageError);
}

TEST(Report, ProbeRowsFlagTheWitness) {
  const System T = System::product(System::identity(2), System::odometer(2));
  const SetClass a = SetClass::product(T.space(), {SetClass::full(T.space()->fiber()), SetClass::empty(T.space()->fiber())});
  ProbeOptions o;
  o.radii = {q(1, 16)};
  const auto rows = probe_rows(continuity_probe(T, a, o));
  ASSERT_EQ(rows.size(), 3U);
  EXPECT_EQ(rows[0].param, "point");
  EXPECT_EQ(rows[1].param, "radius=1/16");
  EXPECT_EQ(rows[2].certificate, "witness");
  EXPECT_GT(rows[2].lower, q(1, 4));
}

}  // namespace
}  // namespace ergolab
