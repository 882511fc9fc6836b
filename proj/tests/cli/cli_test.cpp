#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct Invocation {
  int code = -1;
  std::string out;
};

// Runs the binary through the shell; stderr is folded into the output.
Invocation ergolab(const std::string& args) {
  const std::string command = std::string(ERGOLAB_BINARY) + " " + args + " 2>&1";
  Invocation run;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return run;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) run.out.append(buffer.data(), n);
  const int status = pclose(pipe);
  run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

const std::string kData = ERGOLAB_TEST_DATA;

TEST(Cli, PhiTable) {
  const Invocation r = ergolab("phi --system-text 'kind=odometer base=2' --set 'cyl(\"00\")' --table 0..4");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("task,param,lower,upper,exact,steps,certificate\n"
                       "phi-table,0,1/4,1/4,true,0,exact\n"
                       "phi-table,1,1/2,1/2,true,1,exact\n"
                       "phi-table,2,3/4,3/4,true,2,exact\n"
                       "phi-table,3,1,1,true,3,exact\n"
                       "phi-table,4,1,1,true,4,exact\n"),
            std::string::npos)
      << r.out;
}

TEST(Cli, PhiFromFileWithProvenance) {
  const Invocation r = ergolab("phi --system " + kData + "/two_odometers.sys --set 'atoms{0}' --seed 5");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("# seed: 5\n"), std::string::npos);
  EXPECT_NE(r.out.find("# budget m_max: 4096\n"), std::string::npos);
  EXPECT_NE(r.out.find("phi,atoms{0},1/2,1/2,true,0,stabilized"), std::string::npos) << r.out;
}

TEST(Cli, PhiStarJson) {
  const Invocation r = ergolab("phistar --system " + kData + "/odometer2.sys --set 'cyl(\"0\")' --format json");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("\"lower\": \"1/2\""), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"attained_at\": \"2\""), std::string::npos) << r.out;
}

TEST(Cli, ProbeWitnessTowerDecompose) {
  const std::string sys = "--system " + kData + "/two_odometers.sys";
  const Invocation probe = ergolab("probe " + sys + " --set 'atoms{0}' --radii 1/4,1/64 --samples 4");
  EXPECT_EQ(probe.code, 0) << probe.out;
  EXPECT_NE(probe.out.find("probe,witness,"), std::string::npos) << probe.out;

  const Invocation witness = ergolab("witness " + sys + " --set 'atoms{0}' --height 32");
  EXPECT_EQ(witness.code, 0) << witness.out;
  EXPECT_NE(witness.out.find("witness,atoms{0},1/2,1/2,true,32,witness"), std::string::npos) << witness.out;

  const Invocation tower = ergolab("tower --system " + kData + "/odometer2.sys --n0 3 --eps 1/4 --format json");
  EXPECT_EQ(tower.code, 0) << tower.out;
  EXPECT_NE(tower.out.find("\"lower\": \"15/16\""), std::string::npos) << tower.out;

  const Invocation decompose = ergolab("decompose --system " + kData + "/odometer6_power4.sys");
  EXPECT_EQ(decompose.code, 0) << decompose.out;
  EXPECT_NE(decompose.out.find("decompose,3,1/4,1/4,true,0,ergodic-component"), std::string::npos) << decompose.out;
}

TEST(Cli, DecimalColumn) {
  const Invocation r = ergolab("phi --system-text 'kind=rotation alpha=1/5' --set 'interval(0, 1/10)' --decimal");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("lower_decimal,upper_decimal"), std::string::npos);
  EXPECT_NE(r.out.find(",1/2,1/2,true,4,stabilized,0.5,0.5"), std::string::npos) << r.out;
}

TEST(Cli, CheckSuite) {
  const Invocation r = ergolab("check tm1-suite");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("check,tm1,1,1,true,0,pass"), std::string::npos) << r.out;
}

TEST(Cli, RunPlans) {
  const Invocation table = ergolab("run " + kData + "/plans/phi_table.json");
  EXPECT_EQ(table.code, 0) << table.out;
  EXPECT_NE(table.out.find("phi-table,4,1,1,true,4,exact"), std::string::npos) << table.out;

  const Invocation tm1 = ergolab("run " + kData + "/plans/tm1.json");
  EXPECT_EQ(tm1.code, 0) << tm1.out;

  const Invocation golden = ergolab("run " + kData + "/plans/totally_ergodic.json");
  EXPECT_EQ(golden.code, 0) << golden.out;
  EXPECT_NE(golden.out.find("| phi-star |"), std::string::npos) << golden.out;
}

TEST(Cli, RunIsDeterministic) {
  const Invocation a = ergolab("run " + kData + "/plans/tm1.json");
  const Invocation b = ergolab("run " + kData + "/plans/tm1.json");
  // stderr carries timings; compare the JSON body only.
  EXPECT_EQ(a.out.substr(a.out.find('{')), b.out.substr(b.out.find('{')));
}

TEST(Cli, ExitCodes) {
  const Invocation malformed = ergolab("run " + kData + "/plans/malformed.json");
  EXPECT_EQ(malformed.code, 2);
  EXPECT_NE(malformed.out.find("parse error"), std::string::npos) << malformed.out;

  EXPECT_EQ(ergolab("phi --system-text 'kind=odometer base=2' --set 'cyl(\"2\")'").code, 2);
  EXPECT_EQ(ergolab("phi --set full").code, 2);
  EXPECT_EQ(ergolab("frobnicate").code, 2);
  EXPECT_EQ(ergolab("check nope").code, 2);
  EXPECT_EQ(ergolab("witness --system-text 'kind=odometer base=2' --set 'cyl(\"0\")' --height 4").code, 2);
  EXPECT_EQ(ergolab("--help").code, 0);
  EXPECT_EQ(ergolab("phi --system-text 'kind=permutation perm=[0,0]' --set full").code, 2);
}

TEST(Cli, ShowRoundTrips) {
  const Invocation r = ergolab("show --system " + kData + "/odometer6_power4.sys --set 'cyl(\"0\") | cyl(\"1\") | cyl(\"2\")'");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out, "kind=power k=4 of { kind=odometer base=6 }\ncyl(\"0\") | cyl(\"1\") | cyl(\"2\")\n");
}

TEST(Cli, OutputFile) {
  const std::string path = "/tmp/ergolab-cli-output.csv";
  std::remove(path.c_str());
  const Invocation r = ergolab("decompose --system " + kData + "/swap_pairs.sys -o " + path);
  EXPECT_EQ(r.code, 0) << r.out;
  FILE* f = std::fopen(path.c_str(), "r");
  ASSERT_NE(f, nullptr);
  std::fclose(f);
}

}  // namespace
