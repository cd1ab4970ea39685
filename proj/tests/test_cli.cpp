#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "qstat/io.hpp"

namespace {

struct run_result {
  int code = -1;
  std::string out;
};

/// Runs the CLI with `args`; stderr is folded into the output when `merge` is set.
run_result run(const std::string& args, bool merge = false, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + QSTAT_CLI_PATH + std::string(" ") + args +
                          (merge ? " 2>&1" : " 2>/dev/null");
  run_result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> json_coeffs(const std::string& out) {
  return qstat::io::json::parse(out).at("coeffs").get<std::vector<std::string>>();
}

} // namespace

TEST(CliExpand, EtaRatio) {
  const auto r = run("expand \"quot([poch(5,5)^4],[poch(1,1)])\" --order 4");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_coeffs(r.out), (std::vector<std::string>{"1", "1", "2", "3", "5"}));
  const auto j = qstat::io::json::parse(r.out);
  EXPECT_EQ(j["ring"], "rational");
  EXPECT_EQ(j["order"], 4);
}

TEST(CliExpand, NamedSeries) {
  EXPECT_EQ(json_coeffs(run("expand A --order 0").out), std::vector<std::string>{"1"});
  EXPECT_EQ(json_coeffs(run("expand R1 --order 3").out), (std::vector<std::string>{"0", "1", "1", "1"}));
  EXPECT_EQ(json_coeffs(run("--order 3 expand R1").out), (std::vector<std::string>{"0", "1", "1", "1"}));
}

TEST(CliExpand, RingsAndFormats) {
  const auto c = run("expand \"z^2 + q\" --order 1 --ring cyclo");
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(json_coeffs(c.out), (std::vector<std::string>{"(0,0,1,0)", "(1,0,0,0)"}));
  const auto g = run("expand \"poch(1,1)^-1\" --order 5 --ring gf2");
  EXPECT_EQ(json_coeffs(g.out), (std::vector<std::string>{"1", "1", "0", "1", "1", "1"}));
  const auto t = run("expand \"1 - q\" --order 2 --output text");
  EXPECT_EQ(t.out, "1 - q + O(q^3)\n");
  const auto csv = run("expand \"2*q\" --order 1 --csv");
  EXPECT_EQ(csv.out, "n,coeff\n0,\"0\"\n1,\"2\"\n");
}

TEST(CliExpand, Errors) {
  const auto bad = run("expand \"poch(1,\" --order 3", true);
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("position 7"), std::string::npos) << bad.out;
  EXPECT_EQ(run("expand z --order 3").code, 2);
  EXPECT_EQ(run("expand q --ring complex").code, 2);
}

TEST(CliVerify, SingleCheck) {
  const auto r = run("verify --id T1.a --order 200");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("PASS T1.a order=200", 0), 0u) << r.out;
}

TEST(CliVerify, UnknownId) {
  const auto r = run("verify --id NOPE", true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("NOPE"), std::string::npos);
}

TEST(CliVerify, MachineReadable) {
  const auto j = run("verify --id L2.2.a --id L2.3.b --order 40 --json");
  ASSERT_EQ(j.code, 0);
  const auto parsed = qstat::io::json::parse(j.out);
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[0]["id"], "L2.2.a");
  EXPECT_EQ(parsed[1]["id"], "L2.3.b");
  EXPECT_TRUE(parsed[1]["passed"].get<bool>());
  const auto c = run("verify --id C5.3 --order 30 --output csv");
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out.rfind("id,order,passed,first_mismatch", 0), 0u);
  EXPECT_NE(c.out.find("C5.3,30,true,,"), std::string::npos);
}

TEST(CliVerify, EverythingAtLowOrder) {
  const auto r = run("verify --order 20 --seed 99");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(CliStats, PartitionsOfFour) {
  const auto r = run("stats --n 4 --mod 5");
  ASSERT_EQ(r.code, 0);
  std::stringstream ss(r.out);
  const auto t = qstat::io::read_stat_table_csv(ss);
  EXPECT_EQ(t.p[4], 5);
  const long nt[] = {2, 2, 4, 1, 3};
  for (int m = 0; m < 5; ++m) EXPECT_EQ(t.nt[m][4], nt[m]);
}

TEST(CliStats, MethodsAgree) {
  const auto e = run("stats --n 30 --mod 5 --method enum");
  EXPECT_EQ(run("stats --n 30 --mod 5 --method dp").out, e.out);
  EXPECT_EQ(run("stats --n 30 --mod 5 --method gf").out, e.out);
  const auto seven = run("stats --n 20 --mod 7 --method dp");
  EXPECT_EQ(seven.code, 0);
  EXPECT_NE(seven.out.find("\n20,6,627,"), std::string::npos);
}

TEST(CliStats, Budgets) {
  EXPECT_EQ(run("stats --n 61").code, 2);
  EXPECT_EQ(run("stats --n 6", false, "QSTAT_ENUM_CAP=5").code, 2);
  EXPECT_EQ(run("stats --n 5", false, "QSTAT_ENUM_CAP=5").code, 0);
  EXPECT_EQ(run("stats --n 1001 --method dp").code, 2);
  EXPECT_EQ(run("stats --n 10", false, "QSTAT_DP_CAP=abc").code, 2);
}

TEST(CliDensity, CsvOutput) {
  const auto r = run("density --stat momega --i 2 --j 3 --upto 100 --stride 50 --csv");
  ASSERT_EQ(r.code, 0);
  std::stringstream ss(r.out);
  std::string line;
  int rows = -1;
  while (std::getline(ss, line)) ++rows;
  EXPECT_EQ(rows, 2);
  EXPECT_NE(r.out.find("momega,2,3,2,100,"), std::string::npos);
}

TEST(CliDensity, AssertMode) {
  EXPECT_EQ(run("density --stat nt --i 0 --j 1 --upto 400 --stride 400 --assert-conjectures --tolerance 0.2").code, 0);
  EXPECT_EQ(run("density --stat nt --i 0 --j 1 --upto 400 --stride 400 --assert-conjectures --tolerance 0").code, 1);
  EXPECT_EQ(run("density --stat nt --i 3 --j 1 --upto 10").code, 2);
  EXPECT_EQ(run("density --upto 6000").code, 2);
}

TEST(CliUsage, ExitCodes) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("stats").code, 2);
}
