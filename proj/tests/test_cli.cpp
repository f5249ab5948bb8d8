#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

using Json = nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(SYSTOLICA_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

std::string without_timestamp(const std::string& s) {
  Json j = Json::parse(s);
  j.erase("timestamp");
  return j.dump();
}

}  // namespace

TEST(Cli, GenusTwoLoops) {
  const CliRun r = run("extremal --problem loops --chi -2");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["outputs"]["x"].get<double>(), 3.43821424123, 1e-10);
  EXPECT_EQ(j["outputs"]["counts"]["loops"], 9);
  EXPECT_TRUE(j["outputs"]["euler_certificate"].get<bool>());
}

TEST(Cli, OneHoledTorusArcs) {
  const CliRun r = run("extremal --problem arcs --chi -1 --boundary 0 --B 1 --LB 5.774545 --gap");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["outputs"]["x"].get<double>(), 1.762747, 1e-6);
  EXPECT_GT(j["outputs"]["gap"]["min_ratio"].get<double>(), 1.0);
}

TEST(Cli, SignatureFromFile) {
  const auto path = write_temp("sig.json", R"({"problem": "loops", "chi": -1, "boundary": [0]})");
  const CliRun r = run("extremal --input " + path);
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(Json::parse(r.out)["outputs"]["x"].get<double>(), 2.37170002038, 1e-10);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("extremal --problem arcs --chi -1 --boundary 0 --B 1").code, 1);
  EXPECT_EQ(run("extremal --problem loops --chi 1").code, 1);
  EXPECT_EQ(run("extremal --problem loops --chi -1 --boundary 40").code, 2);
  EXPECT_EQ(run("verify --suite nope").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("polygon --sides 1,1,1,1,1").code, 2);
  EXPECT_EQ(run("verify --suite trig --samples 3 --tol 1e-30").code, 3);
  const auto bad = write_temp("bad.json", "{not json");
  EXPECT_EQ(run("classify " + bad).code, 1);
}

TEST(Cli, VerifyVacuousPass) {
  const CliRun r = run("verify --suite trig --samples 0");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["oracle_summary"]["checks_run"], 0);
  EXPECT_EQ(j["outputs"]["warnings"].size(), 1u);
}

TEST(Cli, VerifyIsDeterministic) {
  const CliRun a = run("verify --suite hessian --samples 20 --seed 7");
  const CliRun b = run("--seed 7 verify --suite hessian --samples 20");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(without_timestamp(a.out), without_timestamp(b.out));
  const CliRun c = run("verify --suite hessian --samples 20 --seed 8");
  EXPECT_NE(Json::parse(a.out)["inputs_digest"], Json::parse(c.out)["inputs_digest"]);
}

TEST(Cli, EnvironmentSeedOverrides) {
  const CliRun a = run("verify --suite trig --samples 10 --seed 3");
  const std::string cmd = "SYSTOLICA_SEED=3 " + std::string(SYSTOLICA_CLI) +
                          " verify --suite trig --samples 10 --seed 99";
  CliRun b;
  FILE* pipe = popen(cmd.c_str(), "r");
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) b.out.append(buf.data(), n);
  pclose(pipe);
  EXPECT_EQ(without_timestamp(a.out), without_timestamp(b.out));
}

TEST(Cli, VerifyWritesCsv) {
  const std::string path = ::testing::TempDir() + "sweep.csv";
  ASSERT_EQ(run("verify --suite variational --samples 4 --csv " + path).code, 0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "suite,check,sample,analytic,oracle,rel_err,tol,passed");
}

TEST(Cli, ClassifyVerdicts) {
  const auto cross = write_temp("cross.json", R"({"dim": 2, "vectors": [[1,0],[0,1],[-1,0],[0,-1]]})");
  const CliRun a = run("classify " + cross);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(Json::parse(a.out)["outputs"]["verdict"], "extreme");
  const auto basis = write_temp("basis.json", R"({"dim": 2, "vectors": [[1,0],[0,1]]})");
  const CliRun b = run("classify " + basis);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(Json::parse(b.out)["outputs"]["verdict"], "regular");
  const auto mismatch = write_temp("mismatch.json", R"({"dim": 2, "vectors": [[1,0,0]]})");
  EXPECT_EQ(run("classify " + mismatch).code, 1);
}

TEST(Cli, PolygonRoundTrip) {
  const CliRun r = run("polygon --coords 1.1,0.9,1.3");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["outputs"]["n"], 6);
  EXPECT_LT(j["outputs"]["round_trip_error"].get<double>(), 1e-10);
  EXPECT_LT(j["outputs"]["closure_defect"].get<double>(), 1e-8);
}
