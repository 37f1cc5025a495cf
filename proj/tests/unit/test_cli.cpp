#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "qcmi/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(QCMI_CLI_PATH) + " " + args + " 2>/dev/null";
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qcmi_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, HelpExitsZero) {
  EXPECT_EQ(run("--help").status, 0);
}

TEST_F(Cli, UnknownOptionIsUsageError) {
  EXPECT_EQ(run("info --bogus").status, 2);
}

TEST_F(Cli, InfoOnEmittedExample) {
  const std::string state = path("example.json");
  ASSERT_EQ(run("example paper --u 1 --emit " + state).status, 0);
  const Outcome r = run("info --state " + state + " --x A --y E1,E2 --given S");
  ASSERT_EQ(r.status, 0);
  const auto j = qcmi::parse_json_text(r.out);
  EXPECT_NEAR(j.at("i_cmi").get<double>(), std::log(2.0), 1e-10);
  EXPECT_LT(j.at("capacity_residual").get<double>(), 1e-10);
}

TEST_F(Cli, CsvFormat) {
  const std::string state = path("example.json");
  ASSERT_EQ(run("example paper --u 0.5 --emit " + state).status, 0);
  const Outcome r = run("info --state " + state + " --x A --y E1 --given S --format csv");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("quantity,value\n", 0), 0u);
  EXPECT_NE(r.out.find("i_cmi,"), std::string::npos);
}

TEST_F(Cli, OutputFile) {
  const std::string state = path("example.json"), out = path("report.json");
  ASSERT_EQ(run("example paper --u 0.5 --emit " + state).status, 0);
  ASSERT_EQ(run("info --state " + state + " --x A --given S --output " + out).status, 0);
  EXPECT_NO_THROW(qcmi::read_json_file(out));
}

TEST_F(Cli, MalformedJsonIsUsageError) {
  EXPECT_EQ(run("info --state " + write("bad.json", "{\"labels\": [") + " --x A").status, 2);
}

TEST_F(Cli, MissingFileIsUsageError) {
  EXPECT_EQ(run("info --state " + path("none.json") + " --x A").status, 2);
}

TEST_F(Cli, InvalidStateExitsThree) {
  const std::string bad = write(
      "neg.json", R"({"labels": ["A"], "dims": [2], "matrix": {"re": [[1.5, 0], [0, -0.5]], "im": [[0, 0], [0, 0]]}})");
  EXPECT_EQ(run("info --state " + bad + " --x A").status, 3);
}

TEST_F(Cli, ScanRejectsZeroSteps) {
  EXPECT_EQ(run("scan --param u --from 0 --to 1 --steps 0").status, 2);
}

TEST_F(Cli, ScanOverU) {
  const Outcome r = run("scan --param u --from 0 --to 1 --steps 3");
  ASSERT_EQ(r.status, 0);
  EXPECT_NO_THROW(qcmi::parse_json_text(r.out));
}

TEST_F(Cli, VerifyUnknownSuite) {
  EXPECT_EQ(run("verify nonsense").status, 2);
}

TEST_F(Cli, VerifyRecoveryPasses) {
  const Outcome r = run("verify recovery --trials 5");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(qcmi::parse_json_text(r.out).at("passed").get<bool>());
}

TEST_F(Cli, DiscordOnWorkedExample) {
  const std::string state = path("example.json");
  ASSERT_EQ(run("example paper --u 1 --emit " + state).status, 0);
  const Outcome r = run("discord --state " + state + " --x A --y E1,E2 --given S --restarts 8");
  ASSERT_EQ(r.status, 0);
  const auto j = qcmi::parse_json_text(r.out);
  EXPECT_NEAR(j.at("i_cmi").get<double>(), std::log(2.0), 1e-10);
  EXPECT_GE(j.at("c").at("value").get<double>(), std::log(2.0) - 1e-6);
  EXPECT_GE(j.at("r").at("value").get<double>(), -1e-10);
}
