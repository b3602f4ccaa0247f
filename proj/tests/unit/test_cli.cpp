#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "plurigreen/serialize.hpp"

namespace fs = std::filesystem;
using plurigreen::Json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CliResult run(const std::string& args) {
  const fs::path err_file =
      fs::temp_directory_path() / ("plurigreen_cli_stderr_" + std::to_string(::getpid()) + ".txt");
  const std::string cmd = std::string(PLURIGREEN_CLI) + " " + args + " 2>" + err_file.string();
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("plurigreen_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string out(const std::string& sub = "") const { return "--out " + (dir_ / sub).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ExactExponents) {
  const CliResult r = run(out() + " exponents --case parabola_exponent --exact");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["exact"]["growth"], "3/2");
  EXPECT_TRUE(fs::exists(dir_ / "exponents.json"));
}

TEST_F(Cli, MissingSpecFileIsSpecIO) {
  const CliResult r = run(out() + " green --variety " + (dir_ / "missing.json").string());
  EXPECT_EQ(r.exit_code, 2);
  const Json err = Json::parse(r.err);
  EXPECT_EQ(err["error"]["code"], "SPEC_IO");
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run(out() + " green --degree").exit_code, 2);
  const CliResult r = run(out() + " frobnicate");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_EQ(Json::parse(r.err)["error"]["code"], "USAGE");
  EXPECT_EQ(run(out() + " exponents --case nowhere --exact").exit_code, 2);
}

TEST_F(Cli, SolverErrorExitCode) {
  // The Viviani curve has no points of norm below 2.
  const CliResult r = run(out() + " green --case viviani --grid shell:1:1.5:4");
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_EQ(Json::parse(r.err)["error"]["code"], "BRACKETING_FAILED");
}

TEST_F(Cli, VerifyHoldsAndFails) {
  const std::string small = " --design-size 800 --degree 12 --testpoints 60";
  const CliResult ok = run(out("a") + " verify --case cusp" + small);
  EXPECT_EQ(ok.exit_code, 0) << ok.out << ok.err;
  const CliResult bad = run(out("b") + " verify --case cusp --k 3.5" + small);
  EXPECT_EQ(bad.exit_code, 4);
  EXPECT_TRUE(fs::exists(dir_ / "b" / "verify.csv"));
}

TEST_F(Cli, BwUnderGradedFails) {
  EXPECT_EQ(run(out("a") + " bw --case circle_bw --poly '[x^3+x^2 y+x y^2+y^3]'").exit_code, 0);
  EXPECT_EQ(
      run(out("b") + " bw --case circle_bw --poly '[x^3+x^2 y+x y^2+y^3]' --grade 0.5").exit_code,
      4);
}

TEST_F(Cli, RerunsAreByteIdentical) {
  const std::string args = " green --case cusp --degree 6 --design-size 300 --seed 3";
  ASSERT_EQ(run(out("a") + args).exit_code, 0);
  ASSERT_EQ(run(out("b") + args).exit_code, 0);
  for (const char* f : {"green.csv", "design.csv", "green_meta.json"}) {
    const std::string a = slurp(dir_ / "a" / f);
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, slurp(dir_ / "b" / f)) << f;
  }
}

TEST_F(Cli, ConfigSuppliesDefaults) {
  {
    std::ofstream cfg(dir_ / "cfg.json");
    cfg << R"({"exact": true, "case": "circle_bw"})";
  }
  const CliResult r = run(out() + " --config " + (dir_ / "cfg.json").string() + " exponents");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["exact"]["growth"], "1");
}

TEST_F(Cli, ExportedCaseLoadsAsSpec) {
  const CliResult exported = run("cases export cusp");
  ASSERT_EQ(exported.exit_code, 0);
  {
    std::ofstream f(dir_ / "cusp.json");
    f << exported.out;
  }
  const CliResult r = run(out("g") + " green --variety " + (dir_ / "cusp.json").string() +
                          " --degree 4 --design-size 200");
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "g" / "green.csv"));
}

TEST_F(Cli, CasesList) {
  const CliResult r = run("cases list");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(Json::parse(r.out).size(), 7u);
}
