#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace cfrac::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cfrac_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::string list1234() {
    return write("list.json",
                 R"({"kind":"list","elements":[{"re":1,"im":0},{"re":2,"im":0},{"re":3,"im":0},{"re":4,"im":0}]})");
  }
  std::string constant(int count, const std::string& extra = "") {
    return write("const" + std::to_string(count) + ".json",
                 R"({"kind":"constant","b":{"re":1,"im":0},"count":)" + std::to_string(count) + extra + "}");
  }

  fs::path dir_;
};

TEST_F(CliTest, EvalConvergent) {
  const auto r = run_cli({"eval", "--spec", list1234(), "--n", "4"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const json rep = r.report();
  EXPECT_EQ(rep["command"], "eval");
  EXPECT_NEAR(rep["results"]["value"]["re"].get<double>(), 30.0 / 43.0, 1e-12);
  EXPECT_EQ(rep["results"]["value"]["im"].get<double>(), 0.0);
  EXPECT_TRUE(rep.contains("tolerances"));

  const auto c = run_cli({"eval", "--spec", constant(4), "--n", "4"});
  EXPECT_NEAR(c.report()["results"]["value"]["re"].get<double>(), 0.6, 1e-15);

  const auto one = run_cli({"eval", "--spec", list1234(), "--n", "1"});
  EXPECT_NEAR(one.report()["results"]["value"]["re"].get<double>(), 1.0, 1e-15);
}

TEST_F(CliTest, EvalTailAndReverse) {
  const std::string spec = write("l12.json", R"({"kind":"list","elements":[{"re":1,"im":0},{"re":2,"im":0}]})");
  const auto tail = run_cli({"eval", "--spec", spec, "--n", "2", "--mode", "tail", "--w-re", "-3"});
  ASSERT_EQ(tail.code, kExitPass) << tail.err;
  const json tails = tail.report()["results"]["tails"];
  ASSERT_EQ(tails.size(), 3u);
  EXPECT_NEAR(tails[1]["re"].get<double>(), -1.0, 1e-15);
  EXPECT_EQ(tails[2], "inf");

  const auto rev = run_cli({"eval", "--spec", spec, "--n", "2", "--mode", "reverse"});
  EXPECT_NEAR(rev.report()["results"]["value"]["re"].get<double>(), 1.0 / 3.0, 1e-15);

  const auto at_inf = run_cli({"eval", "--spec", spec, "--n", "2", "--w-inf"});
  EXPECT_NEAR(at_inf.report()["results"]["value"]["re"].get<double>(), 1.0, 1e-15);
  EXPECT_EQ(at_inf.report()["inputs"]["w"], "inf");
}

TEST_F(CliTest, CertifyReportsMinimalConstant) {
  const auto origin = run_cli({"certify", "--spec", constant(8), "--theorem", "origin"});
  ASSERT_EQ(origin.code, kExitPass) << origin.err;
  const json cert = origin.report()["results"]["certificate"];
  EXPECT_TRUE(cert["passed"].get<bool>());
  EXPECT_DOUBLE_EQ(cert["C"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(cert["minimal_C"].get<double>(), 1.0);
  EXPECT_EQ(cert["checked"], 4);

  const auto shifted = run_cli({"certify", "--spec", constant(8), "--theorem", "shifted"});
  ASSERT_EQ(shifted.code, kExitPass) << shifted.err;
  EXPECT_DOUBLE_EQ(shifted.report()["results"]["certificate"]["C"].get<double>(), 0.5);

  for (const char* target : {"reverse", "tails"}) {
    const auto r = run_cli({"certify", "--spec", constant(8), "--theorem", "shifted", "--target", target});
    EXPECT_EQ(r.code, kExitPass) << target << r.err;
  }
  const auto tails = run_cli({"certify", "--spec", constant(8), "--theorem", "origin", "--target", "tails",
                              "--pairs", "3", "--w-re", "0.5"});
  EXPECT_EQ(tails.code, kExitPass) << tails.err;
  EXPECT_EQ(tails.report()["results"]["certificate"]["checked"], 3);
}

TEST_F(CliTest, CertifyErrorPaths) {
  const std::string wide = constant(4, R"(,"sector_half_angle":1.0471975511965976)");
  const auto too_wide = run_cli({"certify", "--spec", wide, "--theorem", "origin"});
  EXPECT_EQ(too_wide.code, kExitDomainError);
  EXPECT_NE(too_wide.err.find("counterexample"), std::string::npos);

  // pi/3 is fine for the shifted theorem
  EXPECT_EQ(run_cli({"certify", "--spec", wide, "--theorem", "shifted"}).code, kExitPass);

  const auto small_c = run_cli({"certify", "--spec", constant(4), "--theorem", "origin", "--C", "0.5"});
  EXPECT_EQ(small_c.code, kExitDomainError);
  const auto seed_out = run_cli({"certify", "--spec", constant(4), "--theorem", "shifted", "--w-re", "3"});
  EXPECT_EQ(seed_out.code, kExitDomainError);
  EXPECT_EQ(run_cli({"certify", "--spec", constant(4), "--theorem", "sideways"}).code, kExitParseError);
}

TEST_F(CliTest, ParseErrors) {
  EXPECT_EQ(run_cli({"eval", "--spec", write("bad.json", "{not json"), "--n", "1"}).code, kExitParseError);
  EXPECT_EQ(run_cli({"eval", "--spec", path("missing.json"), "--n", "1"}).code, kExitParseError);
  EXPECT_EQ(run_cli({"eval", "--spec", write("k.json", R"({"kind":"spiral"})"), "--n", "1"}).code,
            kExitParseError);
  EXPECT_EQ(run_cli({"eval", "--spec", write("m.json", R"({"kind":"constant","b":{"re":1}})"), "--n", "1"}).code,
            kExitParseError);
  EXPECT_EQ(run_cli({"eval", "--n", "1"}).code, kExitParseError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitParseError);
  EXPECT_EQ(run_cli({}).code, kExitParseError);
}

TEST_F(CliTest, DomainErrors) {
  EXPECT_EQ(run_cli({"eval", "--spec", list1234(), "--n", "5"}).code, kExitDomainError);
  const std::string zero = write("z.json", R"({"kind":"list","elements":[{"re":0,"im":0}]})");
  EXPECT_EQ(run_cli({"eval", "--spec", zero, "--n", "1"}).code, kExitDomainError);
  EXPECT_EQ(run_cli({"eval", "--spec", constant(0), "--n", "1"}).code, kExitDomainError);
  const std::string outside = write("o.json", R"({"kind":"list","elements":[{"re":-1,"im":0}],"sector_half_angle":0.5})");
  EXPECT_EQ(run_cli({"eval", "--spec", outside, "--n", "1"}).code, kExitDomainError);
}

TEST_F(CliTest, Counterexample) {
  const std::string csv = path("one.csv");
  const auto one = run_cli({"counterexample", "--t-min", "0.5", "--t-max", "0.5", "--steps", "1", "--csv", csv});
  ASSERT_EQ(one.code, kExitPass) << one.err;
  EXPECT_EQ(slurp(csv),
            "t,lhs_squared,threshold,violates\n0.5,0.57285954353875235,0.62996052494743671,true\n");

  const auto sweep = run_cli({"counterexample", "--t-min", "0.01", "--t-max", "0.5", "--steps", "50"});
  ASSERT_EQ(sweep.code, kExitPass);
  EXPECT_EQ(sweep.report()["results"]["violations"], 50);

  EXPECT_EQ(run_cli({"counterexample", "--t-max", "0.6"}).code, kExitDomainError);
  EXPECT_EQ(run_cli({"counterexample", "--t-min", "0"}).code, kExitDomainError);
  EXPECT_EQ(run_cli({"counterexample", "--steps", "0"}).code, kExitDomainError);
}

TEST_F(CliTest, RegionGrid) {
  const std::string csv = path("grid.csv");
  const auto r = run_cli({"region-grid", "--spec", constant(6), "--theorem", "shifted", "--resolution", "3",
                          "--csv", csv});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const json res = r.report()["results"];
  EXPECT_EQ(res["evaluated"], 5);
  EXPECT_EQ(res["skipped"], 4);
  EXPECT_DOUBLE_EQ(res["in_disk_fraction"].get<double>(), 1.0);
  const std::string first = slurp(csv);
  EXPECT_EQ(first.rfind("w_re,w_im,val_re,val_im,in_disk\n", 0), 0u);

  // byte-for-byte deterministic
  const auto again = run_cli({"region-grid", "--spec", constant(6), "--theorem", "shifted", "--resolution", "3",
                              "--csv", csv});
  EXPECT_EQ(slurp(csv), first);
  json a = r.report(), b = again.report();
  a.erase("timing_ms");
  b.erase("timing_ms");
  EXPECT_EQ(a.dump(), b.dump());

  const auto origin = run_cli({"region-grid", "--spec", constant(6), "--theorem", "origin", "--resolution", "11"});
  EXPECT_EQ(origin.code, kExitPass) << origin.err;
  EXPECT_EQ(run_cli({"region-grid", "--spec", constant(6), "--theorem", "shifted", "--resolution", "1"}).code,
            kExitDomainError);
}

TEST_F(CliTest, Sweep) {
  const auto origin = run_cli({"sweep", "--theorem", "origin", "--samples", "2000", "--seed", "42"});
  ASSERT_EQ(origin.code, kExitPass) << origin.err;
  EXPECT_EQ(origin.report()["results"]["violations"], 0);
  EXPECT_EQ(origin.report()["seed"], 42);

  const auto again = run_cli({"sweep", "--theorem", "origin", "--samples", "2000", "--seed", "42"});
  json a = origin.report(), b = again.report();
  a.erase("timing_ms");
  b.erase("timing_ms");
  EXPECT_EQ(a.dump(), b.dump());

  EXPECT_EQ(run_cli({"sweep", "--theorem", "shifted", "--samples", "2000"}).code, kExitPass);
  EXPECT_EQ(run_cli({"sweep", "--theorem", "origin", "--samples", "0"}).code, kExitDomainError);
  EXPECT_EQ(run_cli({"sweep", "--theorem", "origin", "--theta-max", "0.8"}).code, kExitDomainError);
  EXPECT_EQ(run_cli({"sweep", "--theorem", "shifted", "--theta-max", "1.6"}).code, kExitDomainError);
}

TEST_F(CliTest, ToleranceFlagAndEnvironment) {
  const auto flag = run_cli({"certify", "--spec", constant(4), "--theorem", "shifted", "--tol", "1e-6"});
  EXPECT_DOUBLE_EQ(flag.report()["tolerances"]["slack"].get<double>(), 1e-6);
  EXPECT_DOUBLE_EQ(flag.report()["results"]["certificate"]["slack_used"].get<double>(), 1e-6);

  ::setenv("CFRAC_DEFAULT_TOL", "1e-7", 1);
  const auto env = run_cli({"certify", "--spec", constant(4), "--theorem", "shifted"});
  ::unsetenv("CFRAC_DEFAULT_TOL");
  EXPECT_DOUBLE_EQ(env.report()["tolerances"]["slack"].get<double>(), 1e-7);
  const auto plain = run_cli({"certify", "--spec", constant(4), "--theorem", "shifted"});
  EXPECT_DOUBLE_EQ(plain.report()["tolerances"]["slack"].get<double>(), 1e-9);
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string bin = CFRAC_CLI_BINARY;
  const auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("eval --spec " + list1234() + " --n 4"), kExitPass);
  EXPECT_EQ(status("eval --spec " + write("bad.json", "[") + " --n 1"), kExitParseError);
  EXPECT_EQ(status("counterexample --t-max 0.6"), kExitDomainError);
}

}  // namespace
}  // namespace cfrac::cli
