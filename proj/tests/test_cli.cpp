#include "lts/cli.hpp"
#include "lts/io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace lts;

namespace {

const std::string kData = LTS_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Cli, ParseExamples) {
  auto c = parse_args({"i-number", "--group", kData + "/sl2.json"});
  EXPECT_EQ(c.subcommand, "i-number");
  EXPECT_EQ(c.seed, 0u);
  EXPECT_EQ(c.trials, 100);
  c = parse_args({"sigma", "--catalog"});
  EXPECT_EQ(c.subcommand, "sigma");
  EXPECT_TRUE(c.catalog);
  c = parse_args({"verify", "stabilization", "--models", kData + "/o2.json", "--seed", "7"});
  EXPECT_EQ(c.subcommand, "stabilize verify");
  EXPECT_EQ(c.seed, 7u);
  c = parse_args({"--threads", "3", "elliptic", "--group", "sl3", "--theta", kData + "/o2_theta.json", "--format", "tsv"});
  EXPECT_EQ(c.threads, 3u);
  EXPECT_EQ(c.format, "tsv");
  ASSERT_TRUE(c.theta.has_value());
}

TEST(Cli, UsageExitCodes) {
  auto code = [](std::vector<std::string> a) {
    try {
      parse_args(a);
      return 0;
    } catch (const CliError& e) {
      return static_cast<int>(e.code());
    }
  };
  EXPECT_EQ(code({"frobnicate"}), 2);
  EXPECT_EQ(code({}), 2);
  EXPECT_EQ(code({"verify", "nothing"}), 2);
  EXPECT_EQ(code({"stabilize", "verify", "--models", "o2", "--trials", "0"}), 2);
  EXPECT_EQ(code({"elliptic", "--group", "sl2", "--format", "xml"}), 2);
  EXPECT_EQ(code({"sigma"}), 2);
  EXPECT_EQ(code({"sigma", "--group", "/nonexistent/g.json"}), 3);
  EXPECT_EQ(code({"packets", "verify", "--model", "/nonexistent/m.json"}), 3);
  EXPECT_EQ(cli({"sigma", "--group", "/nonexistent/g.json"}).code, 3);
}

TEST(Cli, MalformedInputs) {
  EXPECT_EQ(cli({"sigma", "--group", temp_file("bad.json", "{\"rank\": 1,")}).code, 4);
  EXPECT_EQ(cli({"sigma", "--group", temp_file("extra.json", R"({"rank":1,"simple_roots":[[2]],"simple_coroots":[[1]],"x":0})")}).code, 4);
  EXPECT_EQ(cli({"sigma", "--group", temp_file("float.json", R"({"rank":1,"simple_roots":[[2.0]],"simple_coroots":[[1]]})")}).code, 4);
  EXPECT_EQ(cli({"stabilize", "verify", "--models", temp_file("m.json", R"({"sM_dim":0,"r_dim":1,"colour":1})")}).code, 4);
}

TEST(Cli, ModuleErrorsGiveStructuredObject) {
  auto r = cli({"sigma", "--group", temp_file("nc.json", R"({"rank":1,"simple_roots":[[3]],"simple_coroots":[[1]]})")});
  EXPECT_EQ(r.code, 5);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["error"]["kind"], "NonCartan");
  r = cli({"verify", "central-quotient", "--group", "sl2", "--generators", R"([["1/3"]])"});
  EXPECT_EQ(r.code, 5);
  EXPECT_EQ(Json::parse(r.out)["error"]["kind"], "NotCentral");
  r = cli({"i-number", "--group", "sl2", "--theta", temp_file("t.json", "[[2]]")});
  EXPECT_EQ(r.code, 5);
  EXPECT_EQ(Json::parse(r.out)["error"]["kind"], "NotAutomorphism");
}

TEST(Cli, SigmaSl2) {
  auto r = cli({"sigma", "--group", kData + "/sl2.json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["sigma"], "-1/8");
}

TEST(Cli, SigmaCatalogTsv) {
  auto r = cli({"sigma", "--catalog"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("key\ttype\tsigma\n", 0), 0u);
  EXPECT_NE(r.out.find("\tA1\t-1/8\n"), std::string::npos);
  EXPECT_NE(r.out.find("\tA1\t-1/4\n"), std::string::npos);
  EXPECT_NE(r.out.find("\tA1xA1\t+1/64\n"), std::string::npos);
}

TEST(Cli, VerifyEiGl1) {
  auto r = cli({"verify", "ei", "--group", kData + "/gl1.json"});
  ASSERT_EQ(r.code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["e"], "0/1");
  EXPECT_EQ(j["i"], "0/1");
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Cli, TwistedComponentsFromFiles) {
  auto r = cli({"verify", "ei", "--group", kData + "/gl1.json", "--theta", kData + "/o2_theta.json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["i"], "+1/2");
  r = cli({"verify", "ei", "--group", kData + "/a1a1_swap.json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["component"], "[[0,1],[1,0]]");
}

TEST(Cli, EllipticFormats) {
  auto r = cli({"elliptic", "--group", "sp4", "--format", "tsv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "rep\torder\tpi0\tcentralizer\tcentral\n0/1,0/1\t1\t1\tB2\ttrue\n0/1,+1/2\t2\t1\tA1xA1\tfalse\n"
                   "+1/2,0/1\t2\t1\tB2\ttrue\n");
  r = cli({"elliptic", "--group", "sl2"});
  auto j = Json::parse(r.out);
  ASSERT_EQ(j["classes"].size(), 2u);
  EXPECT_EQ(j["classes"][1]["rep"][0], "+1/2");
}

TEST(Cli, StabilizationO2) {
  auto r = cli({"verify", "stabilization", "--models", kData + "/o2.json", "--trials", "5"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["fixture"][0]["lhs"], "+1/4+0/1i");
  EXPECT_EQ(j["fixture"][0]["rhs"], "+1/4+0/1i");
  EXPECT_EQ(j["fixture"][1]["lhs"], "+1/4+0/1i");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["random_trials"].size(), 5u);
}

TEST(Cli, InconsistentDescriptorFails) {
  std::ifstream in(kData + "/o2.json");
  auto j = Json::parse(in);
  j["descriptors"][0]["out_phi_card"] = 2;
  auto r = cli({"stabilize", "verify", "--models", temp_file("o2bad.json", j.dump()), "--trials", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(Json::parse(r.out)["pass"].get<bool>());
}

TEST(Cli, PacketsVerify) {
  auto r = cli({"packets", "verify", "--model", kData + "/mixed.json", "--trials", "4", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(Json::parse(r.out)["models"].size(), 2u);
}

TEST(Cli, DeterministicAndRoundTrips) {
  const std::vector<std::string> args{"stabilize", "verify", "--models", kData + "/mixed.json", "--seed", "42",
                                      "--trials", "10"};
  auto a = cli(args), b = cli(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Json::parse(a.out).dump(2) + "\n", a.out);
  auto rep = cli({"report"});
  EXPECT_EQ(rep.code, 0);
  EXPECT_EQ(Json::parse(rep.out).dump(2) + "\n", rep.out);
}

TEST(Cli, ThreadsEnvironmentOverride) {
  ::setenv("LTS_THREADS", "2", 1);
  auto c = parse_args({"--threads", "5", "report"});
  EXPECT_EQ(c.threads, 2u);
  ::setenv("LTS_THREADS", "many", 1);
  EXPECT_THROW(parse_args({"report"}), CliError);
  ::unsetenv("LTS_THREADS");
  auto seq = cli({"verify", "ei", "--group", "g2"});
  ::setenv("LTS_THREADS", "4", 1);
  auto par = cli({"verify", "ei", "--group", "g2"});
  ::unsetenv("LTS_THREADS");
  EXPECT_EQ(seq.out, par.out);
}
