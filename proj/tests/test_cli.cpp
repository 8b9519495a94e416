#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "orbitgauge/cli.hpp"

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "orbitgauge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = orbitgauge::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

orbitgauge::Json json(const std::string& text) { return orbitgauge::Json::parse(text); }

std::string temp_path(const char* name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST(Cli, SpectrumCsv) {
  const Result r = run({"spectrum", "--domain", R"({"ellipsoid":["1","99/70"]})", "--cap", "2", "--format", "csv"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out,
            "family,m_or_k,N,period_or_bound,bound_flag,cz,nondegenerate\n"
            "EllipsoidAxis,1,1,1,false,3,true\n"
            "EllipsoidAxis,2,1,99/70,false,5,true\n"
            "EllipsoidAxis,1,2,2,false,7,true\n");
}

TEST(Cli, V34Json) {
  const Result r = run({"v34", "--n", "1", "--eps", "1/1000", "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = json(r.out);
  EXPECT_EQ(j["lower"], "500/7");
  EXPECT_EQ(j["upper_dc"], "25/9");
  EXPECT_EQ(j["strict"], true);
}

TEST(Cli, BetaSearch) {
  const Result r = run({"beta-search", "--a", "1,1", "--min-pn", "5"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(json(r.out)["window"], orbitgauge::Json::array({"124/25", "5"}));
}

TEST(Cli, ValidationErrorExitsTwo) {
  const Result r = run({"spectrum", "--domain", R"({"ellipsoid":["1","x"]})", "--cap", "2"});
  EXPECT_EQ(r.status, 2);
  const auto j = json(r.err);
  EXPECT_EQ(j["error"], "ParseError");
  EXPECT_EQ(j["path"], "ellipsoid[1]");
  EXPECT_EQ(run({"spectrum", "--cap", "2"}).status, 2);
  EXPECT_EQ(run({"nonsense"}).status, 2);
}

TEST(Cli, HypothesisFailureExitsOne) {
  const Result r = run({"spectrum", "--domain", R"({"ellipsoid":["1","1"]})", "--cap", "2"});
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(json(r.err)["error"], "DegenerateInput");
  EXPECT_EQ(run({"v34", "--eps", "1/3"}).status, 1);
}

TEST(Cli, DelluBound) {
  const Result r = run({"bound", "--rule", "dellu", "--domain", R"({"truncated":{"a":["1","1"],"eps":"1/100","beta":"299/100"}})"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(json(r.out)["value"], "3400/133");
}

TEST(Cli, CheckAndReplay) {
  const std::string path = temp_path("orbitgauge_cli_v34.json");
  ASSERT_EQ(run({"v34", "--eps", "1/1000", "--out", path}).status, 0);
  const Result ok = run({"check", "--in", path, "--replay"});
  EXPECT_EQ(ok.status, 0) << ok.err;
  EXPECT_EQ(json(ok.out)["ok"], true);

  // a d_c lower bound above the d_c upper bound on the same pair
  auto j = json(run({"v34", "--eps", "1/1000"}).out);
  auto bad = orbitgauge::manual_certificate(orbitgauge::Quantity::d_c, orbitgauge::Direction::lower, j["certificates"][2]["from"], j["certificates"][2]["to"],
                                            orbitgauge::Rational(3));
  j["certificates"].push_back(orbitgauge::to_json(bad));
  {
    std::ofstream f(path);
    f << j.dump();
  }
  EXPECT_EQ(run({"check", "--in", path}).status, 1);
  std::remove(path.c_str());
}

TEST(Cli, ElldistCsv) {
  const Result r = run({"elldist", "--a", "1,1", "--r", "3,30", "--format", "csv"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "r,beta,eps,lower,upper");
}

TEST(Cli, QuasiembedWithSurrogateFile) {
  const std::string path = temp_path("orbitgauge_cli_surrogate.json");
  {
    std::ofstream f(path);
    f << R"([{"x":"1","value":"9/25","log_error":"1/40"},{"x":"0","value":"1","log_error":"0"}])";
  }
  const Result r = run({"quasiembed", "--x", "1", "--y", "0", "--surrogate", path});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto j = json(r.out);
  EXPECT_EQ(j["points"][0]["upper"], "625/81");
  EXPECT_EQ(j["points"][0]["upper_sandwich"], true);
  std::remove(path.c_str());
}

TEST(Cli, HelpExitsZero) {
  const Result r = run({"--help"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("spectrum"), std::string::npos);
}
