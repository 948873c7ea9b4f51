#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"

namespace {

std::string corpus(const std::string& name) { return std::string(OPETOPE_CORPUS_DIR) + "/" + name; }

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = opetope::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, EnumerateCounts) {
  CliRun r = run({"enumerate", "--dim", "2", "--size", "5", "--count"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("5 infaces: 120"), std::string::npos);
  EXPECT_NE(r.out.find("total: 154"), std::string::npos);
  CliRun j = run({"--json", "enumerate", "--dim", "2", "--size", "4", "--count"});
  auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["4"], 24);
}

TEST(Cli, EnumerateStreamsParseableMetatrees) {
  CliRun r = run({"enumerate", "--dim", "2", "--size", "3"});
  EXPECT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    EXPECT_EQ(line.rfind("(metatree", 0), 0u) << line;
    ++n;
  }
  EXPECT_EQ(n, 10);
}

TEST(Cli, ParallelOutputIsByteIdentical) {
  CliRun seq = run({"enumerate", "--dim", "3", "--size", "2"});
  CliRun par = run({"--parallel", "enumerate", "--dim", "3", "--size", "2"});
  EXPECT_EQ(seq.code, 0);
  EXPECT_EQ(seq.out, par.out);
  EXPECT_EQ(run({"enumerate", "--dim", "3", "--size", "2"}).out, seq.out);
}

TEST(Cli, FacesOfFigureSixteen) {
  CliRun r = run({"faces", corpus("figure16.metatree")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("inface 1:"), std::string::npos);
  EXPECT_NE(r.out.find("inface 2:"), std::string::npos);
  EXPECT_EQ(r.out.find("inface 3:"), std::string::npos);
  EXPECT_NE(r.out.find("outface:"), std::string::npos);
}

TEST(Cli, DescribePentagon) {
  CliRun r = run({"describe", corpus("figure14.metatree")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("pentagon"), std::string::npos);
}

TEST(Cli, ValidateExitCodes) {
  EXPECT_EQ(run({"validate", corpus("figure16.metatree")}).code, 0);
  EXPECT_EQ(run({"validate", corpus("z2-nerve.json")}).code, 0);
  CliRun bad = run({"validate", corpus("broken.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("cell h"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"enumerate", "--dim", "x"}).code, 2);
  EXPECT_EQ(run({"validate", "no-such-file.json"}).code, 2);
  EXPECT_EQ(run({"--budget", "0", "check", "--n", "1", corpus("z2-nerve.json")}).code, 2);
}

TEST(Cli, CheckVerdicts) {
  CliRun ok = run({"check", "--n", "1", corpus("z2-nerve.json")});
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
  EXPECT_NE(ok.out.find("holds"), std::string::npos);
  CliRun bad = run({"check", "--n", "1", corpus("broken.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("witness"), std::string::npos);
  CliRun tight = run({"--budget", "3", "check", "--n", "1", corpus("z2-nerve.json")});
  EXPECT_EQ(tight.code, 3);
}

TEST(Cli, SliceListing) {
  CliRun r = run({"slice", "--base", "K", "--tree-size", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 7);
  EXPECT_NE(r.out.find("k 1 -> k"), std::string::npos);
}

TEST(Cli, NerveCounts) {
  CliRun r = run({"nerve", "--kind", "category", corpus("z2.json"), "--counts"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("3787"), std::string::npos);
  CliRun s = run({"--json", "nerve", "--kind", "set", corpus("set3.json")});
  EXPECT_EQ(s.code, 0);
  auto doc = nlohmann::json::parse(s.out);
  EXPECT_EQ(doc["cells"].size(), 36u);
}

TEST(Cli, TerminalCounts) {
  CliRun r = run({"terminal", "--base", "I", "--max-dim", "2", "--size", "3", "--counts"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("10"), std::string::npos);
}

TEST(Cli, OutputIsDeterministic) {
  auto a = run({"nerve", "--kind", "monoid", corpus("z2-monoid.json")});
  auto b = run({"nerve", "--kind", "monoid", corpus("z2-monoid.json")});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}
