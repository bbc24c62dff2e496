#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bhk/cli.hpp"

using namespace bhk;
using Json = nlohmann::ordered_json;

namespace {

const char* kFermat = "x0^5+x1^5+x2^5+x3^5+x4^5";
const char* kChain = "x0^4*x1+x1^4*x2+x2^4*x3+x3^4*x4+x4^5";

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bhk_cli_" + name);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p);
  f << text;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, MirrorReportKeys) {
  CliRun r = run({"mirror", kFermat});
  ASSERT_EQ(r.code, ExitOk) << r.err;
  Json j = Json::parse(r.out);
  for (const char* key : {"input", "exponent_matrix", "weights", "calabi_yau", "cy_type", "atoms", "aut", "group",
                          "transpose", "dual_group", "quotients", "toric", "ambient"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["dual_group"]["invariants"], Json::parse("[5,5,5,5]"));
  EXPECT_EQ(j["ambient"]["quotient_invariants"], Json::parse("[5,5,5]"));
  EXPECT_TRUE(j["ambient"]["verified"].get<bool>());
}

TEST(Cli, MirrorOfNonCalabiYauIsAnInputError) {
  CliRun r = run({"mirror", "x0^3"});
  EXPECT_EQ(r.code, ExitInputError);
  EXPECT_NE(r.err.find("Calabi–Yau condition fails"), std::string::npos);
  // analyze still reports.
  CliRun a = run({"analyze", "x0^3"});
  EXPECT_EQ(a.code, ExitOk);
  EXPECT_TRUE(Json::parse(a.out)["toric"].is_null());
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({"mirror", "x0^5+x0^5"}).code, ExitInputError);
  EXPECT_EQ(run({"mirror", kFermat, "--group", "1/2,0"}).code, ExitInputError);
  EXPECT_EQ(run({}).code, ExitInputError);
  EXPECT_EQ(run({"nonsense"}).code, ExitInputError);
  EXPECT_EQ(run({"compare", kFermat, "x0^3+x1^3+x2^3+x3^3+x4^3"}).code, ExitInputError);
  EXPECT_EQ(run({"verify", "--corpus", "/nonexistent/corpus.jsonl"}).code, ExitInputError);
}

TEST(Cli, CompareWorkedExamples) {
  CliRun r = run({"compare", kFermat, kChain, "--probe", "20"});
  ASSERT_EQ(r.code, ExitOk) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["reports"].size(), 2u);
  EXPECT_TRUE(j["identical"].get<bool>());
  EXPECT_TRUE(j["atlas"]["terms_identical"].get<bool>());
  EXPECT_EQ(j["atlas"]["probe"]["agreements"], 20);
}

TEST(Cli, OutputIsDeterministic) {
  std::vector<std::string> args{"compare", kFermat, kChain, "--probe", "10", "--seed", "7"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, TextFormatAndOutFile) {
  CliRun t = run({"--format", "text", "mirror", kChain});
  EXPECT_EQ(t.code, ExitOk);
  EXPECT_FALSE(t.out.empty());
  EXPECT_FALSE(Json::accept(t.out));

  auto path = temp_file("out.json");
  CliRun f = run({"--out", path.string(), "mirror", kChain});
  EXPECT_EQ(f.code, ExitOk);
  EXPECT_TRUE(f.out.empty());
  EXPECT_EQ(read_file(path), run({"mirror", kChain}).out);
  std::filesystem::remove(path);
}

TEST(Cli, EnumerateBinaryCubics) {
  CliRun r = run({"enumerate", "--weights", "1,1", "--degree", "3", "--group", "trivial", "--compare-all", "--probe", "5"});
  ASSERT_EQ(r.code, ExitOk) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["count"], 3);
  EXPECT_EQ(j["comparisons"].size(), 3u);
  EXPECT_EQ(run({"enumerate", "--weights", "1,x", "--degree", "3"}).code, ExitInputError);
}

TEST(Cli, CorpusThenVerify) {
  auto path = temp_file("corpus.jsonl");
  CliRun c = run({"corpus", "--max-vars", "3", "--max-degree", "6", "--out", path.string()});
  ASSERT_EQ(c.code, ExitOk) << c.err;
  CliRun v = run({"verify", "--corpus", path.string()});
  EXPECT_EQ(v.code, ExitOk) << v.err;
  Json j = Json::parse(v.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_GT(j["groups_checked"].get<std::size_t>(), 0u);
  EXPECT_EQ(run({"verify", "--serial", "--corpus", path.string()}).out, v.out);

  write_file(path, R"({"exponents":[[3,0,0],[0,3,0],[0,0,3]],"groups":["1/3,0,0"]})" "\n");
  CliRun bad = run({"verify", "--corpus", path.string()});
  EXPECT_EQ(bad.code, ExitVerificationFailure);
  EXPECT_EQ(Json::parse(bad.out)["failures"], 1);
  std::filesystem::remove(path);
}
