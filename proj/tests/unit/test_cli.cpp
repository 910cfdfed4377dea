#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "mmdnov/tensor_io.hpp"
#include "test_support.hpp"

namespace mmdnov {
namespace {

using nlohmann::json;
using testutil::TempDir;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  std::string path(const std::string& name) const { return (dir / name).string(); }

  void synth(const std::string& name, const std::string& mean, std::size_t n, std::uint64_t seed) {
    const auto r = run_cli({"synth", "--family", "gaussian", "--dim", "2", "--mean", mean, "--scale", "1",
                            "--n", std::to_string(n), "--seed", std::to_string(seed), "--out", path(name)});
    ASSERT_EQ(r.code, 0) << r.err;
  }

  TempDir dir{"cli"};
};

TEST_F(CliTest, SynthThenTestRejectsSeparatedGaussians) {
  synth("g0.npy", "0,0", 100, 7);
  synth("g6.npy", "6,0", 100, 8);
  const auto r = run_cli({"test", "--x", path("g0.npy"), "--y", path("g6.npy"), "--kernel", "rbf", "--sigma",
                          "auto", "--permutations", "1000", "--alpha", "0.01", "--seed", "42"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["schema"], "mmdnov/1");
  EXPECT_EQ(doc["command"], "test");
  EXPECT_TRUE(doc["result"]["reject_null"].get<bool>());
  EXPECT_EQ(doc["result"]["p_value"], 0.0);
  EXPECT_EQ(doc["config"]["rng"], "xoshiro256**/1.0 seeded by splitmix64");
  EXPECT_EQ(doc["config"]["permutations"], 1000);
  EXPECT_TRUE(doc.contains("volatile"));
}

TEST_F(CliTest, ExitCodeIgnoresOutcomeUnlessFailOnReject) {
  synth("a.csv", "0,0", 40, 1);
  synth("b.csv", "5,0", 40, 2);
  const std::vector<std::string> base = {"test", "--x", path("a.csv"), "--y", path("b.csv"),
                                         "--permutations", "200", "--out", path("r.json")};
  EXPECT_EQ(run_cli(base).code, 0);
  EXPECT_TRUE(json::parse(testutil::read_text_file(dir / "r.json"))["result"]["reject_null"].get<bool>());
  auto strict = base;
  strict.push_back("--fail-on-reject");
  EXPECT_EQ(run_cli(strict).code, cli::kExitRejected);
}

TEST_F(CliTest, DefaultsFollowProtocol) {
  synth("a.npy", "0,0", 10, 1);
  synth("b.npy", "0,0", 10, 2);
  const auto r = run_cli({"test", "--x", path("a.npy"), "--y", path("b.npy")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["config"]["alpha"], 0.01);
  EXPECT_EQ(doc["config"]["permutations"], 1000);
  EXPECT_EQ(doc["config"]["kernel"]["sigma"], "auto");
  EXPECT_EQ(doc["config"]["add_one_smoothing"], false);

  const auto help = run_cli({"matrix", "--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("400"), std::string::npos);
  EXPECT_NE(help.out.find("1000"), std::string::npos);
  EXPECT_NE(help.out.find("0.01"), std::string::npos);
}

TEST_F(CliTest, UserErrorsExitOneWithOneLine) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"test", "--x", "a.npy"},
           {"test", "--x", path("missing.npy"), "--y", path("missing.npy")},
           {"test", "--x", "a.npy", "--y", "b.npy", "--bogus"},
           {"frobnicate"},
           {},
           {"test", "--x", "a.npy", "--y", "b.npy", "--sigma", "-2"},
           {"test", "--x", "a.npy", "--y", "b.npy", "--workers", "0"},
           {"synth", "--n", "3", "--dim", "2", "--mean", "1,2,3", "--out", path("z.npy")},
       }) {
    const auto r = run_cli(args);
    EXPECT_EQ(r.code, 1) << (args.empty() ? "<none>" : args[0]) << ": " << r.err;
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
  }
}

TEST_F(CliTest, InsufficientSamplesIsUserError) {
  synth("one.npy", "0,0", 1, 1);
  synth("two.npy", "0,0", 2, 1);
  EXPECT_EQ(run_cli({"test", "--x", path("one.npy"), "--y", path("two.npy")}).code, 1);
}

TEST_F(CliTest, MatrixWritesJsonAndCsv) {
  synth("a.npy", "0,0", 30, 1);
  synth("b.npy", "0,0", 30, 2);
  synth("c.npy", "4,0", 30, 3);
  testutil::write_text_file(dir / "corpus.tsv", "A\ta.npy\nB\tb.npy\nC\tc.npy\n");
  const auto r = run_cli({"matrix", "--manifest", path("corpus.tsv"), "--cap", "400", "--permutations", "200",
                          "--out", path("m.json"), "--csv", path("m.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(testutil::read_text_file(dir / "m.json"));
  EXPECT_EQ(doc["command"], "matrix");
  EXPECT_EQ(doc["result"]["mmd"].size(), 3u);
  EXPECT_EQ(doc["result"]["labels"][2], "C");
  EXPECT_LT(doc["result"]["p_values"][0][2].get<double>(), 0.01);
  const std::string csv = testutil::read_text_file(dir / "m.csv");
  EXPECT_EQ(csv.substr(0, 7), ",A,B,C\n");
  EXPECT_TRUE(std::filesystem::exists(dir / "m.pvalues.csv"));
}

TEST_F(CliTest, PowerWritesLongFormCsv) {
  synth("a.npy", "0,0", 40, 1);
  synth("b.npy", "3,0", 40, 2);
  testutil::write_text_file(dir / "corpus.tsv", "A\ta.npy\nB\tb.npy\n");
  const auto r = run_cli({"power", "--manifest", path("corpus.tsv"), "--pairs", "A:B", "--sizes", "4,10",
                          "--trials", "10", "--permutations", "100", "--csv", path("p.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc["result"]["sample_sizes"], json::array({4, 10}));
  const std::string csv = testutil::read_text_file(dir / "p.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "pair,label_a,label_b,n,rate,trials");
  EXPECT_NE(csv.find("A:B,A,B,10,"), std::string::npos);

  EXPECT_EQ(run_cli({"power", "--manifest", path("corpus.tsv"), "--pairs", "A:Z"}).code, 1);
  EXPECT_EQ(run_cli({"power", "--manifest", path("corpus.tsv"), "--pairs", "AB"}).code, 1);
}

TEST_F(CliTest, SynthCsvAndMixture) {
  const auto r = run_cli({"synth", "--family", "mixture", "--dim", "1", "--mean", "-5;5", "--n", "20",
                          "--seed", "3", "--out", path("mix.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_matrix(dir / "mix.csv", MatrixFormat::kCsv).rows(), 20u);
  EXPECT_EQ(json::parse(r.out)["result"]["rows"], 20);
}

}  // namespace
}  // namespace mmdnov
