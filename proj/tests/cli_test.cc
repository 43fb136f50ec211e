// Copyright 2026 The phonefront Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <chrono>
#include <sstream>

#include "phonefront/cli.h"
#include "phonefront/io.h"
#include "testing.h"

namespace phonefront {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  nlohmann::json summary;
};

Result RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), {"--data", testing::DataPath("").string(),
                             "--jobs", "2"});
  std::ostringstream out;
  std::ostringstream err;
  Result r{cli::Run(args, out, err), out.str(), err.str(), {}};
  if (r.code == cli::kExitOk) r.summary = nlohmann::json::parse(r.out);
  return r;
}

std::string Toy(const std::string& name) {
  return testing::DataPath("toy/" + name).string();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = testing::TempDir(
        ::testing::UnitTest::GetInstance()->current_test_info()->name());
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

TEST_F(CliTest, G2pPipelineMatchesGoldenAndIsIdempotent) {
  const auto start = std::chrono::steady_clock::now();
  const Result r = RunCli({"g2p-apply", "--lexicon", Toy("g2p_train.dict"),
                        "--texts", Toy("texts.txt"), "--out", Path("a.dict")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count(),
            30.0);
  EXPECT_EQ(r.out.find('\n'), r.out.size() - 1);
  EXPECT_EQ(r.summary["command"], "g2p-apply");
  EXPECT_GT(r.summary["predicted"].get<int>(), 0);
  const std::string golden = io::ReadFile(testing::GoldenPath("g2p_apply.dict"));
  EXPECT_EQ(io::ReadFile(Path("a.dict")), golden);

  ASSERT_EQ(RunCli({"g2p-apply", "--lexicon", Toy("g2p_train.dict"), "--texts",
                 Toy("texts.txt"), "--out", Path("a.dict")})
                .code,
            0);
  EXPECT_EQ(io::ReadFile(Path("a.dict")), golden);
}

TEST_F(CliTest, G2pApplyWithSavedModel) {
  ASSERT_EQ(RunCli({"g2p-train", "--lexicon", Toy("g2p_train.dict"),
                 "--model-out", Path("m.json")})
                .code,
            0);
  const Result r =
      RunCli({"g2p-apply", "--lexicon", Toy("g2p_train.dict"), "--model",
           Path("m.json"), "--texts", Toy("texts.txt"), "--out", Path("b.dict")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_FALSE(r.summary["trained_model"].get<bool>());
  EXPECT_EQ(io::ReadFile(Path("b.dict")),
            io::ReadFile(testing::GoldenPath("g2p_apply.dict")));
}

TEST_F(CliTest, FullyCoveredTextsAreLookedUp) {
  io::WriteFileAtomic(Path("t.txt"), "Hûs de\n\nde\n");
  io::WriteFileAtomic(Path("lex.dict"), "hûs\th u s\nde\td ə\nde\td ɛ\nde\td ɛ\n");
  const Result r = RunCli({"g2p-apply", "--lexicon", Path("lex.dict"), "--texts",
                        Path("t.txt"), "--out", Path("o.dict")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.summary["predicted"], 0);
  EXPECT_FALSE(r.summary["trained_model"].get<bool>());
  EXPECT_EQ(io::ReadFile(Path("o.dict")), "de\td ɛ\nhûs\th u s\n");
}

TEST_F(CliTest, EmptyTextsGiveEmptyLexicon) {
  io::WriteFileAtomic(Path("empty.txt"), "");
  const Result r = RunCli({"g2p-apply", "--lexicon", Toy("g2p_train.dict"),
                        "--texts", Path("empty.txt"), "--out", Path("o.dict")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.summary["words"], 0);
  EXPECT_EQ(io::ReadFile(Path("o.dict")), "");
}

TEST_F(CliTest, RecPipelineMatchesGoldenAndIsIdempotent) {
  const auto start = std::chrono::steady_clock::now();
  const Result r =
      RunCli({"build-dict", "--corpus", Toy("rec_corpus.tsv"), "--out", Path("d.dict")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count(),
            30.0);
  EXPECT_EQ(io::ReadFile(Path("d.dict")),
            io::ReadFile(testing::GoldenPath("build_dict.dict")));
  EXPECT_EQ(io::ReadFile(Path("d.dict.g2p.json")),
            io::ReadFile(testing::GoldenPath("build_dict.g2p.json")));
  const std::string first_model = io::ReadFile(Path("d.dict.g2p.json"));
  ASSERT_EQ(RunCli({"build-dict", "--corpus", Toy("rec_corpus.tsv"), "--out",
                 Path("d.dict")})
                .code,
            0);
  EXPECT_EQ(io::ReadFile(Path("d.dict.g2p.json")), first_model);
  EXPECT_EQ(io::ReadFile(Path("d.dict")),
            io::ReadFile(testing::GoldenPath("build_dict.dict")));
}

TEST_F(CliTest, RefineLeavesMarkedCorpusAlone) {
  const Result r = RunCli({"build-dict", "--corpus", Toy("rec_corpus.tsv"),
                           "--out", Path("d.dict"), "--refine", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.summary["refine_rounds"], 2);
  EXPECT_EQ(io::ReadFile(Path("d.dict")),
            io::ReadFile(testing::GoldenPath("build_dict.dict")));
  EXPECT_EQ(RunCli({"build-dict", "--corpus", Toy("rec_corpus.tsv"), "--out",
                    Path("e.dict"), "--refine", "-1"})
                .code,
            cli::kExitUsage);
}

TEST_F(CliTest, TooFewPhonesNamesUtteranceAndWritesNothing) {
  io::WriteFileAtomic(Path("c.tsv"),
                      "ok-1\tde hûs\td ə h u s\nbad-42\tde grutte hûs\td ə\n");
  const Result r =
      RunCli({"build-dict", "--corpus", Path("c.tsv"), "--out", Path("d.dict")});
  EXPECT_EQ(r.code, cli::kExitData);
  EXPECT_NE(r.err.find("bad-42"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(std::filesystem::exists(Path("d.dict")));
  EXPECT_FALSE(std::filesystem::exists(Path("d.dict.g2p.json")));
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir_)) {
    (void)e;
    ++files;
  }
  EXPECT_EQ(files, 1u);
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(RunCli({}).code, cli::kExitUsage);
  EXPECT_EQ(RunCli({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(RunCli({"parse", "--text", "p a", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(RunCli({"eval", "--metric", "xer", "--pairs", Toy("texts.txt")}).code,
            cli::kExitUsage);
  EXPECT_EQ(RunCli({"eval", "--metric", "cer", "--pairs", Path("missing.tsv")}).code,
            cli::kExitUsage);
  EXPECT_EQ(RunCli({"build-dict", "--corpus", Toy("rec_corpus.tsv")}).code,
            cli::kExitUsage);
}

TEST_F(CliTest, DataErrorsExitTwo) {
  EXPECT_EQ(RunCli({"parse", "--text", "p $"}).code, cli::kExitData);
  io::WriteFileAtomic(Path("p.tsv"), "u1\tonly two\n");
  EXPECT_EQ(RunCli({"eval", "--metric", "cer", "--pairs", Path("p.tsv")}).code,
            cli::kExitData);
}

TEST_F(CliTest, EvalAndCompareJson) {
  io::WriteFileAtomic(Path("a.tsv"), "u1\tab cd\tab cd\nu2\tefg\tefh\nu3\tx\ty\n");
  io::WriteFileAtomic(Path("b.tsv"), "u1\tab cd\tab cd\nu2\tefg\tefg\nu3\tx\tx\n");
  const Result r = RunCli({"eval", "--metric", "cer", "--pairs", Path("a.tsv"),
                        "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.summary["metric"], "cer");
  EXPECT_DOUBLE_EQ(r.summary["micro"].get<double>(), 2.0 / 9.0);
  EXPECT_EQ(r.summary["n"], 3);
  ASSERT_EQ(r.summary["ci"].size(), 2u);
  EXPECT_LE(r.summary["ci"][0].get<double>(), r.summary["micro"].get<double>());
  EXPECT_EQ(RunCli({"eval", "--metric", "cer", "--pairs", Path("a.tsv"), "--seed",
                 "7"})
                .out,
            r.out);

  const Result c = RunCli({"compare", "--metric", "cer", "--a", Path("a.tsv"),
                        "--b", Path("b.tsv")});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_LT(c.summary["delta"].get<double>(), 0.0);
}

TEST_F(CliTest, ParseFeaturizeAndMapping) {
  const Result p = RunCli({"parse", "--text", "t͡sː a"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_NE(p.out.find("t͡sː"), std::string::npos);

  const Result f = RunCli({"featurize", "--text", "p b"});
  ASSERT_EQ(f.code, 0) << f.err;

  const Result m = RunCli({"map-phones", "--target", "fry", "--source", "eng",
                        "--out", Path("map.tsv")});
  ASSERT_EQ(m.code, 0) << m.err;
  const std::string first = io::ReadFile(Path("map.tsv"));
  ASSERT_EQ(RunCli({"map-phones", "--target", "fry", "--source", "eng", "--out",
                 Path("map.tsv")})
                .code,
            0);
  EXPECT_EQ(io::ReadFile(Path("map.tsv")), first);

  const Result n = RunCli({"filter-inventory", "--language", "fry", "--nearest", "3"});
  ASSERT_EQ(n.code, 0) << n.err;
}

TEST_F(CliTest, EnsembleOfLexicons) {
  io::WriteFileAtomic(Path("1.dict"), "w\tp a\n");
  io::WriteFileAtomic(Path("2.dict"), "w\tp a\n");
  io::WriteFileAtomic(Path("3.dict"), "w\tb a\n");
  const Result r = RunCli({"ensemble", "--in", Path("1.dict"), "--in",
                        Path("2.dict"), "--in", Path("3.dict"), "--out",
                        Path("e.dict")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(io::ReadFile(Path("e.dict")), "w\tp a\n");
}

}  // namespace
}  // namespace phonefront
