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

#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "phonefront/error.h"
#include "phonefront/g2p.h"
#include "phonefront/io.h"
#include "phonefront/metrics.h"
#include "testing.h"

namespace phonefront {
namespace {

using testing::Phones;
using testing::ShippedTable;

void ExpectMonotone(const EmResult& em) {
  for (std::size_t i = 1; i < em.log_likelihood.size(); ++i) {
    EXPECT_GE(em.log_likelihood[i], em.log_likelihood[i - 1] - 1e-9) << i;
  }
}

// --- Path-enumeration EM oracle -------------------------------------------
//
// Words here are ASCII and phones are single-character symbols, so a chunk
// is identified by "graphemes:phones" with phones space-joined.

struct ToyEntry {
  std::string word;
  std::vector<std::string> phones;
};

std::string ChunkKey(const ToyEntry& e, std::size_t i, std::size_t a,
                     std::size_t j, std::size_t b) {
  std::string key = e.word.substr(i, a) + ":";
  for (std::size_t k = j; k < j + b; ++k) {
    if (k > j) key += ' ';
    key += e.phones[k];
  }
  return key;
}

struct Path {
  std::vector<std::string> chunks;
  double log_penalty = 0.0;
};

void EnumeratePaths(const ToyEntry& e, std::size_t i, std::size_t j,
                    Path& current, double log_pen, std::vector<Path>& out) {
  if (i == e.word.size() && j == e.phones.size()) {
    out.push_back(current);
    return;
  }
  if (i == e.word.size()) return;
  for (std::size_t a = 1; a <= 2 && i + a <= e.word.size(); ++a) {
    for (std::size_t b = 0; b <= 2 && j + b <= e.phones.size(); ++b) {
      current.chunks.push_back(ChunkKey(e, i, a, j, b));
      const double excess = static_cast<double>(a - 1) +
                            std::abs(1.0 - static_cast<double>(b));
      current.log_penalty = log_pen + excess * std::log(0.1);
      EnumeratePaths(e, i + a, j + b, current, current.log_penalty, out);
      current.chunks.pop_back();
    }
  }
}

struct OracleRun {
  std::map<std::string, double> probs;
  std::vector<double> log_likelihood;
};

OracleRun OracleEm(const std::vector<ToyEntry>& entries, int iters) {
  // Every chunk any lattice contains starts with equal mass.
  std::set<std::string> chunks;
  for (const ToyEntry& e : entries) {
    for (std::size_t i = 0; i < e.word.size(); ++i) {
      for (std::size_t j = 0; j <= e.phones.size(); ++j) {
        for (std::size_t a = 1; a <= 2 && i + a <= e.word.size(); ++a) {
          for (std::size_t b = 0; b <= 2 && j + b <= e.phones.size(); ++b) {
            chunks.insert(ChunkKey(e, i, a, j, b));
          }
        }
      }
    }
  }
  std::vector<std::vector<Path>> paths(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    Path p;
    EnumeratePaths(entries[k], 0, 0, p, 0.0, paths[k]);
  }
  OracleRun run;
  for (const std::string& c : chunks) run.probs[c] = 1.0 / chunks.size();
  for (int it = 0; it < iters; ++it) {
    std::map<std::string, double> counts;
    double ll = 0.0;
    for (const auto& entry_paths : paths) {
      std::vector<double> w;
      double z = 0.0;
      for (const Path& p : entry_paths) {
        double x = std::exp(p.log_penalty);
        for (const std::string& c : p.chunks) x *= run.probs[c];
        w.push_back(x);
        z += x;
      }
      ll += std::log(z);
      for (std::size_t i = 0; i < entry_paths.size(); ++i) {
        for (const std::string& c : entry_paths[i].chunks) {
          counts[c] += w[i] / z;
        }
      }
    }
    run.log_likelihood.push_back(ll);
    double total = 0.0;
    for (const auto& [c, x] : counts) total += x;
    for (auto& [c, p] : run.probs) p = counts[c] / total;
  }
  return run;
}

TEST(AlignEmTest, ThreeWordToyMatchesPathEnumeration) {
  const std::vector<ToyEntry> entries{
      {"aa", {"a", "a"}}, {"ab", {"a", "b"}}, {"ba", {"b", "a"}}};
  Lexicon lex;
  for (const ToyEntry& e : entries) {
    lex.Add(e.word, Phones(e.phones[0] + " " + e.phones[1]),
            Provenance::kGroundTruth);
  }
  EmOptions options;
  options.max_iters = 8;
  options.tol = -std::numeric_limits<double>::infinity();
  const EmResult em = AlignLexiconEm(lex, options);
  const OracleRun oracle = OracleEm(entries, 8);

  ASSERT_EQ(em.log_likelihood.size(), oracle.log_likelihood.size());
  for (std::size_t i = 0; i < em.log_likelihood.size(); ++i) {
    EXPECT_NEAR(em.log_likelihood[i], oracle.log_likelihood[i], 1e-9);
  }
  ASSERT_EQ(em.graphones.size(), oracle.probs.size());
  double total = 0.0;
  for (std::size_t g = 0; g < em.graphones.size(); ++g) {
    EXPECT_NEAR(em.probs[g], oracle.probs.at(em.graphones[g].Key()), 1e-9)
        << em.graphones[g].Key();
    total += em.probs[g];
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
  ExpectMonotone(em);

  // The two identity graphones dominate and every alignment is diagonal.
  std::vector<std::pair<double, std::string>> ranked;
  for (std::size_t g = 0; g < em.graphones.size(); ++g) {
    ranked.emplace_back(em.probs[g], em.graphones[g].Key());
  }
  std::sort(ranked.rbegin(), ranked.rend());
  EXPECT_EQ((std::set<std::string>{ranked[0].second, ranked[1].second}),
            (std::set<std::string>{"a:a", "b:b"}));
  for (const Alignment& a : em.alignments) {
    ASSERT_EQ(a.graphones.size(), 2u) << a.word;
    for (std::size_t k = 0; k < 2; ++k) {
      const Graphone& g = em.graphones[a.graphones[k]];
      EXPECT_EQ(g.graphemes, a.word.substr(k, 1));
      EXPECT_EQ(g.phones, PhoneSequence{a.phones[k]});
    }
  }
}

TEST(AlignEmTest, UnalignableEntrySkipped) {
  Lexicon lex;
  lex.Add("ab", Phones("a b"), Provenance::kGroundTruth);
  lex.Add("xy", Phones("p a t i k"), Provenance::kGroundTruth);
  const EmResult em = AlignLexiconEm(lex);
  EXPECT_EQ(em.unalignable, std::vector<std::string>{"xy"});
  EXPECT_EQ(em.alignments.size(), 1u);

  Lexicon hopeless;
  hopeless.Add("x", Phones("p a t"), Provenance::kGroundTruth);
  EXPECT_THROW(AlignLexiconEm(hopeless), DataError);
  EXPECT_THROW(AlignLexiconEm(Lexicon()), DataError);
}

TEST(AlignEmTest, MonotoneOnRandomLexicons) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    const auto words = testing::DistinctWords(
        80, [&] { return testing::RandomLetters(rng, 2, 7); });
    const Lexicon lex = testing::RuleLexicon(
        words, trial % 2 ? testing::SoftCPhones : testing::DigraphPhones);
    EmResult em = AlignLexiconEm(lex);
    ExpectMonotone(em);
    EXPECT_GT(em.iterations, 1);
  }
}

// --- Training and prediction ----------------------------------------------

Lexicon OneToOneLexicon(std::size_t n, std::uint64_t seed,
                        std::vector<std::string>* words = nullptr) {
  std::mt19937_64 rng(seed);
  const auto w = testing::DistinctWords(
      n, [&] { return testing::RandomLetters(rng, 3, 8); });
  if (words != nullptr) *words = w;
  return testing::RuleLexicon(w, testing::OneToOnePhones);
}

TEST(TrainG2pTest, OneToOneRuleOracle) {
  std::vector<std::string> train_words;
  const Lexicon train = OneToOneLexicon(300, 1, &train_words);
  EmResult em;
  const G2pModel model = TrainG2p(train, {}, &em);
  ExpectMonotone(em);
  for (std::size_t i = 0; i < 40; ++i) {
    const std::string& w = train_words[i];
    EXPECT_EQ(Predict(model, w).front().phones, Phones(testing::OneToOnePhones(w)))
        << w;
  }
  std::mt19937_64 rng(2);
  const auto unseen = testing::DistinctWords(
      60, [&] { return testing::RandomLetters(rng, 3, 8); }, train_words);
  for (const std::string& w : unseen) {
    const auto preds = Predict(model, w);
    ASSERT_EQ(preds.size(), 1u);
    EXPECT_EQ(preds[0].phones, Phones(testing::OneToOnePhones(w))) << w;
    EXPECT_LE(preds[0].log_score, 0.0);
  }
}

TEST(TrainG2pTest, DeterministicAndOrderOne) {
  const Lexicon train = OneToOneLexicon(150, 3);
  const G2pModel a = TrainG2p(train);
  const G2pModel b = TrainG2p(train);
  EXPECT_EQ(a.ToJson().dump(), b.ToJson().dump());
  for (const std::string w : {"abc", "zyx", "quiet", "mango"}) {
    EXPECT_EQ(Predict(a, w).front().phones, Predict(b, w).front().phones);
  }
  G2pTrainOptions unigram;
  unigram.order = 1;
  const G2pModel u = TrainG2p(train, unigram);
  EXPECT_EQ(u.order(), 1);
  EXPECT_FALSE(Predict(u, "mango").front().phones.empty());
  unigram.order = 0;
  EXPECT_THROW(TrainG2p(train, unigram), DataError);
}

TEST(TrainG2pTest, GraphoneProbsNormalized) {
  const G2pModel model = TrainG2p(OneToOneLexicon(100, 4));
  double total = 0.0;
  for (const auto& [key, p] : model.graphone_probs()) {
    EXPECT_GT(p, 0.0);
    EXPECT_LE(p, 1.0);
    total += p;
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(TrainG2pTest, SmoothedDistributionsSumToOne) {
  std::mt19937_64 rng(6);
  const auto words = testing::DistinctWords(
      120, [&] { return testing::RandomLetters(rng, 2, 6); });
  for (int order : {1, 2, 3}) {
    G2pTrainOptions options;
    options.order = order;
    const G2pModel model =
        TrainG2p(testing::RuleLexicon(words, testing::SoftCPhones), options);
    for (const auto& context : model.ObservedContexts()) {
      EXPECT_NEAR(model.ProbabilityMass(context), 1.0, 1e-6);
    }
    // Unseen context backs off to lower orders.
    const std::vector<std::int32_t> unseen(order - 1, 2);
    EXPECT_NEAR(model.ProbabilityMass(unseen), 1.0, 1e-6);
  }
}

TEST(PredictTest, Errors) {
  const G2pModel model = TrainG2p(OneToOneLexicon(60, 5));
  EXPECT_THROW(Predict(model, ""), DataError);
  try {
    Predict(model, "abç1");
    FAIL();
  } catch (const DataError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("'ç'"), std::string::npos) << what;
    EXPECT_NE(what.find("'1'"), std::string::npos) << what;
    EXPECT_EQ(what.find("'a'"), std::string::npos) << what;
  }
  EXPECT_THROW(Predict(model, "ab", 0), DataError);
}

TEST(PredictTest, NbestOrderedAndDistinct) {
  const G2pModel model = TrainG2p(testing::RuleLexicon(
      testing::DistinctWords(200,
                             [rng = std::mt19937_64(8)]() mutable {
                               return testing::RandomLetters(rng, 2, 7);
                             }),
      testing::SoftCPhones));
  const auto preds = Predict(model, "cecil", 16, 5);
  ASSERT_GE(preds.size(), 2u);
  std::set<std::string> seen;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    EXPECT_LE(preds[i].log_score, 0.0);
    if (i > 0) {
      EXPECT_GE(preds[i - 1].log_score, preds[i].log_score);
    }
    EXPECT_TRUE(seen.insert(Render(preds[i].phones)).second);
  }
}

// Every segmentation of `word` into known chunks, scored by the model.
void Enumerate(const G2pModel& model, const std::u32string& chars,
               std::size_t pos, std::vector<std::int32_t> history, double score,
               PhoneSequence phones,
               std::map<std::string, std::pair<double, PhoneSequence>>& best) {
  if (pos == chars.size()) {
    if (phones.empty()) return;
    score += model.LogProb(history, G2pModel::kEos);
    const std::string key = Render(phones);
    auto it = best.find(key);
    if (it == best.end() || score > it->second.first) best[key] = {score, phones};
    return;
  }
  for (std::size_t a = 1; a <= 2 && pos + a <= chars.size(); ++a) {
    std::string chunk;
    for (char32_t c : chars.substr(pos, a)) chunk += static_cast<char>(c);
    for (std::int32_t token : model.TokensFor(chunk)) {
      std::vector<std::int32_t> h = history;
      h.push_back(token);
      PhoneSequence p = phones;
      for (const Segment& s : model.vocab()[token - 2].phones) p.push_back(s);
      Enumerate(model, chars, pos + a, h, score + model.LogProb(history, token),
                p, best);
    }
  }
}

TEST(PredictTest, WideBeamFindsExhaustiveBest) {
  std::mt19937_64 rng(10);
  const auto words = testing::DistinctWords(
      150, [&] { return testing::RandomLetters(rng, 2, 6); });
  const G2pModel model =
      TrainG2p(testing::RuleLexicon(words, testing::DigraphPhones));
  for (const std::string w : {"sh", "ngo", "cash", "shin", "gnat", "tang"}) {
    std::map<std::string, std::pair<double, PhoneSequence>> best;
    std::vector<std::int32_t> bos(model.order() - 1, G2pModel::kBos);
    Enumerate(model, std::u32string(w.begin(), w.end()), 0, bos, 0.0, {}, best);
    ASSERT_FALSE(best.empty());
    auto winner = best.begin();
    for (auto it = best.begin(); it != best.end(); ++it) {
      if (it->second.first > winner->second.first) winner = it;
    }
    const Prediction p = Predict(model, w, 1 << 20).front();
    EXPECT_EQ(p.phones, winner->second.second) << w;
    EXPECT_NEAR(p.log_score, winner->second.first, 1e-9) << w;
  }
}

TEST(PredictTest, WideBeamNbestMatchesExhaustiveRanking) {
  std::mt19937_64 rng(13);
  const auto words = testing::DistinctWords(
      300, [&] { return testing::RandomLetters(rng, 2, 7); });
  const G2pModel model =
      TrainG2p(testing::RuleLexicon(words, testing::SoftCPhones));
  for (const std::string w : {"cecil", "acc", "cinco", "ccc"}) {
    std::map<std::string, std::pair<double, PhoneSequence>> best;
    std::vector<std::int32_t> bos(model.order() - 1, G2pModel::kBos);
    Enumerate(model, std::u32string(w.begin(), w.end()), 0, bos, 0.0, {}, best);
    std::vector<std::pair<double, std::string>> ranked;
    for (const auto& [key, v] : best) ranked.emplace_back(-v.first, key);
    std::sort(ranked.begin(), ranked.end());
    const auto preds = Predict(model, w, 1 << 20, 4);
    ASSERT_EQ(preds.size(), std::min<std::size_t>(4, ranked.size())) << w;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      EXPECT_EQ(Render(preds[i].phones), ranked[i].second) << w << " " << i;
      EXPECT_NEAR(preds[i].log_score, -ranked[i].first, 1e-9) << w << " " << i;
    }
  }
}

TEST(ModelJsonTest, RoundTrip) {
  const G2pModel model = TrainG2p(OneToOneLexicon(120, 11));
  const nlohmann::json j = model.ToJson();
  EXPECT_EQ(j["format"], "phonefront-g2p");
  EXPECT_EQ(j["version"], 1);
  const G2pModel back = G2pModel::FromJson(j, ShippedTable());
  EXPECT_EQ(back.ToJson().dump(), j.dump());

  const auto dir = testing::TempDir("model");
  SaveG2pModel(model, dir / "m.json");
  const G2pModel loaded = LoadG2pModel(dir / "m.json", ShippedTable());
  for (const std::string w : {"zebra", "quick", "pixel"}) {
    const Prediction a = Predict(model, w).front();
    const Prediction b = Predict(loaded, w).front();
    EXPECT_EQ(a.phones, b.phones);
    EXPECT_EQ(a.log_score, b.log_score);
  }
  nlohmann::json wrong = j;
  wrong["version"] = 99;
  EXPECT_THROW(G2pModel::FromJson(wrong, ShippedTable()), DataError);
  io::WriteFileAtomic(dir / "junk.json", "{not json");
  EXPECT_THROW(LoadG2pModel(dir / "junk.json", ShippedTable()), DataError);
  std::filesystem::remove_all(dir);
}

// --- Ensembling -------------------------------------------------------------

std::size_t TotalDistance(const std::vector<PhoneSequence>& c, std::size_t i) {
  std::size_t total = 0;
  for (const PhoneSequence& other : c) total += Levenshtein(c[i], other).distance;
  return total;
}

std::size_t BruteMedoid(const std::vector<PhoneSequence>& c) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (TotalDistance(c, i) < TotalDistance(c, best)) best = i;
  }
  return best;
}

TEST(EnsembleTest, Examples) {
  const PhoneSequence r = Phones("f r i s k");
  EXPECT_EQ(EnsemblePredictions(std::vector<PhoneSequence>{r}), r);
  EXPECT_EQ(EnsemblePredictions(std::vector<PhoneSequence>(4, r)), r);
  EXPECT_THROW(EnsemblePredictions(std::vector<PhoneSequence>{}), DataError);
  // Equal costs: the earliest wins.
  EXPECT_EQ(EnsemblePredictions(
                std::vector<PhoneSequence>{Phones("a"), Phones("i")}),
            Phones("a"));
}

TEST(EnsembleTest, MajorityOfTenAndBruteForce) {
  std::mt19937_64 rng(13);
  const auto& bases = ShippedTable().bases();
  for (int trial = 0; trial < 100; ++trial) {
    PhoneSequence r;
    for (std::size_t i = 0, n = 2 + testing::Draw(rng, 6); i < n; ++i) {
      r.emplace_back(bases[testing::Draw(rng, bases.size())]);
    }
    std::vector<PhoneSequence> c(6, r);
    for (int k = 0; k < 4; ++k) {
      PhoneSequence bad = r;
      for (int e = 0, edits = 1 + testing::Draw(rng, 3); e < edits; ++e) {
        const std::size_t at = testing::Draw(rng, bad.size());
        switch (testing::Draw(rng, 3)) {
          case 0:
            bad[at] = Segment(bases[testing::Draw(rng, bases.size())]);
            break;
          case 1:
            if (bad.size() > 1) bad.erase(bad.begin() + at);
            break;
          default:
            bad.insert(bad.begin() + at,
                       Segment(bases[testing::Draw(rng, bases.size())]));
        }
      }
      c.push_back(bad);
    }
    std::shuffle(c.begin(), c.end(), rng);
    const PhoneSequence out = EnsemblePredictions(c);
    EXPECT_EQ(out, r);
    EXPECT_EQ(out, c[BruteMedoid(c)]);
    std::vector<PhoneSequence> twice = c;
    twice.insert(twice.end(), c.begin(), c.end());
    EXPECT_EQ(EnsemblePredictions(twice), out);
  }
}

// --- Corpus application -----------------------------------------------------

TEST(G2pCorpusTest, DispatchAndCoverage) {
  std::vector<std::string> words;
  const Lexicon train = OneToOneLexicon(150, 14, &words);
  const G2pModel model = TrainG2p(train);

  Lexicon lookup;
  lookup.Add("hûs", Phones("h u s"), Provenance::kGroundTruth);
  lookup.Add(words[0], Phones("x"), Provenance::kGroundTruth);

  const std::vector<std::vector<std::string>> covered{{"Hûs", words[0]}};
  const Lexicon pure = G2pCorpus(nullptr, &lookup, covered);
  EXPECT_EQ(pure.Lookup("hûs"), std::vector<PhoneSequence>{Phones("h u s")});
  EXPECT_EQ(pure.Lookup(words[0]), std::vector<PhoneSequence>{Phones("x")});

  const std::vector<std::vector<std::string>> mixed{
      {"hûs", "zebra", words[0]}, {}, {"Zebra", "kite"}};
  const Lexicon out = G2pCorpus(&model, &lookup, mixed, {8, 3});
  EXPECT_EQ(out.size(), 4u);
  EXPECT_EQ(out.Lookup(words[0]), std::vector<PhoneSequence>{Phones("x")});
  EXPECT_EQ(out.Find("zebra")->front().provenance, Provenance::kG2p);
  EXPECT_EQ(out.Lookup("kite"),
            std::vector<PhoneSequence>{Phones(testing::OneToOnePhones("kite"))});
  EXPECT_EQ(out.Find("hûs")->front().provenance, Provenance::kGroundTruth);

  EXPECT_THROW(G2pCorpus(nullptr, &lookup, mixed), DataError);
  try {
    G2pCorpus(&model, &lookup, std::vector<std::vector<std::string>>{{"ça"}});
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("word 'ça'"), std::string::npos);
  }
}

TEST(G2pCorpusTest, OutputWordsEqualDistinctInputWords) {
  const G2pModel model = TrainG2p(OneToOneLexicon(100, 15));
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::vector<std::string>> texts(1 + testing::Draw(rng, 4));
    std::set<std::string> distinct;
    for (auto& t : texts) {
      for (std::size_t i = 0, n = testing::Draw(rng, 6); i < n; ++i) {
        std::string w = testing::RandomLetters(rng, 1, 5);
        if (testing::Draw(rng, 2)) w[0] = static_cast<char>(w[0] - 'a' + 'A');
        distinct.insert(NormalizeWord(w));
        t.push_back(w);
      }
    }
    const Lexicon out = G2pCorpus(&model, nullptr, texts);
    std::set<std::string> got;
    for (const auto& [w, prons] : out.entries()) {
      got.insert(w);
      EXPECT_EQ(prons.size(), 1u);
    }
    EXPECT_EQ(got, distinct);
  }
}

TEST(TrainG2pTest, NineHundredNinetyOneEntriesUnderTenSeconds) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(991);
  const auto words = testing::DistinctWords(
      991, [&] { return testing::RandomLetters(rng, 3, 10); });
  EmResult em;
  const G2pModel model =
      TrainG2p(testing::RuleLexicon(words, testing::SoftCPhones), {}, &em);
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  ExpectMonotone(em);
  EXPECT_FALSE(model.vocab().empty());
  EXPECT_LT(seconds, 10.0);
}

}  // namespace
}  // namespace phonefront
