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

#include "phonefront/makeshift.h"

#include <cmath>
#include <limits>
#include <map>

#include "phonefront/error.h"
#include "phonefront/io.h"
#include "phonefront/metrics.h"
#include "phonefront/unicode.h"

namespace phonefront {

namespace {

struct Counted {
  PhoneSequence phones;
  std::int64_t count;
};

// Index of the winner in a list of distinct counted pronunciations.
std::size_t MajorityIndex(const std::vector<Counted>& counted) {
  std::size_t best = 0;
  std::string best_rendered = Render(counted[0].phones);
  for (std::size_t i = 1; i < counted.size(); ++i) {
    const Counted& c = counted[i];
    const Counted& b = counted[best];
    if (c.count != b.count) {
      if (c.count > b.count) {
        best = i;
        best_rendered = Render(c.phones);
      }
      continue;
    }
    if (c.phones.size() != b.phones.size()) {
      if (c.phones.size() < b.phones.size()) {
        best = i;
        best_rendered = Render(c.phones);
      }
      continue;
    }
    std::string rendered = Render(c.phones);
    if (rendered < best_rendered) {
      best = i;
      best_rendered = std::move(rendered);
    }
  }
  return best;
}

void AddObservation(std::vector<Counted>& counted, PhoneSequence phones,
                    std::int64_t count) {
  for (Counted& c : counted) {
    if (c.phones == phones) {
      c.count += count;
      return;
    }
  }
  counted.push_back(Counted{std::move(phones), count});
}

std::vector<std::string> CanonicalTokens(const PhoneSequence& s,
                                         std::size_t begin, std::size_t end) {
  std::vector<std::string> out;
  for (std::size_t i = begin; i < end; ++i) out.push_back(s[i].canonical());
  return out;
}

}  // namespace

void ValidateUtterance(const TranscribedUtterance& utt) {
  const std::string where = "utterance '" + utt.id + "'";
  if (utt.words.empty()) throw DataError(where + ": no words");
  if (utt.phones.empty() && utt.words.size() > 1) {
    throw DataError(where + ": no phones for " +
                    std::to_string(utt.words.size()) + " words");
  }
  if (!utt.boundaries) return;
  const std::vector<std::size_t>& b = *utt.boundaries;
  if (b.size() + 1 != utt.words.size()) {
    throw DataError(where + ": " + std::to_string(b.size()) +
                    " boundaries for " + std::to_string(utt.words.size()) +
                    " words");
  }
  std::size_t previous = 0;
  for (std::size_t split : b) {
    if (split <= previous || split >= utt.phones.size()) {
      throw DataError(where + ": boundaries leave an empty word span");
    }
    previous = split;
  }
}

std::vector<TranscribedUtterance> ParseCorpus(std::string_view text,
                                              const SymbolTable& table,
                                              const std::string& source_name) {
  std::vector<TranscribedUtterance> corpus;
  const std::vector<std::string> lines = io::Split(text, '\n');
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::string_view line = lines[n];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (io::IsCommentOrBlank(line)) continue;
    const std::string where = source_name + ":" + std::to_string(n + 1);
    const std::vector<std::string> cells = io::Split(line, '\t');
    if (cells.size() != 3) {
      throw DataError(where + ": expected `utt_id<TAB>text<TAB>phones`");
    }
    TranscribedUtterance utt;
    utt.id = std::string(io::Trim(cells[0]));
    for (const std::string& w : unicode::SplitWhitespace(cells[1])) {
      utt.words.push_back(NormalizeWord(w));
    }
    const std::vector<std::string> parts = io::Split(cells[2], '|');
    std::vector<std::size_t> boundaries;
    try {
      for (std::size_t p = 0; p < parts.size(); ++p) {
        if (p > 0) boundaries.push_back(utt.phones.size());
        for (Segment& s : ParsePhoneString(parts[p], table)) {
          utt.phones.push_back(std::move(s));
        }
      }
      if (parts.size() > 1) utt.boundaries = std::move(boundaries);
      ValidateUtterance(utt);
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
    corpus.push_back(std::move(utt));
  }
  return corpus;
}

std::vector<TranscribedUtterance> LoadCorpus(const std::filesystem::path& path,
                                             const SymbolTable& table) {
  return ParseCorpus(io::ReadFile(path), table, path.string());
}

double EstimateAlpha(std::span<const TranscribedUtterance> corpus) {
  std::size_t phones = 0;
  std::size_t graphemes = 0;
  for (const TranscribedUtterance& utt : corpus) {
    phones += utt.phones.size();
    for (const std::string& w : utt.words) {
      graphemes += unicode::CodepointCount(w);
    }
  }
  if (graphemes == 0) throw DataError("corpus has no graphemes");
  return static_cast<double>(phones) / static_cast<double>(graphemes);
}

std::vector<std::pair<std::string, PhoneSequence>> SegmentPhones(
    const TranscribedUtterance& utt, const SegmentationConfig& config) {
  ValidateUtterance(utt);
  const std::size_t k = utt.words.size();
  const std::size_t m = utt.phones.size();
  std::vector<std::pair<std::string, PhoneSequence>> out;
  const auto span = [&](std::size_t begin, std::size_t end) {
    return PhoneSequence(utt.phones.begin() + begin, utt.phones.begin() + end);
  };

  if (utt.boundaries || k == 1) {
    std::vector<std::size_t> cuts{0};
    if (utt.boundaries) {
      cuts.insert(cuts.end(), utt.boundaries->begin(), utt.boundaries->end());
    }
    cuts.push_back(m);
    for (std::size_t w = 0; w < k; ++w) {
      out.emplace_back(utt.words[w], span(cuts[w], cuts[w + 1]));
    }
    return out;
  }

  if (!(config.alpha > 0.0)) throw DataError("alpha must be positive");
  if (config.lambda < 0.0) throw DataError("lambda must be non-negative");
  if (m < k) {
    throw DataError("utterance '" + utt.id + "': " + std::to_string(m) +
                    " phones for " + std::to_string(k) + " words");
  }

  const bool use_seed = config.seed_g2p != nullptr && config.lambda > 0.0;
  std::vector<std::vector<std::string>> seed(k);
  if (use_seed) {
    for (std::size_t w = 0; w < k; ++w) {
      const PhoneSequence p =
          Predict(*config.seed_g2p, utt.words[w], config.beam, 1)
              .front()
              .phones;
      seed[w] = CanonicalTokens(p, 0, p.size());
    }
  }
  std::vector<double> target(k);
  for (std::size_t w = 0; w < k; ++w) {
    target[w] =
        config.alpha * static_cast<double>(unicode::CodepointCount(utt.words[w]));
  }
  const auto score = [&](std::size_t w, std::size_t begin, std::size_t end) {
    const double d = static_cast<double>(end - begin) - target[w];
    double s = -d * d;
    if (use_seed) {
      const auto tokens = CanonicalTokens(utt.phones, begin, end);
      s -= config.lambda *
           static_cast<double>(EditDistance<std::string>(tokens, seed[w]));
    }
    return s;
  };

  // best(w, s): best score for words w.. over phones s..; word w may end at
  // any e leaving one phone per remaining word.
  constexpr double kNone = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best(k + 1, std::vector<double>(m + 1, kNone));
  best[k][m] = 0.0;
  for (std::size_t w = k; w-- > 0;) {
    const std::size_t rest = k - w - 1;
    for (std::size_t s = w; s + rest < m; ++s) {
      for (std::size_t e = s + 1; e + rest <= m; ++e) {
        if (best[w + 1][e] == kNone) continue;
        best[w][s] = std::max(best[w][s], score(w, s, e) + best[w + 1][e]);
      }
    }
  }
  std::size_t s = 0;
  for (std::size_t w = 0; w < k; ++w) {
    const std::size_t rest = k - w - 1;
    for (std::size_t e = s + 1; e + rest <= m; ++e) {
      if (best[w + 1][e] == kNone) continue;
      if (score(w, s, e) + best[w + 1][e] >= best[w][s] - 1e-9) {
        out.emplace_back(utt.words[w], span(s, e));
        s = e;
        break;
      }
    }
  }
  return out;
}

PhoneSequence MajorityVote(std::span<const PhoneSequence> prons) {
  if (prons.empty()) throw DataError("majority vote over no pronunciations");
  std::vector<Counted> counted;
  for (const PhoneSequence& p : prons) AddObservation(counted, p, 1);
  return counted[MajorityIndex(counted)].phones;
}

Lexicon BuildMakeshiftLexicon(std::span<const TranscribedUtterance> corpus,
                              const SegmentationConfig& config, int jobs) {
  std::vector<std::vector<std::pair<std::string, PhoneSequence>>> segmented(
      corpus.size());
  io::ParallelFor(corpus.size(), jobs, [&](std::size_t i) {
    try {
      segmented[i] = SegmentPhones(corpus[i], config);
    } catch (const DataError& e) {
      const std::string what = e.what();
      const std::string prefix = "utterance '" + corpus[i].id + "'";
      if (what.starts_with(prefix)) throw;
      throw DataError(prefix + ": " + what);
    }
  });

  std::map<std::string, std::vector<Counted>> observed;
  for (auto& spans : segmented) {
    for (auto& [word, phones] : spans) {
      if (phones.empty()) continue;
      AddObservation(observed[word], std::move(phones), 1);
    }
  }

  Lexicon lexicon;
  for (auto& [word, counted] : observed) {
    const std::size_t winner = MajorityIndex(counted);
    lexicon.Add(word, counted[winner].phones, Provenance::kRecognized,
                counted[winner].count);
    for (std::size_t i = 0; i < counted.size(); ++i) {
      if (i == winner) continue;
      lexicon.Add(word, std::move(counted[i].phones), Provenance::kRecognized,
                  counted[i].count);
    }
  }
  return lexicon;
}

Lexicon RefineMakeshiftLexicon(std::span<const TranscribedUtterance> corpus,
                               const SegmentationConfig& config,
                               const RefineOptions& options, int jobs) {
  if (options.rounds < 0) throw DataError("refine rounds must be >= 0");
  if (options.seed_order < 1) throw DataError("seed order must be >= 1");
  if (!(options.lambda >= 0.0)) throw DataError("refine lambda must be >= 0");
  Lexicon lexicon = BuildMakeshiftLexicon(corpus, config, jobs);
  for (int round = 0; round < options.rounds && !lexicon.empty(); ++round) {
    G2pTrainOptions train;
    train.order = options.seed_order;
    const G2pModel seed = TrainG2p(lexicon.MajorityOnly(), train);
    SegmentationConfig next = config;
    next.seed_g2p = &seed;
    next.lambda = options.lambda;
    lexicon = BuildMakeshiftLexicon(corpus, next, jobs);
  }
  return lexicon;
}

}  // namespace phonefront
