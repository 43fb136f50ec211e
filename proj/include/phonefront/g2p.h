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

#ifndef PHONEFRONT_G2P_H_
#define PHONEFRONT_G2P_H_

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phonefront/ipa.h"
#include "phonefront/lexicon.h"

namespace phonefront {

// A joint grapheme/phone chunk. `graphemes` holds 1-2 codepoints of a
// case-folded NFC word; `phones` holds 0-2 segments.
struct Graphone {
  std::string graphemes;
  PhoneSequence phones;

  // `graphemes:phone phone`, unique per graphone.
  std::string Key() const;

  friend bool operator==(const Graphone& a, const Graphone& b) {
    return a.graphemes == b.graphemes && a.phones == b.phones;
  }
};

struct EmOptions {
  int max_graphemes = 2;
  int max_phones = 2;
  int max_iters = 50;
  double tol = 1e-6;
  // Each chunk is weighted by penalty^((graphemes - 1) + |1 - phones|)
  // during alignment. The weight is fixed, so EM stays monotone, and it
  // stops the likelihood from being maximized by whole-word chunks.
  double chunk_penalty = 0.1;
};

struct Alignment {
  std::string word;
  PhoneSequence phones;
  std::int64_t weight = 1;
  std::vector<std::size_t> graphones;  // ids into EmResult::graphones
};

struct EmResult {
  std::vector<Graphone> graphones;
  std::vector<double> probs;  // parallel to graphones, sums to 1
  std::vector<Alignment> alignments;
  // Corpus log-likelihood before each M-step.
  std::vector<double> log_likelihood;
  // Words skipped because their phones cannot be chunked within the limits.
  std::vector<std::string> unalignable;
  int iterations = 0;
};

// Graphemes of a word as the model sees them: NFC codepoints of the
// case-folded word.
std::u32string WordGraphemes(std::string_view word);

// Every stored pronunciation is one training pair, weighted by its count.
EmResult AlignLexiconEm(const Lexicon& lexicon,
                        const EmOptions& options = EmOptions());

struct Prediction {
  PhoneSequence phones;
  double log_score;
};

struct G2pTrainOptions {
  int order = 3;
  EmOptions em;
};

/// Joint-sequence G2P model: an n-gram over graphone tokens with
/// interpolated Witten-Bell smoothing.
///
/// Token ids: 0 is BOS, 1 is EOS, graphone `vocab()[i]` is token i + 2.
/// The lowest order interpolates with a uniform distribution over all
/// graphones plus EOS.
class G2pModel {
 public:
  static constexpr std::int32_t kBos = 0;
  static constexpr std::int32_t kEos = 1;

  int order() const { return order_; }
  const std::vector<Graphone>& vocab() const { return vocab_; }
  // EM probabilities of every graphone seen in alignment, keyed by Key().
  const std::map<std::string, double>& graphone_probs() const {
    return graphone_probs_;
  }

  // Smoothed log P(token | history); only the last order-1 entries of
  // `history` are used. `token` is a graphone token or kEos.
  double LogProb(std::span<const std::int32_t> history,
                 std::int32_t token) const;

  // Sum of P(w | history) over all predictable tokens (test hook).
  double ProbabilityMass(std::span<const std::int32_t> history) const;

  // Ids of contexts that have successor counts, for inspection.
  std::vector<std::vector<std::int32_t>> ObservedContexts() const;

  // Tokens whose graphemes equal `chunk`, in id order.
  const std::vector<std::int32_t>& TokensFor(std::string_view chunk) const;

  nlohmann::json ToJson() const;
  static G2pModel FromJson(const nlohmann::json& j, const SymbolTable& table);

 private:
  friend G2pModel TrainG2p(const Lexicon&, const G2pTrainOptions&,
                           EmResult*);

  struct ContextStats {
    std::int64_t total = 0;
    std::map<std::int32_t, std::int64_t> successors;
  };

  double Prob(std::span<const std::int32_t> context, std::int32_t token) const;
  void Index();

  int order_ = 3;
  std::vector<Graphone> vocab_;
  std::map<std::string, double> graphone_probs_;
  std::map<std::vector<std::int32_t>, ContextStats> contexts_;
  std::map<std::string, std::vector<std::int32_t>> by_chunk_;
};

// Trains on every stored pronunciation. Throws DataError when nothing is
// alignable. `em_result`, when given, receives the alignment run.
G2pModel TrainG2p(const Lexicon& lexicon,
                  const G2pTrainOptions& options = G2pTrainOptions(),
                  EmResult* em_result = nullptr);

void SaveG2pModel(const G2pModel& model, const std::filesystem::path& path);
G2pModel LoadG2pModel(const std::filesystem::path& path,
                      const SymbolTable& table);

/// Beam search over segmentations of `word` into known grapheme chunks.
///
/// Hypotheses advance position by position. Those with the same position
/// and n-gram history are recombined down to the `nbest` best distinct
/// phone strings, and at most `beam` survive each
/// position (ties by canonical phone string). Finished hypotheses with the
/// same phones are merged. Returns up to `nbest` predictions, best first.
/// Throws DataError for an empty word or characters no graphone covers.
std::vector<Prediction> Predict(const G2pModel& model, std::string_view word,
                                int beam = 8, int nbest = 1);

// Candidate with the least summed phone edit distance to all candidates;
// ties go to the earliest.
PhoneSequence EnsemblePredictions(std::span<const PhoneSequence> candidates);

struct G2pCorpusOptions {
  int beam = 8;
  int jobs = 1;
};

// One pronunciation for every distinct (case-folded) word of `texts`:
// the lexicon's majority entry when present, otherwise the model's best
// prediction. Either source may be null.
Lexicon G2pCorpus(const G2pModel* model, const Lexicon* lexicon,
                  std::span<const std::vector<std::string>> texts,
                  const G2pCorpusOptions& options = G2pCorpusOptions());

}  // namespace phonefront

#endif  // PHONEFRONT_G2P_H_
