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

#ifndef PHONEFRONT_MAKESHIFT_H_
#define PHONEFRONT_MAKESHIFT_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phonefront/g2p.h"
#include "phonefront/ipa.h"
#include "phonefront/lexicon.h"

namespace phonefront {

// Text paired with the phones a recognizer produced for it.
struct TranscribedUtterance {
  std::string id;
  std::vector<std::string> words;  // case-folded
  PhoneSequence phones;
  // Split indices into `phones`, one fewer than words, strictly increasing.
  std::optional<std::vector<std::size_t>> boundaries;
};

// Boundary token inside the phone field of a corpus file.
inline constexpr std::string_view kBoundaryToken = "|";

// Checks the invariants above; throws DataError naming the utterance.
void ValidateUtterance(const TranscribedUtterance& utt);

// Parses `utt_id<TAB>text<TAB>phones` lines (`#` comments). Boundaries are
// present when the phone field contains `|` tokens, in which case there
// must be exactly one fewer of them than words.
std::vector<TranscribedUtterance> ParseCorpus(std::string_view text,
                                              const SymbolTable& table,
                                              const std::string& source_name);
std::vector<TranscribedUtterance> LoadCorpus(const std::filesystem::path& path,
                                             const SymbolTable& table);

struct SegmentationConfig {
  double alpha = 1.0;
  double lambda = 0.0;
  const G2pModel* seed_g2p = nullptr;
  int beam = 8;  // for seed predictions
};

// Total phones over total graphemes (codepoints of the case-folded words).
double EstimateAlpha(std::span<const TranscribedUtterance> corpus);

/// Splits the phones of `utt` into one nonempty span per word.
///
/// Explicit boundaries are used as given. Otherwise every split is scored
/// by the sum over words of -(span_len - alpha * graphemes)^2, minus
/// lambda times the edit distance between the span and the seed model's
/// prediction for the word when a seed model is set. The best split wins;
/// among equal scores the one whose boundaries come earliest does.
std::vector<std::pair<std::string, PhoneSequence>> SegmentPhones(
    const TranscribedUtterance& utt, const SegmentationConfig& config);

// Highest count wins, then the shorter sequence, then the smaller
// canonical rendering.
PhoneSequence MajorityVote(std::span<const PhoneSequence> prons);

// Collects every segmented span per word. Each word's majority
// pronunciation is stored first, the rest in order of first observation.
// Segmentation errors are rethrown with the utterance id.
Lexicon BuildMakeshiftLexicon(std::span<const TranscribedUtterance> corpus,
                              const SegmentationConfig& config, int jobs = 1);

struct RefineOptions {
  int rounds = 2;
  int seed_order = 1;
  double lambda = 2.0;
};

// Builds with `config`, then for each round trains a seed model of
// `seed_order` on the majority pronunciations and rebuilds with it.
// Utterances with explicit boundaries come out the same every round.
Lexicon RefineMakeshiftLexicon(std::span<const TranscribedUtterance> corpus,
                               const SegmentationConfig& config,
                               const RefineOptions& options, int jobs = 1);

}  // namespace phonefront

#endif  // PHONEFRONT_MAKESHIFT_H_
