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

#ifndef PHONEFRONT_METRICS_H_
#define PHONEFRONT_METRICS_H_

#include <Eigen/Core>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phonefront/ipa.h"

namespace phonefront {

enum class EditOp { kMatch, kSubstitute, kDelete, kInsert };

// One alignment step. Indices are -1 where the op does not consume that
// side (insertions have no ref index, deletions no hyp index).
struct EditStep {
  EditOp op;
  std::ptrdiff_t ref_index;
  std::ptrdiff_t hyp_index;
};

struct EditAlignment {
  std::size_t distance = 0;
  std::vector<EditStep> ops;
};

/// Unit-cost Levenshtein distance with one optimal alignment.
///
/// The backtrace prefers match, then substitution, then deletion, then
/// insertion at every step, so the returned alignment is deterministic.
template <typename T>
EditAlignment Levenshtein(std::span<const T> ref, std::span<const T> hyp) {
  using Index = Eigen::Index;
  const Index n = static_cast<Index>(ref.size());
  const Index m = static_cast<Index>(hyp.size());
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> d(n + 1, m + 1);
  for (Index i = 0; i <= n; ++i) d(i, 0) = i;
  for (Index j = 0; j <= m; ++j) d(0, j) = j;
  for (Index i = 1; i <= n; ++i) {
    for (Index j = 1; j <= m; ++j) {
      const std::int64_t diagonal =
          d(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      d(i, j) = std::min({diagonal, d(i - 1, j) + 1, d(i, j - 1) + 1});
    }
  }

  EditAlignment result;
  result.distance = static_cast<std::size_t>(d(n, m));
  Index i = n;
  Index j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] &&
        d(i, j) == d(i - 1, j - 1)) {
      result.ops.push_back({EditOp::kMatch, i - 1, j - 1});
      --i;
      --j;
    } else if (i > 0 && j > 0 && d(i, j) == d(i - 1, j - 1) + 1) {
      result.ops.push_back({EditOp::kSubstitute, i - 1, j - 1});
      --i;
      --j;
    } else if (i > 0 && d(i, j) == d(i - 1, j) + 1) {
      result.ops.push_back({EditOp::kDelete, i - 1, -1});
      --i;
    } else {
      result.ops.push_back({EditOp::kInsert, -1, j - 1});
      --j;
    }
  }
  std::reverse(result.ops.begin(), result.ops.end());
  return result;
}

template <typename T>
EditAlignment Levenshtein(const std::vector<T>& ref,
                          const std::vector<T>& hyp) {
  return Levenshtein(std::span<const T>(ref), std::span<const T>(hyp));
}

// Distance only, in O(min(n, m)) memory.
template <typename T>
std::size_t EditDistance(std::span<const T> ref, std::span<const T> hyp) {
  if (ref.size() < hyp.size()) std::swap(ref, hyp);
  std::vector<std::size_t> row(hyp.size() + 1);
  for (std::size_t j = 0; j <= hyp.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= hyp.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({diagonal + (ref[i - 1] == hyp[j - 1] ? 0 : 1),
                         up + 1, row[j - 1] + 1});
      diagonal = up;
    }
  }
  return row[hyp.size()];
}

enum class Metric { kPer, kCer, kWer };

std::string_view MetricName(Metric metric);
Metric ParseMetric(std::string_view name);

// Edits and reference length of one utterance.
struct EditCounts {
  std::size_t edits = 0;
  std::size_t ref_length = 0;

  // edits / max(1, ref_length)
  double Rate() const;
};

EditCounts PerCounts(const PhoneSequence& ref, const PhoneSequence& hyp);
// Whitespace runs collapse to one space and ends are stripped (after NFC);
// the remaining codepoints, spaces included, are the tokens.
EditCounts CerCounts(std::string_view ref, std::string_view hyp);
EditCounts WerCounts(std::string_view ref, std::string_view hyp);

double Per(const PhoneSequence& ref, const PhoneSequence& hyp);
double Cer(std::string_view ref, std::string_view hyp);
double Wer(std::string_view ref, std::string_view hyp);

struct TextPair {
  std::string id;
  std::string ref;
  std::string hyp;
};

// `utt_id<TAB>ref<TAB>hyp` lines; `#` comments.
std::vector<TextPair> LoadPairs(const std::string& path);

// Scores each pair; PER parses both sides with `table` (required for PER).
std::vector<EditCounts> ScorePairs(std::span<const TextPair> pairs,
                                   Metric metric,
                                   const SymbolTable* table = nullptr);

struct BootstrapOptions {
  int resamples = 1000;
  std::uint64_t seed = 0;
};

struct ConfidenceInterval {
  double low;
  double high;
};

struct CorpusRates {
  double micro = 0.0;  // total edits / total reference length
  double macro = 0.0;  // mean of per-utterance rates
  std::size_t n_utterances = 0;
  std::optional<ConfidenceInterval> ci;  // 95% percentile bootstrap
};

/// Micro and macro error rates, optionally with a bootstrap interval.
///
/// Resampling draws utterance indices with replacement from a
/// std::mt19937_64 seeded with `seed`, using rejection sampling for unbiased
/// bounded draws. Interval ends are the 2.5% and 97.5% quantiles of the
/// resampled micro rates (linear interpolation between order statistics),
/// widened if necessary so the interval always contains the point estimate.
CorpusRates ComputeCorpusRates(std::span<const EditCounts> utterances,
                               std::optional<BootstrapOptions> bootstrap = {});

CorpusRates ComputeCorpusRates(std::span<const TextPair> pairs, Metric metric,
                               const SymbolTable* table,
                               std::optional<BootstrapOptions> bootstrap = {});

struct PairedDelta {
  double delta;  // micro(B) - micro(A)
  double ci_low;
  double ci_high;
};

// Paired bootstrap over utterances shared by two systems.
PairedDelta PairedBootstrapDelta(std::span<const EditCounts> a,
                                 std::span<const EditCounts> b,
                                 const BootstrapOptions& options);

// Checks that both pair lists have identical references in identical order
// before scoring. Throws DataError naming the first mismatching index.
PairedDelta PairedBootstrapDelta(std::span<const TextPair> a_pairs,
                                 std::span<const TextPair> b_pairs,
                                 Metric metric, const SymbolTable* table,
                                 const BootstrapOptions& options);

}  // namespace phonefront

#endif  // PHONEFRONT_METRICS_H_
