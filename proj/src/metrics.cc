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

#include "phonefront/metrics.h"

#include <cmath>
#include <limits>
#include <random>

#include "phonefront/error.h"
#include "phonefront/io.h"
#include "phonefront/unicode.h"

namespace phonefront {

namespace {

std::vector<std::string> CanonicalTokens(const PhoneSequence& s) {
  std::vector<std::string> tokens;
  tokens.reserve(s.size());
  for (const Segment& seg : s) tokens.push_back(seg.canonical());
  return tokens;
}

// Unbiased draw from [0, n).
std::size_t UniformIndex(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x < threshold);
  return static_cast<std::size_t>(x % bound);
}

double Quantile(std::vector<double> sorted_values, double q) {
  const double h = (static_cast<double>(sorted_values.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted_values.size() - 1);
  return sorted_values[lo] +
         (h - static_cast<double>(lo)) * (sorted_values[hi] - sorted_values[lo]);
}

double MicroRate(std::size_t edits, std::size_t length) {
  return static_cast<double>(edits) /
         static_cast<double>(std::max<std::size_t>(1, length));
}

void CheckResamples(const BootstrapOptions& options) {
  if (options.resamples < 1) {
    throw DataError("bootstrap needs at least one resample");
  }
}

}  // namespace

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kPer:
      return "per";
    case Metric::kCer:
      return "cer";
    case Metric::kWer:
      return "wer";
  }
  return "unknown";
}

Metric ParseMetric(std::string_view name) {
  if (name == "per") return Metric::kPer;
  if (name == "cer") return Metric::kCer;
  if (name == "wer") return Metric::kWer;
  throw DataError("unknown metric '" + std::string(name) + "'");
}

double EditCounts::Rate() const { return MicroRate(edits, ref_length); }

EditCounts PerCounts(const PhoneSequence& ref, const PhoneSequence& hyp) {
  const auto r = CanonicalTokens(ref);
  const auto h = CanonicalTokens(hyp);
  return EditCounts{EditDistance<std::string>(r, h), r.size()};
}

EditCounts CerCounts(std::string_view ref, std::string_view hyp) {
  const std::u32string r =
      unicode::DecodeUtf8(unicode::CollapseWhitespace(unicode::ToNfc(ref)));
  const std::u32string h =
      unicode::DecodeUtf8(unicode::CollapseWhitespace(unicode::ToNfc(hyp)));
  return EditCounts{
      EditDistance<char32_t>(std::span<const char32_t>(r.data(), r.size()),
                             std::span<const char32_t>(h.data(), h.size())),
      r.size()};
}

EditCounts WerCounts(std::string_view ref, std::string_view hyp) {
  const auto r = unicode::SplitWhitespace(unicode::ToNfc(ref));
  const auto h = unicode::SplitWhitespace(unicode::ToNfc(hyp));
  return EditCounts{EditDistance<std::string>(r, h), r.size()};
}

double Per(const PhoneSequence& ref, const PhoneSequence& hyp) {
  return PerCounts(ref, hyp).Rate();
}

double Cer(std::string_view ref, std::string_view hyp) {
  return CerCounts(ref, hyp).Rate();
}

double Wer(std::string_view ref, std::string_view hyp) {
  return WerCounts(ref, hyp).Rate();
}

std::vector<TextPair> LoadPairs(const std::string& path) {
  std::vector<TextPair> pairs;
  const std::vector<std::string> lines = io::ReadLines(path);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (io::IsCommentOrBlank(lines[n])) continue;
    std::vector<std::string> cells = io::Split(lines[n], '\t');
    if (cells.size() != 3) {
      throw DataError(path + ":" + std::to_string(n + 1) +
                      ": expected `utt_id<TAB>ref<TAB>hyp`");
    }
    pairs.push_back(TextPair{std::string(io::Trim(cells[0])),
                             std::move(cells[1]), std::move(cells[2])});
  }
  return pairs;
}

std::vector<EditCounts> ScorePairs(std::span<const TextPair> pairs,
                                   Metric metric, const SymbolTable* table) {
  if (metric == Metric::kPer && table == nullptr) {
    throw DataError("PER scoring needs a symbol table");
  }
  std::vector<EditCounts> out;
  out.reserve(pairs.size());
  for (const TextPair& p : pairs) {
    switch (metric) {
      case Metric::kPer:
        try {
          out.push_back(PerCounts(ParsePhoneString(p.ref, *table),
                                  ParsePhoneString(p.hyp, *table)));
        } catch (const DataError& e) {
          throw DataError("utterance '" + p.id + "': " + e.what());
        }
        break;
      case Metric::kCer:
        out.push_back(CerCounts(p.ref, p.hyp));
        break;
      case Metric::kWer:
        out.push_back(WerCounts(p.ref, p.hyp));
        break;
    }
  }
  return out;
}

CorpusRates ComputeCorpusRates(std::span<const EditCounts> utterances,
                               std::optional<BootstrapOptions> bootstrap) {
  if (utterances.empty()) throw DataError("no utterances to score");
  CorpusRates rates;
  rates.n_utterances = utterances.size();
  std::size_t edits = 0;
  std::size_t length = 0;
  double rate_sum = 0.0;
  for (const EditCounts& u : utterances) {
    edits += u.edits;
    length += u.ref_length;
    rate_sum += u.Rate();
  }
  rates.micro = MicroRate(edits, length);
  rates.macro = rate_sum / static_cast<double>(utterances.size());

  if (bootstrap) {
    CheckResamples(*bootstrap);
    std::mt19937_64 rng(bootstrap->seed);
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(bootstrap->resamples));
    const std::size_t n = utterances.size();
    for (int r = 0; r < bootstrap->resamples; ++r) {
      std::size_t e = 0;
      std::size_t l = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const EditCounts& u = utterances[UniformIndex(rng, n)];
        e += u.edits;
        l += u.ref_length;
      }
      samples.push_back(MicroRate(e, l));
    }
    std::sort(samples.begin(), samples.end());
    rates.ci = ConfidenceInterval{
        std::min(Quantile(samples, 0.025), rates.micro),
        std::max(Quantile(samples, 0.975), rates.micro)};
  }
  return rates;
}

CorpusRates ComputeCorpusRates(std::span<const TextPair> pairs, Metric metric,
                               const SymbolTable* table,
                               std::optional<BootstrapOptions> bootstrap) {
  if (pairs.empty()) throw DataError("no utterance pairs to score");
  const std::vector<EditCounts> counts = ScorePairs(pairs, metric, table);
  return ComputeCorpusRates(counts, bootstrap);
}

PairedDelta PairedBootstrapDelta(std::span<const EditCounts> a,
                                 std::span<const EditCounts> b,
                                 const BootstrapOptions& options) {
  if (a.size() != b.size()) {
    throw DataError("paired comparison needs equally many utterances (" +
                    std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw DataError("no utterances to compare");
  CheckResamples(options);
  const auto micro = [](std::span<const EditCounts> xs) {
    std::size_t e = 0;
    std::size_t l = 0;
    for (const EditCounts& x : xs) {
      e += x.edits;
      l += x.ref_length;
    }
    return MicroRate(e, l);
  };
  PairedDelta result{micro(b) - micro(a), 0.0, 0.0};

  std::mt19937_64 rng(options.seed);
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(options.resamples));
  const std::size_t n = a.size();
  for (int r = 0; r < options.resamples; ++r) {
    std::size_t ea = 0, la = 0, eb = 0, lb = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t idx = UniformIndex(rng, n);
      ea += a[idx].edits;
      la += a[idx].ref_length;
      eb += b[idx].edits;
      lb += b[idx].ref_length;
    }
    samples.push_back(MicroRate(eb, lb) - MicroRate(ea, la));
  }
  std::sort(samples.begin(), samples.end());
  result.ci_low = Quantile(samples, 0.025);
  result.ci_high = Quantile(samples, 0.975);
  return result;
}

PairedDelta PairedBootstrapDelta(std::span<const TextPair> a_pairs,
                                 std::span<const TextPair> b_pairs,
                                 Metric metric, const SymbolTable* table,
                                 const BootstrapOptions& options) {
  if (a_pairs.size() != b_pairs.size()) {
    throw DataError("paired comparison needs equally many utterances (" +
                    std::to_string(a_pairs.size()) + " vs " +
                    std::to_string(b_pairs.size()) + ")");
  }
  for (std::size_t i = 0; i < a_pairs.size(); ++i) {
    if (a_pairs[i].ref != b_pairs[i].ref) {
      throw DataError("reference mismatch at index " + std::to_string(i) +
                      " ('" + a_pairs[i].id + "' vs '" + b_pairs[i].id +
                      "')");
    }
  }
  return PairedBootstrapDelta(ScorePairs(a_pairs, metric, table),
                              ScorePairs(b_pairs, metric, table), options);
}

}  // namespace phonefront
