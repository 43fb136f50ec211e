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

#ifndef PHONEFRONT_LEXICON_H_
#define PHONEFRONT_LEXICON_H_

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phonefront/ipa.h"

namespace phonefront {

enum class Provenance { kGroundTruth, kG2p, kRecognized };

std::string_view ProvenanceName(Provenance p);
Provenance ParseProvenance(std::string_view name);

struct Pronunciation {
  PhoneSequence phones;
  std::int64_t count = 1;
  Provenance provenance = Provenance::kGroundTruth;

  friend bool operator==(const Pronunciation& a, const Pronunciation& b) {
    return a.phones == b.phones && a.count == b.count &&
           a.provenance == b.provenance;
  }
};

/// Case-folded words with one or more counted pronunciations each.
///
/// A word's pronunciations are kept in descending count order; equal counts
/// keep the order in which the pronunciations were first added.
class Lexicon {
 public:
  // Adds `count` observations of `phones` for `word`. An identical
  // pronunciation only has its count raised (its provenance is kept).
  // Throws DataError for empty phones, empty words, words containing
  // whitespace or count < 1.
  void Add(std::string_view word, PhoneSequence phones, Provenance provenance,
           std::int64_t count = 1);

  // Pronunciations in stored order; empty for OOV words.
  std::vector<PhoneSequence> Lookup(std::string_view word) const;
  const std::vector<Pronunciation>* Find(std::string_view word) const;
  bool Contains(std::string_view word) const { return Find(word) != nullptr; }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::int64_t TotalCount() const;

  // Word -> pronunciations, ordered by word codepoints.
  const std::map<std::string, std::vector<Pronunciation>>& entries() const {
    return entries_;
  }

  // Copy keeping only the first (majority) pronunciation of each word.
  Lexicon MajorityOnly() const;

  friend bool operator==(const Lexicon& a, const Lexicon& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::map<std::string, std::vector<Pronunciation>> entries_;
  // First-insertion rank of each pronunciation, parallel to entries_.
  std::map<std::string, std::vector<std::size_t>> first_seen_;
};

// Case folding applied to every word key.
std::string NormalizeWord(std::string_view word);

// MFA-style text: `word<TAB or spaces>phone phone ...`, `#` comments.
// Repeated identical lines raise the pronunciation count.
Lexicon ParseLexicon(std::istream& in, const SymbolTable& table,
                     Provenance provenance,
                     const std::string& source_name = "lexicon");
Lexicon LoadLexicon(const std::filesystem::path& path,
                    const SymbolTable& table, Provenance provenance);

// Words in codepoint order, each pronunciation written `count` times, so
// loading the output restores the same counts.
void WriteLexicon(const Lexicon& lexicon, std::ostream& out);
std::string LexiconToString(const Lexicon& lexicon);
void SaveLexicon(const Lexicon& lexicon, const std::filesystem::path& path);

nlohmann::json LexiconToJson(const Lexicon& lexicon);

// Distinct words of a whitespace-tokenized corpus that the lexicon lacks,
// case-folded, in order of first occurrence.
std::vector<std::string> OovWords(
    std::span<const std::vector<std::string>> corpus, const Lexicon& lexicon);

// Reads one whitespace-tokenized text per line (blank lines are kept as
// empty texts; `#` lines are not treated as comments).
std::vector<std::vector<std::string>> LoadTexts(
    const std::filesystem::path& path);

}  // namespace phonefront

#endif  // PHONEFRONT_LEXICON_H_
