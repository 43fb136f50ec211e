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

#include "phonefront/lexicon.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "phonefront/error.h"
#include "phonefront/io.h"
#include "phonefront/unicode.h"

namespace phonefront {

std::string_view ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kGroundTruth:
      return "ground_truth";
    case Provenance::kG2p:
      return "g2p";
    case Provenance::kRecognized:
      return "recognized";
  }
  return "unknown";
}

Provenance ParseProvenance(std::string_view name) {
  if (name == "ground_truth") return Provenance::kGroundTruth;
  if (name == "g2p") return Provenance::kG2p;
  if (name == "recognized") return Provenance::kRecognized;
  throw DataError("unknown provenance '" + std::string(name) + "'");
}

std::string NormalizeWord(std::string_view word) {
  return unicode::FoldCase(word);
}

void Lexicon::Add(std::string_view word, PhoneSequence phones,
                  Provenance provenance, std::int64_t count) {
  if (count < 1) throw DataError("pronunciation count must be positive");
  if (phones.empty()) {
    throw DataError("empty pronunciation for '" + std::string(word) + "'");
  }
  std::string key = NormalizeWord(word);
  if (key.empty()) throw DataError("empty word");
  for (char32_t c : unicode::DecodeUtf8(key)) {
    if (unicode::IsWhitespace(c)) {
      throw DataError("word '" + key + "' contains whitespace");
    }
  }
  auto& prons = entries_[key];
  auto& seen = first_seen_[key];

  std::size_t i = 0;
  while (i < prons.size() && prons[i].phones != phones) ++i;
  if (i < prons.size()) {
    prons[i].count += count;
  } else {
    seen.push_back(prons.size());
    prons.push_back(Pronunciation{std::move(phones), count, provenance});
  }
  // Only element i changed, and only upward; bubble it into place.
  while (i > 0 &&
         (prons[i - 1].count < prons[i].count ||
          (prons[i - 1].count == prons[i].count && seen[i - 1] > seen[i]))) {
    std::swap(prons[i - 1], prons[i]);
    std::swap(seen[i - 1], seen[i]);
    --i;
  }
}

const std::vector<Pronunciation>* Lexicon::Find(std::string_view word) const {
  auto it = entries_.find(NormalizeWord(word));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<PhoneSequence> Lexicon::Lookup(std::string_view word) const {
  std::vector<PhoneSequence> out;
  if (const auto* prons = Find(word)) {
    for (const Pronunciation& p : *prons) out.push_back(p.phones);
  }
  return out;
}

std::int64_t Lexicon::TotalCount() const {
  std::int64_t total = 0;
  for (const auto& [word, prons] : entries_) {
    for (const Pronunciation& p : prons) total += p.count;
  }
  return total;
}

Lexicon Lexicon::MajorityOnly() const {
  Lexicon out;
  for (const auto& [word, prons] : entries_) {
    const Pronunciation& top = prons.front();
    out.Add(word, top.phones, top.provenance, top.count);
  }
  return out;
}

Lexicon ParseLexicon(std::istream& in, const SymbolTable& table,
                     Provenance provenance, const std::string& source_name) {
  Lexicon lexicon;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (io::IsCommentOrBlank(line)) continue;
    const std::string_view trimmed = io::Trim(line);
    const std::string where = source_name + ":" + std::to_string(line_number);
    const std::size_t split = trimmed.find_first_of(" \t");
    if (split == std::string_view::npos) {
      throw DataError(where + ": empty pronunciation");
    }
    const std::string_view word = trimmed.substr(0, split);
    const std::string_view field = io::Trim(trimmed.substr(split));
    PhoneSequence phones;
    try {
      phones = ParsePhoneString(field, table);
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
    if (phones.empty()) throw DataError(where + ": empty pronunciation");
    try {
      lexicon.Add(word, std::move(phones), provenance);
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
  }
  return lexicon;
}

Lexicon LoadLexicon(const std::filesystem::path& path,
                    const SymbolTable& table, Provenance provenance) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return ParseLexicon(in, table, provenance, path.string());
}

void WriteLexicon(const Lexicon& lexicon, std::ostream& out) {
  for (const auto& [word, prons] : lexicon.entries()) {
    for (const Pronunciation& p : prons) {
      const std::string line = word + "\t" + Render(p.phones) + "\n";
      for (std::int64_t i = 0; i < p.count; ++i) out << line;
    }
  }
}

std::string LexiconToString(const Lexicon& lexicon) {
  std::ostringstream out;
  WriteLexicon(lexicon, out);
  return out.str();
}

void SaveLexicon(const Lexicon& lexicon, const std::filesystem::path& path) {
  io::WriteFileAtomic(path, LexiconToString(lexicon));
}

nlohmann::json LexiconToJson(const Lexicon& lexicon) {
  nlohmann::json words = nlohmann::json::object();
  for (const auto& [word, prons] : lexicon.entries()) {
    nlohmann::json list = nlohmann::json::array();
    for (const Pronunciation& p : prons) {
      list.push_back({{"phones", Render(p.phones)},
                      {"count", p.count},
                      {"provenance", ProvenanceName(p.provenance)}});
    }
    words[word] = std::move(list);
  }
  return words;
}

std::vector<std::string> OovWords(
    std::span<const std::vector<std::string>> corpus, const Lexicon& lexicon) {
  std::vector<std::string> oov;
  std::set<std::string> seen;
  for (const auto& text : corpus) {
    for (const std::string& token : text) {
      std::string word = NormalizeWord(token);
      if (!seen.insert(word).second) continue;
      if (!lexicon.Contains(word)) oov.push_back(std::move(word));
    }
  }
  return oov;
}

std::vector<std::vector<std::string>> LoadTexts(
    const std::filesystem::path& path) {
  std::vector<std::vector<std::string>> texts;
  for (const std::string& line : io::ReadLines(path)) {
    texts.push_back(unicode::SplitWhitespace(line));
  }
  return texts;
}

}  // namespace phonefront
