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

#ifndef PHONEFRONT_IPA_H_
#define PHONEFRONT_IPA_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace phonefront {

/// One parsed phone: a base symbol plus diacritics.
///
/// Both parts are stored NFC-normalized. Segments built by the parser keep
/// their diacritics in symbol-table order, which makes the canonical form
/// unique for a given phone.
class Segment {
 public:
  explicit Segment(std::string base, std::vector<std::string> diacritics = {});

  const std::string& base() const { return base_; }
  const std::vector<std::string>& diacritics() const { return diacritics_; }
  const std::string& canonical() const { return canonical_; }

  friend bool operator==(const Segment& a, const Segment& b) {
    return a.base_ == b.base_ && a.diacritics_ == b.diacritics_;
  }

 private:
  std::string base_;
  std::vector<std::string> diacritics_;
  std::string canonical_;
};

// Orders segments by canonical form (UTF-8 byte order is codepoint order).
struct CanonicalLess {
  bool operator()(const Segment& a, const Segment& b) const {
    return a.canonical() < b.canonical();
  }
};

using PhoneSequence = std::vector<Segment>;

/// Base and diacritic alphabet, loaded from a `<kind> <symbol>` text file.
class SymbolTable {
 public:
  enum class Kind { kBase, kDiacritic };

  SymbolTable() = default;

  static SymbolTable Load(const std::filesystem::path& path);
  // Same format as Load, from in-memory text.
  static SymbolTable FromText(std::string_view text,
                              const std::filesystem::path& source = {});

  std::size_t num_bases() const { return num_bases_; }
  std::size_t num_diacritics() const { return diacritic_order_.size(); }
  const std::filesystem::path& source() const { return source_; }

  bool IsBase(std::string_view symbol) const;
  bool IsDiacritic(std::string_view symbol) const;

  // Base symbols in file order (NFC).
  const std::vector<std::string>& bases() const { return base_order_; }
  // Diacritics in canonical rendering order (NFC).
  const std::vector<std::string>& diacritics() const {
    return diacritic_order_;
  }

 private:
  friend PhoneSequence ParsePhoneString(std::string_view,
                                        const SymbolTable&);

  struct Entry {
    Kind kind;
    std::string nfc;
    std::size_t rank;
  };

  void AddEntry(Kind kind, std::string_view symbol);

  std::unordered_map<std::u32string, Entry> entries_;  // keyed by NFD
  std::vector<std::string> base_order_;
  std::vector<std::string> diacritic_order_;
  std::size_t num_bases_ = 0;
  std::size_t max_symbol_length_ = 0;  // in NFD codepoints
  std::filesystem::path source_;
};

// NFD-normalizes `text` and splits it into segments by greedy longest match
// over the table's bases; diacritics attach to the preceding segment of the
// same whitespace-delimited token. Throws ParseError.
PhoneSequence ParsePhoneString(std::string_view text,
                               const SymbolTable& table);

// Parses text that must contain exactly one segment.
Segment ParseSegment(std::string_view text, const SymbolTable& table);

std::string Canonicalize(const Segment& segment);

// Canonical forms joined by single spaces.
std::string Render(const PhoneSequence& sequence);

}  // namespace phonefront

#endif  // PHONEFRONT_IPA_H_
