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

#include "phonefront/ipa.h"

#include <unicode/utf8.h>

#include <algorithm>
#include <cstdio>
#include <utility>

#include "phonefront/error.h"
#include "phonefront/io.h"
#include "phonefront/unicode.h"

namespace phonefront {

namespace {

std::string DescribeCodepoint(char32_t c) {
  char hex[16];
  std::snprintf(hex, sizeof(hex), "U+%04X", static_cast<unsigned>(c));
  return std::string(hex) + " '" + unicode::EncodeUtf8(c) + "'";
}

}  // namespace

Segment::Segment(std::string base, std::vector<std::string> diacritics)
    : base_(std::move(base)), diacritics_(std::move(diacritics)) {
  if (diacritics_.empty()) {
    canonical_ = base_;
  } else {
    std::string joined = base_;
    for (const auto& d : diacritics_) joined += d;
    canonical_ = unicode::ToNfc(joined);
  }
}

SymbolTable SymbolTable::Load(const std::filesystem::path& path) {
  return FromText(io::ReadFile(path), path);
}

SymbolTable SymbolTable::FromText(std::string_view text,
                                  const std::filesystem::path& source) {
  SymbolTable table;
  table.source_ = source;
  const std::string where = source.empty() ? "symbol table" : source.string();
  const std::vector<std::string> lines = io::Split(text, '\n');
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string_view line = lines[n];
    if (io::IsCommentOrBlank(line)) continue;
    const std::string at = where + ":" + std::to_string(n + 1) + ": ";
    std::vector<std::string> fields = unicode::SplitWhitespace(line);
    if (fields.size() != 2) {
      throw DataError(at + "expected `<kind> <symbol>`");
    }
    Kind kind;
    if (fields[0] == "base") {
      kind = Kind::kBase;
    } else if (fields[0] == "diacritic") {
      kind = Kind::kDiacritic;
    } else {
      throw DataError(at + "unknown kind '" + fields[0] + "'");
    }
    try {
      table.AddEntry(kind, fields[1]);
    } catch (const DataError& e) {
      throw DataError(at + e.what());
    }
  }
  return table;
}

void SymbolTable::AddEntry(Kind kind, std::string_view symbol) {
  std::u32string key = unicode::DecodeUtf8(unicode::ToNfd(symbol));
  if (key.empty()) throw DataError("empty symbol");
  std::string nfc = unicode::ToNfc(symbol);
  if (entries_.contains(key)) {
    throw DataError("duplicate entry '" + nfc + "'");
  }
  std::size_t rank;
  if (kind == Kind::kBase) {
    rank = base_order_.size();
    base_order_.push_back(nfc);
    ++num_bases_;
  } else {
    rank = diacritic_order_.size();
    diacritic_order_.push_back(nfc);
  }
  max_symbol_length_ = std::max(max_symbol_length_, key.size());
  entries_.emplace(std::move(key), Entry{kind, std::move(nfc), rank});
}

bool SymbolTable::IsBase(std::string_view symbol) const {
  auto it = entries_.find(unicode::DecodeUtf8(unicode::ToNfd(symbol)));
  return it != entries_.end() && it->second.kind == Kind::kBase;
}

bool SymbolTable::IsDiacritic(std::string_view symbol) const {
  auto it = entries_.find(unicode::DecodeUtf8(unicode::ToNfd(symbol)));
  return it != entries_.end() && it->second.kind == Kind::kDiacritic;
}

PhoneSequence ParsePhoneString(std::string_view text,
                               const SymbolTable& table) {
  const std::string nfd = unicode::ToNfd(text);
  const std::u32string cps = unicode::DecodeUtf8(nfd);

  // Byte offset of every codepoint in the normalized string.
  std::vector<std::size_t> offsets;
  offsets.reserve(cps.size() + 1);
  std::size_t byte = 0;
  for (char32_t c : cps) {
    offsets.push_back(byte);
    byte += U8_LENGTH(static_cast<UChar32>(c));
  }

  struct Pending {
    const std::string* base;
    std::vector<std::size_t> diacritic_ranks;
  };
  std::vector<Pending> pending;
  std::size_t token_start = 0;  // first segment of the current token

  std::size_t i = 0;
  while (i < cps.size()) {
    if (unicode::IsWhitespace(cps[i])) {
      token_start = pending.size();
      ++i;
      continue;
    }
    const SymbolTable::Entry* match = nullptr;
    std::size_t match_length = 0;
    const std::size_t longest =
        std::min(table.max_symbol_length_, cps.size() - i);
    for (std::size_t len = longest; len >= 1; --len) {
      auto it = table.entries_.find(cps.substr(i, len));
      if (it != table.entries_.end()) {
        match = &it->second;
        match_length = len;
        break;
      }
    }
    if (match == nullptr) {
      throw ParseError("unknown symbol " + DescribeCodepoint(cps[i]) +
                           " at byte " + std::to_string(offsets[i]) +
                           " (segment " + std::to_string(pending.size()) +
                           ")",
                       offsets[i], pending.size());
    }
    if (match->kind == SymbolTable::Kind::kBase) {
      pending.push_back(Pending{&match->nfc, {}});
    } else {
      if (pending.size() == token_start) {
        throw ParseError("diacritic '" + match->nfc +
                             "' has no preceding base at byte " +
                             std::to_string(offsets[i]),
                         offsets[i], pending.size());
      }
      pending.back().diacritic_ranks.push_back(match->rank);
    }
    i += match_length;
  }

  PhoneSequence out;
  out.reserve(pending.size());
  for (Pending& p : pending) {
    std::stable_sort(p.diacritic_ranks.begin(), p.diacritic_ranks.end());
    std::vector<std::string> diacritics;
    diacritics.reserve(p.diacritic_ranks.size());
    for (std::size_t rank : p.diacritic_ranks) {
      diacritics.push_back(table.diacritic_order_[rank]);
    }
    out.emplace_back(*p.base, std::move(diacritics));
  }
  return out;
}

Segment ParseSegment(std::string_view text, const SymbolTable& table) {
  PhoneSequence parsed = ParsePhoneString(text, table);
  if (parsed.size() != 1) {
    throw DataError("expected exactly one phone in '" + std::string(text) +
                    "', found " + std::to_string(parsed.size()));
  }
  return std::move(parsed.front());
}

std::string Canonicalize(const Segment& segment) {
  return segment.canonical();
}

std::string Render(const PhoneSequence& sequence) {
  std::string out;
  for (const Segment& s : sequence) {
    if (!out.empty()) out.push_back(' ');
    out += s.canonical();
  }
  return out;
}

}  // namespace phonefront
