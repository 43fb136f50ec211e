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

#include "phonefront/unicode.h"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <cstdint>

#include "phonefront/error.h"

namespace phonefront::unicode {

namespace {

std::string Normalize(std::string_view text, bool compose) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer =
      compose ? icu::Normalizer2::getNFCInstance(status)
              : icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status)) {
    throw DataError(std::string("ICU normalizer unavailable: ") +
                    u_errorName(status));
  }
  icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString normalized = normalizer->normalize(source, status);
  if (U_FAILURE(status)) {
    throw DataError(std::string("normalization failed: ") +
                    u_errorName(status));
  }
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

}  // namespace

std::string ToNfd(std::string_view text) { return Normalize(text, false); }

std::string ToNfc(std::string_view text) { return Normalize(text, true); }

std::string FoldCase(std::string_view text) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  s.foldCase(U_FOLD_CASE_DEFAULT);
  std::string out;
  s.toUTF8String(out);
  return ToNfc(out);
}

std::u32string DecodeUtf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) {
      throw DataError("malformed UTF-8 at byte " + std::to_string(start));
    }
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

std::string EncodeUtf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) out += EncodeUtf8(c);
  return out;
}

std::string EncodeUtf8(char32_t c) {
  uint8_t buffer[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(buffer, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
  if (error) throw DataError("cannot encode codepoint as UTF-8");
  return std::string(reinterpret_cast<const char*>(buffer),
                     static_cast<std::size_t>(n));
}

bool IsWhitespace(char32_t c) {
  return u_isUWhiteSpace(static_cast<UChar32>(c));
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> tokens;
  std::u32string current;
  for (char32_t c : DecodeUtf8(text)) {
    if (IsWhitespace(c)) {
      if (!current.empty()) tokens.push_back(EncodeUtf8(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(EncodeUtf8(current));
  return tokens;
}

std::string CollapseWhitespace(std::string_view text) {
  std::string out;
  for (const std::string& token : SplitWhitespace(text)) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

std::size_t CodepointCount(std::string_view text) {
  return DecodeUtf8(text).size();
}

}  // namespace phonefront::unicode
