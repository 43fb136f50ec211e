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

#ifndef PHONEFRONT_UNICODE_H_
#define PHONEFRONT_UNICODE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Thin UTF-8 helpers over ICU. All strings in the library are UTF-8.
namespace phonefront::unicode {

std::string ToNfd(std::string_view text);
std::string ToNfc(std::string_view text);

// Full Unicode case folding followed by NFC.
std::string FoldCase(std::string_view text);

// Throws DataError on malformed UTF-8.
std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(std::u32string_view text);
std::string EncodeUtf8(char32_t c);

bool IsWhitespace(char32_t c);

// Splits on runs of Unicode whitespace; never returns empty tokens.
std::vector<std::string> SplitWhitespace(std::string_view text);

// Collapses whitespace runs to a single ASCII space and strips both ends.
std::string CollapseWhitespace(std::string_view text);

std::size_t CodepointCount(std::string_view text);

}  // namespace phonefront::unicode

#endif  // PHONEFRONT_UNICODE_H_
