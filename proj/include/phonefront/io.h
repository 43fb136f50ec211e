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

#ifndef PHONEFRONT_IO_H_
#define PHONEFRONT_IO_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace phonefront::io {

// Reads a whole file; throws DataError if it cannot be opened.
std::string ReadFile(const std::filesystem::path& path);

std::vector<std::string> ReadLines(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it over `path`, so readers never
// observe a half-written destination.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content);

// Strips ASCII whitespace (and a trailing '\r') from both ends.
std::string_view Trim(std::string_view s);

// True for blank lines and lines whose first non-blank character is '#'.
bool IsCommentOrBlank(std::string_view line);

std::vector<std::string> Split(std::string_view s, char delimiter);

// Shortest round-trippable decimal form of a double.
std::string FormatDouble(double value);

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Exceptions are
// collected and the one with the smallest index is rethrown, so failures
// are reported as in a sequential loop.
void ParallelFor(std::size_t n, int jobs,
                 const std::function<void(std::size_t)>& fn);

}  // namespace phonefront::io

#endif  // PHONEFRONT_IO_H_
