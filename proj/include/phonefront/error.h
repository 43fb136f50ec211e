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

#ifndef PHONEFRONT_ERROR_H_
#define PHONEFRONT_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phonefront {

// Raised for any input that fails to load, parse or validate. The CLI maps
// it to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Phone-string parse failure with its position in the NFD-normalized input.
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t byte_offset,
             std::size_t segment_index)
      : DataError(what),
        byte_offset_(byte_offset),
        segment_index_(segment_index) {}

  std::size_t byte_offset() const { return byte_offset_; }
  std::size_t segment_index() const { return segment_index_; }

 private:
  std::size_t byte_offset_;
  std::size_t segment_index_;
};

}  // namespace phonefront

#endif  // PHONEFRONT_ERROR_H_
