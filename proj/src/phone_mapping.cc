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

#include "phonefront/phone_mapping.h"

#include <charconv>
#include <set>

#include "phonefront/error.h"
#include "phonefront/io.h"

namespace phonefront {

const PhoneMapEntry* PhoneMap::Find(const Segment& target) const {
  auto it = entries.find(target.canonical());
  return it == entries.end() ? nullptr : &it->second;
}

PhoneMap BuildPhoneMap(const PhoneInventory& target,
                       const PhoneInventory& source,
                       const FeatureSchema& schema,
                       const FeatureWeights& weights) {
  if (target.phones.empty() || source.phones.empty()) {
    throw DataError("phone mapping needs nonempty inventories");
  }
  PhoneMap map{target.language, source.language, {}};
  for (const Segment& t : target.phones) {
    NearestMatch m = NearestSegment(t, source.phones, schema, weights);
    map.entries.emplace(t.canonical(),
                        PhoneMapEntry{std::move(m.segment), m.distance});
  }
  return map;
}

PhoneSequence ApplyPhoneMap(const PhoneSequence& sequence,
                            const PhoneMap& map) {
  PhoneSequence out;
  out.reserve(sequence.size());
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const PhoneMapEntry* e = map.Find(sequence[i]);
    if (e == nullptr) {
      throw DataError("phone '" + sequence[i].canonical() + "' at position " +
                      std::to_string(i) + " has no mapping");
    }
    out.push_back(e->source);
  }
  return out;
}

std::vector<Segment> UnmappedSourcePhones(const PhoneMap& map,
                                          const PhoneInventory& source) {
  std::set<std::string> image;
  for (const auto& [target, entry] : map.entries) {
    image.insert(entry.source.canonical());
  }
  std::vector<Segment> unused;
  for (const Segment& s : source.phones) {
    if (!image.contains(s.canonical())) unused.push_back(s);
  }
  return unused;
}

std::string PhoneMapToTsv(const PhoneMap& map) {
  std::string out;
  for (const auto& [target, entry] : map.entries) {
    out += target;
    out += '\t';
    out += entry.source.canonical();
    out += '\t';
    out += io::FormatDouble(entry.distance);
    out += '\n';
  }
  return out;
}

PhoneMap PhoneMapFromTsv(std::string_view tsv, const SymbolTable& table) {
  PhoneMap map;
  const std::vector<std::string> lines = io::Split(tsv, '\n');
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (io::IsCommentOrBlank(lines[n])) continue;
    const std::string where = "phone map line " + std::to_string(n + 1);
    std::vector<std::string> cells = io::Split(io::Trim(lines[n]), '\t');
    if (cells.size() != 3) throw DataError(where + ": expected 3 columns");
    const Segment target = ParseSegment(cells[0], table);
    Segment source = ParseSegment(cells[1], table);
    double distance = 0.0;
    auto [ptr, ec] = std::from_chars(
        cells[2].data(), cells[2].data() + cells[2].size(), distance);
    if (ec != std::errc() || ptr != cells[2].data() + cells[2].size() ||
        distance < 0.0) {
      throw DataError(where + ": bad distance '" + cells[2] + "'");
    }
    if (!map.entries
             .emplace(target.canonical(),
                      PhoneMapEntry{std::move(source), distance})
             .second) {
      throw DataError(where + ": duplicate target '" + target.canonical() +
                      "'");
    }
  }
  return map;
}

}  // namespace phonefront
