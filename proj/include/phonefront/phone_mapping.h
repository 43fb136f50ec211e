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

#ifndef PHONEFRONT_PHONE_MAPPING_H_
#define PHONEFRONT_PHONE_MAPPING_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "phonefront/features.h"
#include "phonefront/inventory.h"
#include "phonefront/ipa.h"

namespace phonefront {

struct PhoneMapEntry {
  Segment source;
  double distance;
};

/// Target-language phone -> closest source-language phone.
struct PhoneMap {
  std::string target_language;
  std::string source_language;
  // Keyed by the target phone's canonical form.
  std::map<std::string, PhoneMapEntry> entries;

  const PhoneMapEntry* Find(const Segment& target) const;
};

// Maps every target phone to its feature-nearest source phone. Many-to-one
// mappings are allowed.
PhoneMap BuildPhoneMap(const PhoneInventory& target,
                       const PhoneInventory& source,
                       const FeatureSchema& schema,
                       const FeatureWeights& weights = UnitWeights());

// Element-wise substitution; throws DataError naming an unmapped segment.
PhoneSequence ApplyPhoneMap(const PhoneSequence& sequence, const PhoneMap& map);

// Source phones that no target phone maps to, in canonical order.
std::vector<Segment> UnmappedSourcePhones(const PhoneMap& map,
                                          const PhoneInventory& source);

// `target<TAB>source<TAB>distance` lines sorted by target canonical form.
std::string PhoneMapToTsv(const PhoneMap& map);
PhoneMap PhoneMapFromTsv(std::string_view tsv, const SymbolTable& table);

}  // namespace phonefront

#endif  // PHONEFRONT_PHONE_MAPPING_H_
