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

#ifndef PHONEFRONT_INVENTORY_H_
#define PHONEFRONT_INVENTORY_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phonefront/features.h"
#include "phonefront/ipa.h"

namespace phonefront {

// The phones one language uses. Phones are unique and sorted by canonical
// form.
struct PhoneInventory {
  std::string language;
  std::vector<Segment> phones;

  bool Contains(const Segment& segment) const;
  std::size_t size() const { return phones.size(); }
};

// Builds a validated inventory: sorts, removes duplicate canonical forms and
// returns how many duplicates were dropped. Throws DataError when empty.
PhoneInventory MakeInventory(std::string language,
                             std::vector<Segment> phones,
                             std::size_t* duplicates = nullptr);

// Loads one language from a PHOIBLE-style `language,phoneme` CSV (with
// header) or from a plain one-phone-per-line list. Duplicate rows are
// reported through `warnings`.
PhoneInventory LoadInventory(const std::filesystem::path& path,
                             std::string_view language,
                             const SymbolTable& table,
                             std::vector<std::string>* warnings = nullptr);

// Every language of a `language,phoneme` CSV, ordered by identifier.
std::vector<PhoneInventory> LoadAllInventories(
    const std::filesystem::path& path, const SymbolTable& table,
    std::vector<std::string>* warnings = nullptr);

// Keeps in-inventory segments and replaces the rest by their feature-nearest
// inventory member.
PhoneSequence RestrictSequence(const PhoneSequence& sequence,
                               const PhoneInventory& inventory,
                               const FeatureSchema& schema,
                               const FeatureWeights& weights = UnitWeights());

enum class InventoryMetric { kJaccard, kFeature };

// kJaccard: 1 - |A n B| / |A u B| over canonical forms.
// kFeature: mean over each side of the distance to the nearest phone on the
// other side, averaged over both directions.
double InventoryDistance(const PhoneInventory& a, const PhoneInventory& b,
                         const FeatureSchema& schema, InventoryMetric metric);

struct RankedLanguage {
  std::string language;
  double distance;
};

// The k pool languages closest to `target`, ties broken by identifier.
std::vector<RankedLanguage> NearestLanguages(
    const PhoneInventory& target, std::span<const PhoneInventory> pool,
    std::size_t k, const FeatureSchema& schema, InventoryMetric metric);

}  // namespace phonefront

#endif  // PHONEFRONT_INVENTORY_H_
