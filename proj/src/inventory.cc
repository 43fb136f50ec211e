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

#include "phonefront/inventory.h"

#include <algorithm>
#include <map>

#include "phonefront/error.h"
#include "phonefront/io.h"

namespace phonefront {

namespace {

struct InventoryRow {
  std::size_t line;
  std::string language;
  std::string phone;
};

std::vector<InventoryRow> ReadInventoryRows(const std::filesystem::path& path,
                                            std::string_view language,
                                            bool* is_csv) {
  const std::vector<std::string> lines = io::ReadLines(path);
  std::size_t n = 0;
  while (n < lines.size() && io::IsCommentOrBlank(lines[n])) ++n;
  std::vector<InventoryRow> rows;
  *is_csv = n < lines.size() && io::Trim(lines[n]) == "language,phoneme";
  if (*is_csv) {
    for (++n; n < lines.size(); ++n) {
      if (io::IsCommentOrBlank(lines[n])) continue;
      std::vector<std::string> cells = io::Split(io::Trim(lines[n]), ',');
      if (cells.size() != 2) {
        throw DataError(path.string() + ":" + std::to_string(n + 1) +
                        ": expected `language,phoneme`");
      }
      rows.push_back(InventoryRow{n + 1, std::string(io::Trim(cells[0])),
                                  std::string(io::Trim(cells[1]))});
    }
  } else {
    for (; n < lines.size(); ++n) {
      if (io::IsCommentOrBlank(lines[n])) continue;
      rows.push_back(InventoryRow{n + 1, std::string(language),
                                  std::string(io::Trim(lines[n]))});
    }
  }
  return rows;
}

Segment ParseRow(const InventoryRow& row, const std::filesystem::path& path,
                 const SymbolTable& table) {
  try {
    return ParseSegment(row.phone, table);
  } catch (const DataError& e) {
    throw DataError(path.string() + ":" + std::to_string(row.line) +
                    ": unparseable phone '" + row.phone + "': " + e.what());
  }
}

void ReportDuplicates(const std::string& language, std::size_t duplicates,
                      std::vector<std::string>* warnings) {
  if (duplicates > 0 && warnings != nullptr) {
    warnings->push_back("inventory '" + language + "': " +
                        std::to_string(duplicates) +
                        " duplicate phone row(s) ignored");
  }
}

}  // namespace

bool PhoneInventory::Contains(const Segment& segment) const {
  return std::binary_search(phones.begin(), phones.end(), segment,
                            CanonicalLess{});
}

PhoneInventory MakeInventory(std::string language, std::vector<Segment> phones,
                             std::size_t* duplicates) {
  if (phones.empty()) {
    throw DataError("inventory '" + language + "' is empty");
  }
  std::stable_sort(phones.begin(), phones.end(), CanonicalLess{});
  const std::size_t before = phones.size();
  phones.erase(std::unique(phones.begin(), phones.end(),
                           [](const Segment& a, const Segment& b) {
                             return a.canonical() == b.canonical();
                           }),
               phones.end());
  if (duplicates != nullptr) *duplicates = before - phones.size();
  return PhoneInventory{std::move(language), std::move(phones)};
}

PhoneInventory LoadInventory(const std::filesystem::path& path,
                             std::string_view language,
                             const SymbolTable& table,
                             std::vector<std::string>* warnings) {
  bool is_csv = false;
  std::vector<InventoryRow> rows = ReadInventoryRows(path, language, &is_csv);
  std::vector<Segment> phones;
  for (const InventoryRow& row : rows) {
    if (row.language != language) continue;
    phones.push_back(ParseRow(row, path, table));
  }
  if (phones.empty()) {
    throw DataError(is_csv ? path.string() + ": no phones for language '" +
                                 std::string(language) + "'"
                           : path.string() + ": empty inventory");
  }
  std::size_t duplicates = 0;
  PhoneInventory inv =
      MakeInventory(std::string(language), std::move(phones), &duplicates);
  ReportDuplicates(inv.language, duplicates, warnings);
  return inv;
}

std::vector<PhoneInventory> LoadAllInventories(
    const std::filesystem::path& path, const SymbolTable& table,
    std::vector<std::string>* warnings) {
  bool is_csv = false;
  std::vector<InventoryRow> rows = ReadInventoryRows(path, "", &is_csv);
  if (!is_csv) {
    throw DataError(path.string() + ": expected a `language,phoneme` CSV");
  }
  std::map<std::string, std::vector<Segment>> by_language;
  for (const InventoryRow& row : rows) {
    by_language[row.language].push_back(ParseRow(row, path, table));
  }
  std::vector<PhoneInventory> out;
  for (auto& [language, phones] : by_language) {
    std::size_t duplicates = 0;
    out.push_back(MakeInventory(language, std::move(phones), &duplicates));
    ReportDuplicates(language, duplicates, warnings);
  }
  return out;
}

PhoneSequence RestrictSequence(const PhoneSequence& sequence,
                               const PhoneInventory& inventory,
                               const FeatureSchema& schema,
                               const FeatureWeights& weights) {
  PhoneSequence out;
  out.reserve(sequence.size());
  for (const Segment& s : sequence) {
    if (inventory.Contains(s)) {
      out.push_back(s);
    } else {
      out.push_back(
          NearestSegment(s, inventory.phones, schema, weights).segment);
    }
  }
  return out;
}

double InventoryDistance(const PhoneInventory& a, const PhoneInventory& b,
                         const FeatureSchema& schema, InventoryMetric metric) {
  if (a.phones.empty() || b.phones.empty()) {
    throw DataError("inventory distance needs nonempty inventories");
  }
  if (metric == InventoryMetric::kJaccard) {
    std::size_t shared = 0;
    for (const Segment& s : a.phones) shared += b.Contains(s) ? 1 : 0;
    const std::size_t joint = a.size() + b.size() - shared;
    return 1.0 - static_cast<double>(shared) / static_cast<double>(joint);
  }
  const Eigen::MatrixXd d = PairwiseDistances(
      EncodeSequence(a.phones, schema), EncodeSequence(b.phones, schema));
  const double a_to_b = d.rowwise().minCoeff().mean();
  const double b_to_a = d.colwise().minCoeff().mean();
  return (a_to_b + b_to_a) / 2.0;
}

std::vector<RankedLanguage> NearestLanguages(
    const PhoneInventory& target, std::span<const PhoneInventory> pool,
    std::size_t k, const FeatureSchema& schema, InventoryMetric metric) {
  if (pool.empty()) throw DataError("language pool is empty");
  if (k == 0) throw DataError("k must be positive");
  if (k > pool.size()) {
    throw DataError("k = " + std::to_string(k) + " exceeds pool size " +
                    std::to_string(pool.size()));
  }
  std::vector<RankedLanguage> ranked;
  ranked.reserve(pool.size());
  for (const PhoneInventory& inv : pool) {
    ranked.push_back(
        RankedLanguage{inv.language, InventoryDistance(target, inv, schema,
                                                       metric)});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedLanguage& x, const RankedLanguage& y) {
                     if (x.distance != y.distance) {
                       return x.distance < y.distance;
                     }
                     return x.language < y.language;
                   });
  ranked.resize(k);
  return ranked;
}

}  // namespace phonefront
