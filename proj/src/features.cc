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

#include "phonefront/features.h"

#include <algorithm>
#include <cmath>

#include "phonefront/error.h"
#include "phonefront/io.h"
#include "phonefront/unicode.h"

namespace phonefront {

namespace {

std::uint8_t ParseBinary(std::string_view cell, const std::string& where) {
  cell = io::Trim(cell);
  if (cell == "0") return 0;
  if (cell == "1") return 1;
  throw DataError(where + ": non-binary value '" + std::string(cell) + "'");
}

}  // namespace

FeatureSchema FeatureSchema::Load(const std::filesystem::path& table_path,
                                  const std::filesystem::path& rules_path) {
  const std::string table = io::ReadFile(table_path);
  const std::string rules = io::ReadFile(rules_path);
  try {
    return FromText(table, rules);
  } catch (const DataError& e) {
    throw DataError(table_path.filename().string() + "/" +
                    rules_path.filename().string() + ": " + e.what());
  }
}

FeatureSchema FeatureSchema::FromText(std::string_view table_csv,
                                      std::string_view rules_csv) {
  FeatureSchema schema;

  std::vector<std::string> lines = io::Split(table_csv, '\n');
  std::size_t n = 0;
  while (n < lines.size() && io::IsCommentOrBlank(lines[n])) ++n;
  if (n == lines.size()) throw DataError("feature table has no header");
  {
    std::vector<std::string> header = io::Split(io::Trim(lines[n]), ',');
    if (header.size() != kNumFeatures + 1) {
      throw DataError("feature table line " + std::to_string(n + 1) +
                      ": expected " + std::to_string(kNumFeatures + 1) +
                      " columns, found " + std::to_string(header.size()));
    }
    if (io::Trim(header[0]) != "segment") {
      throw DataError("feature table header must start with `segment`");
    }
    for (std::size_t c = 1; c < header.size(); ++c) {
      std::string name(io::Trim(header[c]));
      if (name.empty()) throw DataError("empty feature name in header");
      if (std::find(schema.names_.begin(), schema.names_.end(), name) !=
          schema.names_.end()) {
        throw DataError("duplicate feature name '" + name + "'");
      }
      schema.names_.push_back(std::move(name));
    }
  }
  for (const char* required : {"voice", "long"}) {
    if (schema.FeatureIndex(required) < 0) {
      throw DataError(std::string("feature table lacks required feature `") +
                      required + "`");
    }
  }

  std::vector<std::pair<std::string, FeatureVector>> rows;
  for (++n; n < lines.size(); ++n) {
    if (io::IsCommentOrBlank(lines[n])) continue;
    const std::string where = "feature table line " + std::to_string(n + 1);
    std::vector<std::string> cells = io::Split(io::Trim(lines[n]), ',');
    if (cells.size() != kNumFeatures + 1) {
      throw DataError(where + ": expected " +
                      std::to_string(kNumFeatures + 1) + " columns, found " +
                      std::to_string(cells.size()));
    }
    std::string symbol = unicode::ToNfc(io::Trim(cells[0]));
    if (symbol.empty()) throw DataError(where + ": empty segment");
    if (schema.row_of_.contains(symbol)) {
      throw DataError(where + ": duplicate segment '" + symbol + "'");
    }
    FeatureVector v;
    for (int f = 0; f < kNumFeatures; ++f) {
      v(f) = ParseBinary(cells[f + 1], where);
    }
    schema.row_of_.emplace(symbol, static_cast<Eigen::Index>(rows.size()));
    schema.base_symbols_.push_back(symbol);
    rows.emplace_back(std::move(symbol), v);
  }
  schema.table_.resize(static_cast<Eigen::Index>(rows.size()), kNumFeatures);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    schema.table_.row(static_cast<Eigen::Index>(r)) =
        rows[r].second.transpose();
  }

  lines = io::Split(rules_csv, '\n');
  n = 0;
  while (n < lines.size() && io::IsCommentOrBlank(lines[n])) ++n;
  if (n == lines.size()) return schema;  // no rules at all
  if (io::Trim(lines[n]) != "diacritic,feature,value") {
    throw DataError("rules header must be `diacritic,feature,value`");
  }
  for (++n; n < lines.size(); ++n) {
    if (io::IsCommentOrBlank(lines[n])) continue;
    const std::string where = "rules line " + std::to_string(n + 1);
    std::vector<std::string> cells = io::Split(io::Trim(lines[n]), ',');
    if (cells.size() != 3) {
      throw DataError(where + ": expected 3 columns");
    }
    std::string diacritic = unicode::ToNfc(io::Trim(cells[0]));
    if (diacritic.empty()) throw DataError(where + ": empty diacritic");
    const int feature = schema.FeatureIndex(io::Trim(cells[1]));
    if (feature < 0) {
      throw DataError(where + ": unknown feature '" +
                      std::string(io::Trim(cells[1])) + "'");
    }
    schema.rules_[diacritic].push_back(
        FeatureOverride{feature, ParseBinary(cells[2], where)});
  }
  return schema;
}

int FeatureSchema::FeatureIndex(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

bool FeatureSchema::HasBase(std::string_view base) const {
  return row_of_.contains(std::string(base));
}

const std::vector<FeatureOverride>* FeatureSchema::RulesFor(
    std::string_view diacritic) const {
  auto it = rules_.find(diacritic);
  return it == rules_.end() ? nullptr : &it->second;
}

FeatureVector Encode(const Segment& segment, const FeatureSchema& schema) {
  auto row = schema.row_of_.find(segment.base());
  if (row == schema.row_of_.end()) {
    throw DataError("no feature row for base segment '" + segment.base() +
                    "'");
  }
  FeatureVector v = schema.table_.row(row->second).transpose();
  for (const std::string& d : segment.diacritics()) {
    const auto* rules = schema.RulesFor(d);
    if (rules == nullptr) {
      throw DataError("no feature rule for diacritic '" + d + "' in '" +
                      segment.canonical() + "'");
    }
    for (const FeatureOverride& r : *rules) v(r.feature) = r.value;
  }
  return v;
}

FeatureMatrix EncodeSequence(const PhoneSequence& sequence,
                             const FeatureSchema& schema) {
  FeatureMatrix m(static_cast<Eigen::Index>(sequence.size()), kNumFeatures);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    m.row(static_cast<Eigen::Index>(i)) =
        Encode(sequence[i], schema).transpose();
  }
  return m;
}

FeatureWeights MakeWeights(std::span<const double> values) {
  if (values.size() != kNumFeatures) {
    throw DataError("expected " + std::to_string(kNumFeatures) +
                    " feature weights, got " + std::to_string(values.size()));
  }
  FeatureWeights w;
  for (int i = 0; i < kNumFeatures; ++i) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) {
      throw DataError("feature weight " + std::to_string(i) +
                      " must be a finite non-negative number");
    }
    w(i) = values[i];
  }
  return w;
}

double FeatureDistance(const FeatureVector& a, const FeatureVector& b,
                       const FeatureWeights& weights) {
  if ((weights.array() < 0.0).any()) {
    throw DataError("feature weights must be non-negative");
  }
  return WeightedHamming(a, b, weights);
}

Eigen::MatrixXd PairwiseDistances(const FeatureMatrix& a,
                                  const FeatureMatrix& b,
                                  const FeatureWeights& weights) {
  if ((weights.array() < 0.0).any()) {
    throw DataError("feature weights must be non-negative");
  }
  Eigen::MatrixXd d(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      d(i, j) = WeightedHamming(a.row(i).transpose(), b.row(j).transpose(),
                                weights);
    }
  }
  return d;
}

NearestMatch NearestSegment(const Segment& target,
                            std::span<const Segment> candidates,
                            const FeatureSchema& schema,
                            const FeatureWeights& weights) {
  if (candidates.empty()) throw DataError("no candidate segments");
  if (std::find(candidates.begin(), candidates.end(), target) !=
      candidates.end()) {
    return NearestMatch{target, 0.0};
  }
  const FeatureVector t = Encode(target, schema);
  const Segment* best = nullptr;
  double best_distance = 0.0;
  for (const Segment& c : candidates) {
    const double d = FeatureDistance(t, Encode(c, schema), weights);
    bool better = best == nullptr || DistanceLess(d, best_distance);
    if (!better && !DistanceLess(best_distance, d)) {
      // Tie on distance.
      if (c.diacritics().size() != best->diacritics().size()) {
        better = c.diacritics().size() < best->diacritics().size();
      } else {
        better = c.canonical() < best->canonical();
      }
    }
    if (better) {
      best = &c;
      best_distance = d;
    }
  }
  return NearestMatch{*best, best_distance};
}

}  // namespace phonefront
