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

#ifndef PHONEFRONT_FEATURES_H_
#define PHONEFRONT_FEATURES_H_

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "phonefront/ipa.h"

namespace phonefront {

inline constexpr int kNumFeatures = 62;

template <typename Scalar>
using FeatureVectorT = Eigen::Matrix<Scalar, kNumFeatures, 1>;

// Binary articulatory features of one segment, aligned with
// FeatureSchema::feature_names().
using FeatureVector = FeatureVectorT<std::uint8_t>;
using FeatureWeights = FeatureVectorT<double>;

// One row per segment; the layout the acoustic model consumes.
using FeatureMatrix =
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, kNumFeatures, Eigen::RowMajor>;

// Distances are compared with this relative slack so that reordering a
// floating-point sum never flips a tie.
inline constexpr double kDistanceTieTolerance = 1e-9;

struct FeatureOverride {
  int feature;
  std::uint8_t value;
};

/// Feature names, per-base feature rows and diacritic override rules.
///
/// All linguistic content comes from two CSV files; the code only checks
/// arity and binariness. The only feature names the library relies on are
/// `voice` and `long`, which must be present.
class FeatureSchema {
 public:
  static FeatureSchema Load(const std::filesystem::path& table_path,
                            const std::filesystem::path& rules_path);
  static FeatureSchema FromText(std::string_view table_csv,
                                std::string_view rules_csv);

  const std::vector<std::string>& feature_names() const { return names_; }
  // -1 when absent.
  int FeatureIndex(std::string_view name) const;

  std::size_t num_bases() const { return base_symbols_.size(); }
  const std::vector<std::string>& base_symbols() const {
    return base_symbols_;
  }
  bool HasBase(std::string_view base) const;
  const FeatureMatrix& base_table() const { return table_; }

  // Rules for one diacritic in file order; nullptr if the diacritic has none.
  const std::vector<FeatureOverride>* RulesFor(
      std::string_view diacritic) const;

 private:
  friend FeatureVector Encode(const Segment&, const FeatureSchema&);

  std::vector<std::string> names_;
  std::vector<std::string> base_symbols_;
  std::unordered_map<std::string, Eigen::Index> row_of_;
  FeatureMatrix table_;
  std::map<std::string, std::vector<FeatureOverride>, std::less<>> rules_;
};

// Base row with each diacritic's overrides applied in diacritic order.
// Throws DataError for an unknown base or a diacritic without rules.
FeatureVector Encode(const Segment& segment, const FeatureSchema& schema);

FeatureMatrix EncodeSequence(const PhoneSequence& sequence,
                             const FeatureSchema& schema);

inline FeatureWeights UnitWeights() { return FeatureWeights::Ones(); }

// Validates length and non-negativity of user-provided weights.
FeatureWeights MakeWeights(std::span<const double> values);

// Weighted Hamming distance sum_i w_i * |a_i - b_i|. Works on any pair of
// equally-sized integer or floating expressions.
template <typename DerivedA, typename DerivedB, typename DerivedW>
typename DerivedW::Scalar WeightedHamming(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
    const Eigen::MatrixBase<DerivedW>& weights) {
  using Scalar = typename DerivedW::Scalar;
  return (a.template cast<Scalar>() - b.template cast<Scalar>())
      .cwiseAbs()
      .dot(weights);
}

// Throws DataError for negative weights.
double FeatureDistance(const FeatureVector& a, const FeatureVector& b,
                       const FeatureWeights& weights = UnitWeights());

// All-pairs distances between the rows of `a` and `b`.
Eigen::MatrixXd PairwiseDistances(const FeatureMatrix& a,
                                  const FeatureMatrix& b,
                                  const FeatureWeights& weights = UnitWeights());

struct NearestMatch {
  Segment segment;
  double distance;
};

// Candidate closest to `target`. Ties go to the candidate with fewer
// diacritics, then to the smaller canonical string.
NearestMatch NearestSegment(const Segment& target,
                            std::span<const Segment> candidates,
                            const FeatureSchema& schema,
                            const FeatureWeights& weights = UnitWeights());

// True when distance `a` beats `b` by more than the tie tolerance.
inline bool DistanceLess(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return a < b - kDistanceTieTolerance * scale;
}

}  // namespace phonefront

#endif  // PHONEFRONT_FEATURES_H_
