// Copyright 2026 The scenlib Authors
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

#ifndef SCENLIB__CLEANSE_HPP_
#define SCENLIB__CLEANSE_HPP_

#include "scenlib/ingest.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scenlib::cleanse
{

enum class RuleKind { drop_duplicate, drop_missing, repair_interpolate, repair_statistic, clamp_range };
enum class Statistic { mean, median };

std::string_view to_string(RuleKind kind);
std::string_view to_string(Statistic statistic);

struct CleaningRule
{
  RuleKind kind = RuleKind::drop_duplicate;
  /// Channel the rule acts on. drop_duplicate ignores it.
  std::string channel;
  Statistic statistic = Statistic::mean;  // repair_statistic
  double lo = 0.0;                         // clamp_range
  double hi = 0.0;                         // clamp_range
};

struct CleaningReport
{
  std::size_t rows_in = 0;
  std::size_t rows_out = 0;
  std::map<std::string, std::size_t> repairs;
  double reconstruction_error = 0.0;
};

using Symbol = int;
/// Symbol assigned to missing (NaN) values.
inline constexpr Symbol kGapSymbol = -1;

/// Breakpoints b_0 < b_1 < ... ; value v maps to #{b_i < v}.
struct SymbolizationScheme
{
  std::string channel;
  std::vector<double> breakpoints;

  /// `bins` equal-width bins over [lo, hi] (bins - 1 interior breakpoints).
  static SymbolizationScheme equal_width(std::string channel, double lo, double hi, int bins = 16);
  bool valid() const;
};

/// Applies `rules` in order. Throws UnknownChannel, DuplicateTimestamp (when
/// duplicate timestamps survive the rules) and InvalidArgument for bad rules.
std::pair<ingest::TrackLog, CleaningReport> clean(
  const ingest::TrackLog & log, const std::vector<CleaningRule> & rules);

/// Unrestricted Damerau-Levenshtein distance (insertions, deletions,
/// substitutions, adjacent transpositions with arbitrary edits in between).
std::size_t dl_distance(std::span<const Symbol> a, std::span<const Symbol> b);
std::size_t dl_distance(std::string_view a, std::string_view b);

std::vector<Symbol> symbolize(std::span<const double> series, const SymbolizationScheme & scheme);

/// Mean pairwise dl_distance(repaired_i, originals_i). Throws LengthMismatch.
double reconstruction_error(
  const std::vector<std::vector<Symbol>> & originals,
  const std::vector<std::vector<Symbol>> & repaired);

/// Missing (NaN) cells per channel of `log`.
std::map<std::string, std::size_t> count_missing(const ingest::TrackLog & log);

}  // namespace scenlib::cleanse

#endif  // SCENLIB__CLEANSE_HPP_
