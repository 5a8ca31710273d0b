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

#include "scenlib/cleanse.hpp"

#include "scenlib/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace scenlib::cleanse
{

std::string_view to_string(RuleKind kind)
{
  switch (kind) {
    case RuleKind::drop_duplicate: return "drop_duplicate";
    case RuleKind::drop_missing: return "drop_missing";
    case RuleKind::repair_interpolate: return "repair_interpolate";
    case RuleKind::repair_statistic: return "repair_statistic";
    case RuleKind::clamp_range: return "clamp_range";
  }
  return "";
}

std::string_view to_string(Statistic statistic)
{
  return statistic == Statistic::mean ? "mean" : "median";
}

SymbolizationScheme SymbolizationScheme::equal_width(
  std::string channel, double lo, double hi, int bins)
{
  if (bins < 2) {
    throw Error(ErrorCode::invalid_argument, "symbolization needs at least two bins");
  }
  SymbolizationScheme scheme;
  scheme.channel = std::move(channel);
  if (!(hi > lo)) {
    scheme.breakpoints = {lo};
    return scheme;
  }
  const double width = (hi - lo) / bins;
  for (int i = 1; i < bins; ++i) {
    scheme.breakpoints.push_back(lo + width * i);
  }
  return scheme;
}

bool SymbolizationScheme::valid() const
{
  if (breakpoints.empty()) return false;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1])) return false;
  }
  return std::all_of(
    breakpoints.begin(), breakpoints.end(), [](double b) { return std::isfinite(b); });
}

std::vector<Symbol> symbolize(std::span<const double> series, const SymbolizationScheme & scheme)
{
  if (!scheme.valid()) {
    throw Error(ErrorCode::invalid_argument, "symbolization breakpoints must increase strictly");
  }
  std::vector<Symbol> out;
  out.reserve(series.size());
  for (const double v : series) {
    if (std::isnan(v)) {
      out.push_back(kGapSymbol);
      continue;
    }
    const auto below = std::lower_bound(scheme.breakpoints.begin(), scheme.breakpoints.end(), v);
    out.push_back(static_cast<Symbol>(below - scheme.breakpoints.begin()));
  }
  return out;
}

std::size_t dl_distance(std::span<const Symbol> a, std::span<const Symbol> b)
{
  // Common prefixes and suffixes never contribute to the optimal script.
  while (!a.empty() && !b.empty() && a.front() == b.front()) {
    a = a.subspan(1);
    b = b.subspan(1);
  }
  while (!a.empty() && !b.empty() && a.back() == b.back()) {
    a = a.first(a.size() - 1);
    b = b.first(b.size() - 1);
  }
  const std::size_t la = a.size();
  const std::size_t lb = b.size();
  if (la == 0 || lb == 0) {
    return la + lb;
  }

  // Lowrance-Wagner table with a sentinel row/column.
  const std::size_t width = lb + 2;
  const auto inf = static_cast<std::uint32_t>(la + lb);
  std::vector<std::uint32_t> table((la + 2) * width);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t & { return table[i * width + j]; };
  at(0, 0) = inf;
  for (std::size_t i = 0; i <= la; ++i) {
    at(i + 1, 0) = inf;
    at(i + 1, 1) = static_cast<std::uint32_t>(i);
  }
  for (std::size_t j = 0; j <= lb; ++j) {
    at(0, j + 1) = inf;
    at(1, j + 1) = static_cast<std::uint32_t>(j);
  }

  std::unordered_map<Symbol, std::size_t> last_row;
  for (std::size_t i = 1; i <= la; ++i) {
    std::size_t last_match_col = 0;
    for (std::size_t j = 1; j <= lb; ++j) {
      const auto found = last_row.find(b[j - 1]);
      const std::size_t i1 = found == last_row.end() ? 0 : found->second;
      const std::size_t j1 = last_match_col;
      const std::uint32_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      if (cost == 0) {
        last_match_col = j;
      }
      const std::uint32_t substitute = at(i, j) + cost;
      const std::uint32_t insert = at(i + 1, j) + 1;
      const std::uint32_t remove = at(i, j + 1) + 1;
      const auto transpose =
        static_cast<std::uint32_t>(at(i1, j1) + (i - i1 - 1) + 1 + (j - j1 - 1));
      at(i + 1, j + 1) = std::min({substitute, insert, remove, transpose});
    }
    last_row[a[i - 1]] = i;
  }
  return at(la + 1, lb + 1);
}

std::size_t dl_distance(std::string_view a, std::string_view b)
{
  const std::vector<Symbol> sa(a.begin(), a.end());
  const std::vector<Symbol> sb(b.begin(), b.end());
  return dl_distance(std::span<const Symbol>(sa), std::span<const Symbol>(sb));
}

double reconstruction_error(
  const std::vector<std::vector<Symbol>> & originals,
  const std::vector<std::vector<Symbol>> & repaired)
{
  if (originals.size() != repaired.size() || originals.empty()) {
    throw Error(
      ErrorCode::length_mismatch, "expected equal, non-empty lists (got " +
                                    std::to_string(originals.size()) + " and " +
                                    std::to_string(repaired.size()) + ")");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < originals.size(); ++i) {
    total += static_cast<double>(dl_distance(repaired[i], originals[i]));
  }
  return total / static_cast<double>(originals.size());
}

std::map<std::string, std::size_t> count_missing(const ingest::TrackLog & log)
{
  std::map<std::string, std::size_t> missing;
  for (const auto name : ingest::kChannels) {
    auto & count = missing[std::string(name)];
    for (const auto & s : log.samples) {
      if (std::isnan(*ingest::channel(s, name))) ++count;
    }
  }
  return missing;
}

namespace
{

using ingest::TimedSample;

void check_rule(const CleaningRule & rule)
{
  const bool needs_channel = rule.kind != RuleKind::drop_duplicate;
  if ((needs_channel || !rule.channel.empty()) && !ingest::is_channel(rule.channel)) {
    throw Error(ErrorCode::unknown_channel, "'" + rule.channel + "'");
  }
  if (rule.kind == RuleKind::clamp_range && !(rule.lo <= rule.hi)) {
    throw Error(ErrorCode::invalid_argument, "clamp_range needs lo <= hi");
  }
}

std::size_t repair_interpolate(std::vector<TimedSample> & samples, std::string_view name)
{
  std::vector<std::size_t> finite;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isnan(*ingest::channel(samples[i], name))) finite.push_back(i);
  }
  if (finite.empty()) return 0;
  std::size_t repaired = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double & v = *ingest::channel(samples[i], name);
    if (!std::isnan(v)) continue;
    const auto next = std::lower_bound(finite.begin(), finite.end(), i);
    if (next == finite.begin()) {
      v = *ingest::channel(samples[*next], name);
    } else if (next == finite.end()) {
      v = *ingest::channel(samples[finite.back()], name);
    } else {
      const std::size_t lo = *(next - 1);
      const std::size_t hi = *next;
      const double w = (samples[i].t - samples[lo].t) / (samples[hi].t - samples[lo].t);
      const double vlo = *ingest::channel(samples[lo], name);
      const double vhi = *ingest::channel(samples[hi], name);
      v = vlo + w * (vhi - vlo);
    }
    ++repaired;
  }
  return repaired;
}

std::size_t repair_statistic(
  std::vector<TimedSample> & samples, std::string_view name, Statistic statistic)
{
  std::vector<double> finite;
  for (const auto & s : samples) {
    const double v = *ingest::channel(s, name);
    if (!std::isnan(v)) finite.push_back(v);
  }
  if (finite.empty()) return 0;
  double fill = 0.0;
  if (statistic == Statistic::mean) {
    fill = std::accumulate(finite.begin(), finite.end(), 0.0) / static_cast<double>(finite.size());
  } else {
    std::sort(finite.begin(), finite.end());
    const std::size_t n = finite.size();
    fill = n % 2 == 1 ? finite[n / 2] : 0.5 * (finite[n / 2 - 1] + finite[n / 2]);
  }
  std::size_t repaired = 0;
  for (auto & s : samples) {
    double & v = *ingest::channel(s, name);
    if (std::isnan(v)) {
      v = fill;
      ++repaired;
    }
  }
  return repaired;
}

std::vector<std::vector<Symbol>> symbolize_channels(
  const ingest::TrackLog & log, const std::vector<SymbolizationScheme> & schemes)
{
  std::vector<std::vector<Symbol>> out;
  for (const auto & scheme : schemes) {
    const auto values = log.values(scheme.channel);
    out.push_back(symbolize(values, scheme));
  }
  return out;
}

}  // namespace

std::pair<ingest::TrackLog, CleaningReport> clean(
  const ingest::TrackLog & log, const std::vector<CleaningRule> & rules)
{
  for (const auto & rule : rules) {
    check_rule(rule);
  }

  ingest::TrackLog original = log;
  std::stable_sort(
    original.samples.begin(), original.samples.end(),
    [](const TimedSample & a, const TimedSample & b) { return a.t < b.t; });

  ingest::TrackLog out = original;
  CleaningReport report;
  report.rows_in = log.samples.size();
  for (const auto name : ingest::kChannels) {
    report.repairs[std::string(name)] = 0;
  }

  auto & samples = out.samples;
  for (const auto & rule : rules) {
    switch (rule.kind) {
      case RuleKind::drop_duplicate: {
        const auto last = std::unique(
          samples.begin(), samples.end(),
          [](const TimedSample & a, const TimedSample & b) { return a.t == b.t; });
        samples.erase(last, samples.end());
        break;
      }
      case RuleKind::drop_missing:
        std::erase_if(samples, [&](const TimedSample & s) {
          return std::isnan(*ingest::channel(s, rule.channel));
        });
        break;
      case RuleKind::repair_interpolate:
        report.repairs[rule.channel] += repair_interpolate(samples, rule.channel);
        break;
      case RuleKind::repair_statistic:
        report.repairs[rule.channel] += repair_statistic(samples, rule.channel, rule.statistic);
        break;
      case RuleKind::clamp_range:
        for (auto & s : samples) {
          double & v = *ingest::channel(s, rule.channel);
          if (std::isnan(v)) continue;
          const double clamped = std::clamp(v, rule.lo, rule.hi);
          if (clamped != v) {
            v = clamped;
            ++report.repairs[rule.channel];
          }
        }
        break;
    }
  }

  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].t == samples[i - 1].t) {
      throw Error(
        ErrorCode::duplicate_timestamp,
        "track '" + out.track_id + "' still has repeated timestamps; add a drop_duplicate rule");
    }
  }
  report.rows_out = samples.size();

  // Cleaning cost: per-channel symbolized series, bins fixed by the raw data.
  std::vector<SymbolizationScheme> schemes;
  for (const auto name : ingest::kChannels) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto & s : original.samples) {
      const double v = *ingest::channel(s, name);
      if (std::isnan(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    schemes.push_back(SymbolizationScheme::equal_width(std::string(name), lo, hi));
  }
  report.reconstruction_error =
    reconstruction_error(symbolize_channels(original, schemes), symbolize_channels(out, schemes));
  return {std::move(out), report};
}

}  // namespace scenlib::cleanse
