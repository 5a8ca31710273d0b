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

#include "scenlib/enrich.hpp"

#include "scenlib/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace scenlib::enrich
{

std::optional<double> ttc(const PairState & s)
{
  const double closing = s.ego_speed - s.lead_speed;
  if (!(closing > 0.0)) {
    return std::nullopt;
  }
  return std::max(s.gap, 0.0) / closing;
}

std::optional<double> thw(const PairState & s)
{
  if (!(s.ego_speed > 0.0)) {
    return std::nullopt;
  }
  return std::max(s.gap, 0.0) / s.ego_speed;
}

std::optional<double> ttb(const PairState & s, double a_max)
{
  if (!(a_max > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "a_max must be positive");
  }
  const double closing = s.ego_speed - s.lead_speed;
  if (!(closing > 0.0)) {
    return std::nullopt;
  }
  return std::max(0.0, std::max(s.gap, 0.0) / closing - closing / (2.0 * a_max));
}

namespace
{

/// Maximal runs of indices where `active(i)` holds and `key(i)` is constant.
template <typename Active, typename Key>
std::vector<std::pair<std::size_t, std::size_t>> runs(std::size_t n, Active active, Key key)
{
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t i = 0;
  while (i < n) {
    if (!active(i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && active(j + 1) && key(j + 1) == key(i)) {
      ++j;
    }
    out.emplace_back(i, j);
    i = j + 1;
  }
  return out;
}

}  // namespace

std::vector<EventAnnotation> detect_lane_changes(
  const ingest::TrackLog & track, double yaw_rate_threshold, double min_duration)
{
  if (!(yaw_rate_threshold > 0.0) || !(min_duration > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "lane-change thresholds must be positive");
  }
  const auto & samples = track.samples;
  const auto active = [&](std::size_t i) {
    return std::abs(samples[i].yaw_rate) > yaw_rate_threshold;
  };
  const auto sign = [&](std::size_t i) { return samples[i].yaw_rate > 0.0 ? 1 : -1; };

  std::vector<EventAnnotation> events;
  for (const auto & [first, last] : runs(samples.size(), active, sign)) {
    if (samples[last].t - samples[first].t < min_duration) {
      continue;
    }
    double peak = 0.0;
    for (std::size_t i = first; i <= last; ++i) {
      if (std::abs(samples[i].yaw_rate) > std::abs(peak)) peak = samples[i].yaw_rate;
    }
    events.push_back(
      {"lane_change",
       samples[first].t,
       samples[last].t,
       {{"sign", static_cast<double>(sign(first))}, {"peak_yaw_rate", peak}}});
  }
  return events;
}

AnnotatedScenario annotate(
  const ingest::TrackLog & ego, const ingest::TrackLog & lead, const AnnotateConfig & config)
{
  if (ego.samples.size() != lead.samples.size()) {
    throw Error(
      ErrorCode::unaligned_logs, "'" + ego.track_id + "' and '" + lead.track_id +
                                   "' differ in length; synchronize them first");
  }
  for (std::size_t i = 0; i < ego.samples.size(); ++i) {
    if (std::abs(ego.samples[i].t - lead.samples[i].t) > 1e-9) {
      throw Error(
        ErrorCode::unaligned_logs, "timestamps differ at sample " + std::to_string(i));
    }
  }

  AnnotatedScenario out;
  out.ego = ego;
  out.lead_id = lead.track_id;
  const std::size_t n = ego.samples.size();
  out.gap.resize(n);
  out.ttc.resize(n);
  out.thw.resize(n);
  out.ttb.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto & e = ego.samples[i];
    const auto & l = lead.samples[i];
    const double raw_gap = l.x - e.x - config.lead_length;
    if (std::isnan(raw_gap) || std::isnan(e.speed) || std::isnan(l.speed)) {
      out.gap[i] = raw_gap;
      continue;
    }
    const PairState state{std::max(0.0, raw_gap), std::max(0.0, e.speed), std::max(0.0, l.speed)};
    out.gap[i] = state.gap;
    out.ttc[i] = ttc(state);
    out.thw[i] = thw(state);
    out.ttb[i] = ttb(state, config.a_max);
  }

  if (config.ttc_danger) {
    const double limit = *config.ttc_danger;
    const auto dangerous = [&](std::size_t i) { return out.ttc[i] && *out.ttc[i] < limit; };
    const auto same = [](std::size_t) { return 0; };
    for (const auto & [first, last] : runs(n, dangerous, same)) {
      if (ego.samples[last].t - ego.samples[first].t < config.danger_min_duration) {
        continue;
      }
      double min_ttc = *out.ttc[first];
      for (std::size_t i = first; i <= last; ++i) min_ttc = std::min(min_ttc, *out.ttc[i]);
      out.events.push_back(
        {"danger", ego.samples[first].t, ego.samples[last].t, {{"min_ttc", min_ttc}}});
    }
  }
  if (config.yaw_rate_threshold) {
    auto lane_changes =
      detect_lane_changes(ego, *config.yaw_rate_threshold, config.lane_change_min_duration);
    out.events.insert(out.events.end(), lane_changes.begin(), lane_changes.end());
  }
  std::stable_sort(out.events.begin(), out.events.end(), [](const auto & a, const auto & b) {
    return a.t_start < b.t_start;
  });
  return out;
}

std::string write_enriched_csv(const AnnotatedScenario & scenario)
{
  const std::string base = ingest::write_track_log({scenario.ego});
  std::string out;
  std::size_t row = 0;
  std::size_t pos = 0;
  const auto append = [&out](const std::optional<double> & v) {
    out += ',';
    if (v) {
      char buffer[64];
      const auto r = std::to_chars(buffer, buffer + sizeof(buffer), *v);
      out.append(buffer, r.ptr);
    }
  };
  while (pos < base.size()) {
    const auto newline = base.find('\n', pos);
    out.append(base, pos, newline - pos);
    if (row == 0) {
      out += ",ttc,thw,ttb";
    } else {
      append(scenario.ttc[row - 1]);
      append(scenario.thw[row - 1]);
      append(scenario.ttb[row - 1]);
    }
    out += '\n';
    ++row;
    pos = newline + 1;
  }
  return out;
}

}  // namespace scenlib::enrich
