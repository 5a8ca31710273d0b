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

#ifndef SCENLIB__ENRICH_HPP_
#define SCENLIB__ENRICH_HPP_

#include "scenlib/ingest.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scenlib::enrich
{

/// Longitudinal state of a follower (ego) behind a leader.
struct PairState
{
  double gap = 0.0;  // bumper to bumper [m]
  double ego_speed = 0.0;
  double lead_speed = 0.0;
};

/// gap / closing speed, or nullopt when the ego is not closing in.
std::optional<double> ttc(const PairState & s);

/// gap / ego speed, or nullopt for a standing ego.
std::optional<double> thw(const PairState & s);

/// Latest time the ego can keep its speed before braking at `a_max` still
/// avoids the (constant-speed) leader: gap/closing - closing/(2 a_max),
/// clamped at zero. nullopt when not closing. Throws for a_max <= 0.
std::optional<double> ttb(const PairState & s, double a_max);

struct EventAnnotation
{
  std::string kind;  // "lane_change", "danger" or a custom tag
  double t_start = 0.0;
  double t_end = 0.0;
  std::map<std::string, double> attributes;
};

/// Maximal runs of samples with |yaw_rate| > threshold and constant sign whose
/// span (last minus first sample time) is at least `min_duration`.
/// attributes: sign (+1 left / -1 right), peak_yaw_rate.
std::vector<EventAnnotation> detect_lane_changes(
  const ingest::TrackLog & track, double yaw_rate_threshold, double min_duration);

struct AnnotateConfig
{
  /// Subtracted from the longitudinal position difference to get the gap.
  double lead_length = 0.0;
  double a_max = 6.0;
  std::optional<double> ttc_danger;
  double danger_min_duration = 0.0;
  std::optional<double> yaw_rate_threshold;
  double lane_change_min_duration = 1.0;
};

struct AnnotatedScenario
{
  ingest::TrackLog ego;
  std::string lead_id;
  std::vector<double> gap;
  std::vector<std::optional<double>> ttc;
  std::vector<std::optional<double>> thw;
  std::vector<std::optional<double>> ttb;
  std::vector<EventAnnotation> events;
};

/// Derives TTC/THW/TTB per sample of a synchronized (ego, lead) pair and emits
/// danger / lane-change events per `config`. Throws UnalignedLogs.
AnnotatedScenario annotate(
  const ingest::TrackLog & ego, const ingest::TrackLog & lead, const AnnotateConfig & config);

/// Track CSV with `ttc,thw,ttb` columns appended (empty cell = none).
std::string write_enriched_csv(const AnnotatedScenario & scenario);

}  // namespace scenlib::enrich

#endif  // SCENLIB__ENRICH_HPP_
