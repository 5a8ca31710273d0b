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

#include "scenlib/synthetic.hpp"

#include "scenlib/error.hpp"
#include "scenlib/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace scenlib::synthetic
{

namespace
{

constexpr double kLaneWidth = 3.5;
constexpr double kLateralTime = 1.5;

struct Group
{
  double ego_speed, ego_sd;
  double delta_v, delta_sd;
  double gap, gap_sd;
  double decel, decel_sd;
};

constexpr Group kGroups[] = {
  {27.0, 2.0, 1.0, 0.8, 38.0, 4.0, 0.0, 0.0},
  {22.0, 2.0, 2.0, 0.5, 18.0, 2.0, 0.0, 0.0},
  {25.0, 2.0, 0.0, 0.8, 30.0, 3.0, 1.5, 0.3},
};

double smoothstep(double u)
{
  u = std::clamp(u, 0.0, 1.0);
  return u * u * (3.0 - 2.0 * u);
}

double smoothstep_rate(double u)
{
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return 6.0 * u * (1.0 - u);
}

void corrupt(ingest::TrackLog & track, const CorpusOptions & options, Rng & rng)
{
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<ingest::TimedSample> out;
  out.reserve(track.samples.size() + 4);
  for (std::size_t i = 0; i < track.samples.size(); ++i) {
    auto sample = track.samples[i];
    // First and last rows stay intact so every channel has a defined range.
    if (i > 0 && i + 1 < track.samples.size()) {
      for (const std::string_view name : ingest::kChannels) {
        if (rng.uniform() < options.missing_fraction) *ingest::channel(sample, name) = nan;
      }
    }
    out.push_back(sample);
    if (rng.uniform() < options.duplicate_fraction) out.push_back(sample);
  }
  track.samples = std::move(out);
}

}  // namespace

std::vector<Episode> cutin_corpus(const CorpusOptions & options, std::uint64_t seed)
{
  if (options.episodes == 0 || !(options.duration > 0.0) || !(options.rate_hz > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "corpus needs episodes, duration and rate > 0");
  }
  if (options.jitter < 0.0 || options.jitter * 4.0 >= 1.0 / options.rate_hz) {
    throw Error(ErrorCode::invalid_argument, "timestamp jitter too large for the logging rate");
  }
  std::vector<Episode> corpus;
  corpus.reserve(options.episodes);
  const auto steps = static_cast<std::size_t>(std::floor(options.duration * options.rate_hz));

  for (std::size_t e = 0; e < options.episodes; ++e) {
    Rng rng(derive_seed(seed, e));
    Episode episode;
    char name[32];
    std::snprintf(name, sizeof(name), "episode_%04zu", e);
    episode.name = name;
    episode.behaviour = e % 3;
    const Group & g = kGroups[episode.behaviour];

    auto & truth = episode.truth;
    truth.ego_speed_0 = std::max(5.0, g.ego_speed + g.ego_sd * rng.normal());
    truth.cutin_speed = std::max(0.0, truth.ego_speed_0 - (g.delta_v + g.delta_sd * rng.normal()));
    truth.cutin_gap_0 = std::max(5.0, g.gap + g.gap_sd * rng.normal());
    truth.cutin_decel = std::max(0.0, g.decel + g.decel_sd * rng.normal());

    ingest::TrackLog ego{"ego", {}, std::nullopt};
    ingest::TrackLog lead{"lead", {}, std::nullopt};
    const double lead_offset = 0.37 / options.rate_hz;
    for (std::size_t k = 0; k <= steps; ++k) {
      const double nominal = static_cast<double>(k) / options.rate_hz;

      const double te = nominal + options.jitter * rng.normal() * 0.5;
      ingest::TimedSample es;
      es.t = te;
      es.speed = truth.ego_speed_0 + 0.05 * rng.normal();
      es.x = truth.ego_speed_0 * te + 0.05 * rng.normal();
      es.y = 0.05 * rng.normal();
      es.accel = 0.05 * rng.normal();
      es.yaw = 0.002 * rng.normal();
      es.yaw_rate = 0.002 * rng.normal();
      es.lane_id = 1;
      ego.samples.push_back(es);

      const double tl = nominal + lead_offset + options.jitter * rng.normal() * 0.5;
      const double stop_time =
        truth.cutin_decel > 0.0 ? truth.cutin_speed / truth.cutin_decel : std::numeric_limits<double>::infinity();
      const double tm = std::min(std::max(tl, 0.0), stop_time);
      const double v = truth.cutin_speed - truth.cutin_decel * tm;
      const double travelled = truth.cutin_speed * tm - 0.5 * truth.cutin_decel * tm * tm;
      const double u = tl / kLateralTime;
      const double y = kLaneWidth * (1.0 - smoothstep(u));
      const double vy = -kLaneWidth * smoothstep_rate(u) / kLateralTime;
      const double heading = std::atan2(vy, std::max(v, 0.1));

      ingest::TimedSample ls;
      ls.t = tl;
      ls.x = truth.cutin_gap_0 + options.lead_length + travelled + 0.05 * rng.normal();
      ls.y = y + 0.05 * rng.normal();
      ls.speed = std::max(0.0, v + 0.05 * rng.normal());
      ls.accel = (tl < stop_time ? -truth.cutin_decel : 0.0) + 0.05 * rng.normal();
      ls.yaw = heading + 0.002 * rng.normal();
      ls.yaw_rate = 0.0;
      ls.lane_id = y > 0.5 * kLaneWidth ? 2 : 1;
      lead.samples.push_back(ls);
    }
    for (std::size_t k = 0; k < lead.samples.size(); ++k) {
      const std::size_t lo = k == 0 ? 0 : k - 1;
      const std::size_t hi = std::min(k + 1, lead.samples.size() - 1);
      const double dt = lead.samples[hi].t - lead.samples[lo].t;
      lead.samples[k].yaw_rate = (lead.samples[hi].yaw - lead.samples[lo].yaw) / dt;
    }
    corrupt(ego, options, rng);
    corrupt(lead, options, rng);
    episode.tracks = {std::move(ego), std::move(lead)};
    corpus.push_back(std::move(episode));
  }
  return corpus;
}

}  // namespace scenlib::synthetic
