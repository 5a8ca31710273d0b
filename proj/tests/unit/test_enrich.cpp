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
#include "scenlib/random.hpp"
#include "support/helpers.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace
{

using namespace scenlib::enrich;
using scenlib::ErrorCode;
using scenlib::ingest::TimedSample;
using scenlib::ingest::TrackLog;

TEST(Ttc, Examples)
{
  EXPECT_DOUBLE_EQ(*ttc({20.0, 20.0, 10.0}), 2.0);
  EXPECT_FALSE(ttc({20.0, 15.0, 15.0}));
  EXPECT_FALSE(ttc({20.0, 10.0, 15.0}));
  EXPECT_EQ(*ttc({0.0, 12.0, 2.0}), 0.0);
}

TEST(Thw, Examples)
{
  EXPECT_DOUBLE_EQ(*thw({20.0, 10.0, 10.0}), 2.0);
  EXPECT_FALSE(thw({20.0, 0.0, 5.0}));
  EXPECT_EQ(*thw({0.0, 10.0, 10.0}), 0.0);
}

TEST(Ttb, Examples)
{
  EXPECT_DOUBLE_EQ(*ttb({20.0, 20.0, 10.0}, 5.0), 1.0);
  EXPECT_EQ(*ttb({1.0, 20.0, 10.0}, 5.0), 0.0);
  EXPECT_FALSE(ttb({20.0, 10.0, 10.0}, 5.0));
  EXPECT_FALSE(ttb({20.0, 5.0, 10.0}, 5.0));
  EXPECT_SCENLIB_ERROR(ttb({20.0, 20.0, 10.0}, 0.0), ErrorCode::invalid_argument);
}

TEST(SafetyMetricsProperty, ScaleInvarianceOrderingMonotonicity)
{
  scenlib::Rng rng(31);
  for (int trial = 0; trial < 2000; ++trial) {
    const double gap = rng.uniform(0.0, 100.0);
    const double lead = rng.uniform(0.0, 40.0);
    const double ego = rng.uniform(0.0, 40.0);
    const double lambda = rng.uniform(0.1, 10.0);
    const PairState s{gap, ego, lead};
    const auto t = ttc(s);
    const auto scaled = ttc({lambda * gap, lambda * ego, lambda * lead});
    ASSERT_EQ(t.has_value(), scaled.has_value());
    if (t) EXPECT_NEAR(*t, *scaled, 1e-9 * std::max(1.0, *t));

    const auto b = ttb(s, rng.uniform(0.5, 10.0));
    if (t && b) EXPECT_LE(*b, *t);

    const PairState wider{gap + rng.uniform(0.0, 20.0), ego, lead};
    if (t) EXPECT_LE(*t, *ttc(wider));
    const auto h = thw(s);
    if (h) EXPECT_LE(*h, *thw(wider));
  }
}

TrackLog yaw_track(const std::function<double(double)> & yaw_rate, double duration = 5.0, double rate = 100.0)
{
  TrackLog track{"ego", {}, std::nullopt};
  const auto n = static_cast<int>(std::lround(duration * rate));
  for (int i = 0; i <= n; ++i) {
    TimedSample s;
    s.t = i / rate;
    s.speed = 10.0;
    s.yaw_rate = yaw_rate(s.t);
    track.samples.push_back(s);
  }
  return track;
}

TEST(LaneChanges, ZeroYawRateGivesNothing)
{
  EXPECT_TRUE(detect_lane_changes(yaw_track([](double) { return 0.0; }), 0.1, 1.0).empty());
}

TEST(LaneChanges, PulseGivesOneEventSpanningIt)
{
  const auto track = yaw_track([](double t) { return t >= 1.0 - 1e-9 && t < 2.5 - 1e-9 ? 0.2 : 0.0; });
  const auto events = detect_lane_changes(track, 0.1, 1.0);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].kind, "lane_change");
  EXPECT_NEAR(events[0].t_start, 1.0, 1e-9);
  EXPECT_NEAR(events[0].t_end, 2.49, 1e-9);
  EXPECT_EQ(events[0].attributes.at("sign"), 1.0);
  EXPECT_DOUBLE_EQ(events[0].attributes.at("peak_yaw_rate"), 0.2);
}

TEST(LaneChanges, ShortPulseFiltered)
{
  const auto track = yaw_track([](double t) { return t >= 1.0 - 1e-9 && t < 1.5 - 1e-9 ? 0.2 : 0.0; });
  EXPECT_TRUE(detect_lane_changes(track, 0.1, 1.0).empty());
}

TEST(LaneChanges, SignChangeSplitsAndIntervalsAreOrdered)
{
  scenlib::Rng rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> values(1001);
    double level = 0.0;
    for (auto & v : values) {
      if (rng.uniform() < 0.02) level = rng.uniform(-0.4, 0.4);
      v = level;
    }
    const auto track = yaw_track([&](double t) { return values[static_cast<std::size_t>(std::lround(t * 100.0))]; }, 10.0);
    const auto events = detect_lane_changes(track, 0.1, 0.2);
    for (std::size_t i = 0; i < events.size(); ++i) {
      EXPECT_LE(events[i].t_start, events[i].t_end);
      EXPECT_GE(events[i].t_end - events[i].t_start, 0.2 - 1e-12);
      if (i > 0) EXPECT_LT(events[i - 1].t_end, events[i].t_start);
    }
  }
}

std::pair<TrackLog, TrackLog> pair_tracks(const std::function<double(double)> & gap, double ego_speed, double lead_speed)
{
  TrackLog ego{"ego", {}, std::nullopt}, lead{"lead", {}, std::nullopt};
  for (int i = 0; i <= 100; ++i) {
    TimedSample e, l;
    e.t = l.t = i * 0.1;
    e.x = ego_speed * e.t;
    e.speed = ego_speed;
    l.x = e.x + gap(e.t) + 4.5;
    l.speed = lead_speed;
    ego.samples.push_back(e);
    lead.samples.push_back(l);
  }
  return {ego, lead};
}

TEST(Annotate, ConstantGapEqualSpeeds)
{
  const auto [ego, lead] = pair_tracks([](double) { return 30.0; }, 20.0, 20.0);
  AnnotateConfig config;
  config.lead_length = 4.5;
  config.ttc_danger = 1.0;
  const auto out = annotate(ego, lead, config);
  ASSERT_EQ(out.ttc.size(), ego.samples.size());
  for (const auto & t : out.ttc) EXPECT_FALSE(t);
  for (const double g : out.gap) EXPECT_NEAR(g, 30.0, 1e-9);
  EXPECT_TRUE(out.events.empty());
}

TEST(Annotate, TtcDipGivesOneDangerEvent)
{
  const auto gap = [](double t) { return t >= 4.0 - 1e-9 && t <= 6.0 + 1e-9 ? 5.0 : 20.0; };
  const auto [ego, lead] = pair_tracks(gap, 20.0, 10.0);
  AnnotateConfig config;
  config.lead_length = 4.5;
  config.ttc_danger = 1.0;
  config.danger_min_duration = 1.0;
  const auto out = annotate(ego, lead, config);
  ASSERT_EQ(out.events.size(), 1u);
  EXPECT_EQ(out.events[0].kind, "danger");
  EXPECT_NEAR(out.events[0].t_start, 4.0, 1e-9);
  EXPECT_NEAR(out.events[0].t_end, 6.0, 1e-9);
  EXPECT_NEAR(out.events[0].attributes.at("min_ttc"), 0.5, 1e-9);
}

TEST(Annotate, NoThresholdsNoEvents)
{
  const auto [ego, lead] = pair_tracks([](double t) { return 20.0 - t; }, 20.0, 10.0);
  const auto out = annotate(ego, lead, AnnotateConfig{});
  EXPECT_TRUE(out.events.empty());
  for (std::size_t i = 0; i < out.ttc.size(); ++i) {
    ASSERT_TRUE(out.ttc[i]);
    ASSERT_TRUE(out.thw[i]);
    ASSERT_TRUE(out.ttb[i]);
  }
  const auto csv = write_enriched_csv(out);
  EXPECT_NE(csv.find(",ttc,thw,ttb"), std::string::npos);
}

TEST(Annotate, UnalignedLogs)
{
  auto [ego, lead] = pair_tracks([](double) { return 10.0; }, 10.0, 10.0);
  lead.samples[3].t += 0.01;
  EXPECT_SCENLIB_ERROR(annotate(ego, lead, {}), ErrorCode::unaligned_logs);
  lead.samples.pop_back();
  EXPECT_SCENLIB_ERROR(annotate(ego, lead, {}), ErrorCode::unaligned_logs);
}

}  // namespace
