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

#include "scenlib/diagnostics.hpp"
#include "scenlib/ingest.hpp"
#include "scenlib/random.hpp"
#include "support/helpers.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace
{

using namespace scenlib::ingest;
using scenlib::ErrorCode;

const char * kHeader = "t,track_id,x,y,speed,accel,yaw,yaw_rate,lane_id\n";

TrackLog make_track(const std::string & id, const std::vector<double> & ts, const std::function<double(double)> & speed)
{
  TrackLog track{id, {}, std::nullopt};
  for (const double t : ts) {
    TimedSample s;
    s.t = t;
    s.x = 2.0 * t + 1.0;
    s.y = -0.5 * t;
    s.speed = speed(t);
    s.accel = 0.25 * t;
    s.yaw = 0.01 * t;
    s.yaw_rate = 0.01;
    s.lane_id = 1;
    track.samples.push_back(s);
  }
  return track;
}

TEST(Ingest, ParsesTwoWellFormedRows)
{
  const std::string text = std::string(kHeader) + "0.0,ego,1,2,3,4,0.1,0.01,1\n0.1,ego,1.5,2,3.1,4,0.1,0.01,1\n";
  const auto result = parse_track_log(text);
  ASSERT_EQ(result.tracks.size(), 1u);
  EXPECT_EQ(result.tracks[0].track_id, "ego");
  ASSERT_EQ(result.tracks[0].samples.size(), 2u);
  EXPECT_EQ(result.tracks[0].samples[1].speed, 3.1);
  EXPECT_EQ(result.rows_read, 2u);
}

TEST(Ingest, NonNumericSpeedOnLineThree)
{
  const std::string text = std::string(kHeader) + "0.0,ego,1,2,3,4,0,0,1\n0.1,ego,1,2,fast,4,0,0,1\n";
  std::string message;
  const auto code = scenlib::test::error_code_of([&] { parse_track_log(text); }, &message);
  ASSERT_TRUE(code);
  EXPECT_EQ(*code, ErrorCode::malformed_row);
  EXPECT_NE(message.find("line 3"), std::string::npos);
  EXPECT_NE(message.find("speed"), std::string::npos);

  const auto lenient = parse_track_log(text, {.strict = false});
  ASSERT_EQ(lenient.rejected.size(), 1u);
  EXPECT_EQ(lenient.rejected[0].line, 3u);
  EXPECT_EQ(lenient.rejected[0].column, "speed");
  EXPECT_EQ(lenient.tracks[0].samples.size() + lenient.rejected.size(), lenient.rows_read);
}

TEST(Ingest, DuplicateTimestampRejected)
{
  const std::string text = std::string(kHeader) + "0.5,ego,1,2,3,4,0,0,1\n0.5,ego,1,2,3,4,0,0,1\n";
  EXPECT_SCENLIB_ERROR(parse_track_log(text), ErrorCode::duplicate_timestamp);
  EXPECT_EQ(parse_track_log(text, {.allow_duplicate_timestamps = true}).tracks[0].samples.size(), 2u);
}

TEST(Ingest, EmptyInput)
{
  EXPECT_SCENLIB_ERROR(parse_track_log(""), ErrorCode::empty_input);
  EXPECT_SCENLIB_ERROR(parse_track_log("\n\n"), ErrorCode::empty_input);
}

TEST(Ingest, AnyColumnOrderCrlfAndMissingCells)
{
  const std::string text = "track_id,lane_id,t,yaw_rate,yaw,accel,speed,y,x,extra\r\n"
                           "b,2,1.0,0,0,0,5,0,10,zz\r\n"
                           "a,1,0.5,0,0,,4,0,3,zz\r\n";
  const auto result = parse_track_log(text);
  ASSERT_EQ(result.tracks.size(), 2u);
  EXPECT_EQ(result.tracks[0].track_id, "a");
  EXPECT_TRUE(std::isnan(result.tracks[0].samples[0].accel));
  EXPECT_EQ(result.tracks[1].samples[0].lane_id, 2);
  EXPECT_EQ(result.tracks[1].samples[0].x, 10.0);
}

TEST(Ingest, RoundTripIsBitExact)
{
  scenlib::Rng rng(3);
  std::vector<double> ts;
  double t = 0.0;
  for (int i = 0; i < 50; ++i) ts.push_back(t += 0.05 + 0.01 * rng.uniform());
  auto track = make_track("ego", ts, [&](double) { return 20.0 + rng.normal(); });
  track.samples[3].accel = std::numeric_limits<double>::quiet_NaN();
  const auto first = parse_track_log(write_track_log({track}));
  const auto second = parse_track_log(write_track_log(first.tracks));
  ASSERT_EQ(first.tracks.size(), 1u);
  const auto & a = track.samples;
  const auto & b = second.tracks[0].samples;
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].t, b[i].t);
    EXPECT_EQ(a[i].speed, b[i].speed);
    EXPECT_EQ(a[i].x, b[i].x);
    EXPECT_EQ(std::isnan(a[i].accel), std::isnan(b[i].accel));
    if (!std::isnan(a[i].accel)) EXPECT_EQ(a[i].accel, b[i].accel);
  }
  EXPECT_EQ(write_track_log(first.tracks), write_track_log(second.tracks));
}

TEST(Ingest, YawNormalized)
{
  const std::string text = std::string(kHeader) + "0,ego,0,0,1,0,7.0,0,1\n";
  const double yaw = parse_track_log(text).tracks[0].samples[0].yaw;
  EXPECT_LE(std::abs(yaw), std::numbers::pi);
  EXPECT_NEAR(yaw, 7.0 - 2.0 * std::numbers::pi, 1e-12);
}

TEST(Synchronize, MedianOfWindow)
{
  TrackLog track{"a", {}, std::nullopt};
  const std::vector<std::pair<double, double>> points = {{0.0, 0.0}, {0.08, 1.0}, {0.1, 9.0}, {0.12, 2.0}, {0.2, 0.0}};
  for (const auto & [t, v] : points) {
    TimedSample s;
    s.t = t;
    s.speed = v;
    track.samples.push_back(s);
  }
  const auto out = synchronize({track}, 10.0, SyncMethod::median);
  ASSERT_EQ(out[0].samples.size(), 3u);
  EXPECT_EQ(out[0].samples[1].speed, 2.0);
}

TEST(Synchronize, SplineReproducesLinearData)
{
  std::vector<double> ts;
  scenlib::Rng rng(5);
  double t = 0.0;
  for (int i = 0; i < 40; ++i) ts.push_back(t += 0.03 + 0.05 * rng.uniform());
  const auto track = make_track("a", ts, [](double time) { return 3.0 + 1.5 * time; });
  const auto out = synchronize({track}, 10.0, SyncMethod::spline);
  for (const auto & s : out[0].samples) {
    EXPECT_NEAR(s.speed, 3.0 + 1.5 * s.t, 1e-9);
    EXPECT_NEAR(s.x, 2.0 * s.t + 1.0, 1e-9);
  }
}

TEST(Synchronize, MultiRateTracksShareTimestamps)
{
  scenlib::Rng rng(11);
  std::vector<double> t7, t13;
  for (int i = 0; i < 70; ++i) t7.push_back(i / 7.0 + 0.01 * (rng.uniform() - 0.5));
  for (int i = 0; i < 130; ++i) t13.push_back(0.03 + i / 13.0 + 0.005 * (rng.uniform() - 0.5));
  const auto a = make_track("a", t7, [](double t) { return 10.0 + t; });
  const auto b = make_track("b", t13, [](double t) { return 12.0 - t; });
  for (const auto method : {SyncMethod::median, SyncMethod::spline}) {
    const auto out = synchronize({a, b}, 10.0, method);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].times(), out[1].times());
    const auto ts = out[0].times();
    ASSERT_GT(ts.size(), 50u);
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      EXPECT_LT(std::abs((ts[k + 1] - ts[k]) - 0.1), 1e-9);
    }
    EXPECT_GE(ts.front(), std::max(t7.front(), t13.front()));
    EXPECT_LE(ts.back(), std::min(t7.back(), t13.back()) + 1e-9);
  }
}

TEST(Synchronize, IdempotentOnUniformTracks)
{
  std::vector<double> ts;
  for (int i = 0; i < 30; ++i) ts.push_back(i * 0.1);
  const auto track = make_track("a", ts, [](double t) { return 5.0 + std::sin(t); });
  const auto out = synchronize({track}, 10.0, SyncMethod::spline);
  ASSERT_EQ(out[0].samples.size(), track.samples.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    EXPECT_NEAR(out[0].samples[i].speed, track.samples[i].speed, 1e-9);
  }
}

TEST(Synchronize, Errors)
{
  const auto a = make_track("a", {0.0, 1.0}, [](double) { return 1.0; });
  const auto b = make_track("b", {2.0, 3.0}, [](double) { return 1.0; });
  const auto c = make_track("c", {0.0}, [](double) { return 1.0; });
  EXPECT_SCENLIB_ERROR(synchronize({a, b}, 10.0, SyncMethod::median), ErrorCode::no_overlap);
  EXPECT_SCENLIB_ERROR(synchronize({a, c}, 10.0, SyncMethod::median), ErrorCode::degenerate_track);
  EXPECT_SCENLIB_ERROR(synchronize({a}, 0.0, SyncMethod::median), ErrorCode::invalid_argument);
}

TrackLog signal_track(const std::string & id, double shift)
{
  TrackLog track{id, {}, std::nullopt};
  for (int i = 0; i <= 200; ++i) {
    TimedSample s;
    s.t = i * 0.05;
    const double u = s.t - shift;
    s.speed = 10.0 + 3.0 * std::exp(-(u - 4.0) * (u - 4.0)) + std::sin(1.3 * u);
    track.samples.push_back(s);
  }
  return track;
}

TEST(ClockOffset, RecoversShift)
{
  const auto reference = signal_track("ref", 0.0);
  const double lag = clock_offset(reference, signal_track("late", 0.5), "speed");
  EXPECT_NEAR(lag, 0.5, 0.05 + 1e-12);
  EXPECT_NEAR(clock_offset(reference, signal_track("early", -0.5), "speed"), -0.5, 0.05 + 1e-12);
}

TEST(ClockOffset, SelfIsZero) { EXPECT_EQ(clock_offset(signal_track("a", 0.0), signal_track("b", 0.0), "speed"), 0.0); }

TEST(ClockOffset, FlatChannelWarnsAndReturnsZero)
{
  const auto flat = make_track("f", {0.0, 0.1, 0.2, 0.3, 0.4}, [](double) { return 4.0; });
  scenlib::WarningCapture capture;
  EXPECT_EQ(clock_offset(flat, flat, "speed"), 0.0);
  EXPECT_EQ(capture.messages().size(), 1u);
}

}  // namespace
