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

#ifndef SCENLIB__INGEST_HPP_
#define SCENLIB__INGEST_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scenlib::ingest
{

/// One fused track sample. Missing numeric channels are NaN; `t` and
/// `lane_id` are always present.
struct TimedSample
{
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double speed = 0.0;
  double accel = 0.0;
  double yaw = 0.0;
  double yaw_rate = 0.0;
  int lane_id = 0;
};

/// Names of the floating-point channels, in CSV column order.
inline constexpr std::string_view kChannels[] = {"x", "y", "speed", "accel", "yaw", "yaw_rate"};

/// Mutable access to a floating-point channel by name. Returns nullptr for
/// unknown names (including "t" and "lane_id").
double * channel(TimedSample & sample, std::string_view name);
const double * channel(const TimedSample & sample, std::string_view name);
bool is_channel(std::string_view name);

struct TrackLog
{
  std::string track_id;
  std::vector<TimedSample> samples;
  std::optional<double> rate_hz;

  std::vector<double> times() const;
  std::vector<double> values(std::string_view channel_name) const;
};

/// Wraps an angle into (-pi, pi].
double normalize_angle(double angle);

struct RejectedRow
{
  std::size_t line = 0;
  std::string column;
  std::string reason;
};

struct ParseOptions
{
  /// Strict mode throws on the first malformed row; lenient mode skips it and
  /// reports it in ParseResult::rejected.
  bool strict = true;
  /// Keep rows sharing (track_id, t). Raw logs headed for cleaning use this.
  bool allow_duplicate_timestamps = false;
};

struct ParseResult
{
  std::vector<TrackLog> tracks;
  std::vector<RejectedRow> rejected;
  std::size_t rows_read = 0;
};

/// Parses the track CSV (`t,track_id,x,y,speed,accel,yaw,yaw_rate,lane_id`,
/// any column order, extra columns ignored). Tracks are returned in ascending
/// track_id order with samples sorted by t.
/// Throws EmptyInput, MalformedRow (line + column) and DuplicateTimestamp.
ParseResult parse_track_log(std::string_view text, const ParseOptions & options = {});

/// Inverse of parse_track_log. Doubles are written in shortest round-trip
/// form; missing values become empty cells.
std::string write_track_log(const std::vector<TrackLog> & tracks);

enum class SyncMethod { median, spline };

std::optional<SyncMethod> sync_method_from_string(std::string_view text);

/// Resamples every track onto t_k = t_start + k / target_hz over the window
/// shared by all tracks. Throws NoOverlap, DegenerateTrack, InvalidArgument.
std::vector<TrackLog> synchronize(
  const std::vector<TrackLog> & tracks, double target_hz, SyncMethod method);

/// Natural cubic spline through (xs, ys); xs strictly increasing, size >= 2.
class NaturalCubicSpline
{
public:
  NaturalCubicSpline(std::vector<double> xs, std::vector<double> ys);
  double operator()(double x) const;

private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> second_;
};

struct ClockOffsetOptions
{
  double max_lag = 5.0;
  /// Grid step in seconds; 0 selects the median sample spacing of `reference`.
  double grid_step = 0.0;
  /// Minimum fraction of the reference grid that must overlap for a lag to count.
  double min_overlap_fraction = 0.5;
};

/// Lag (seconds) maximising the normalised cross-correlation between
/// reference(t) and other(t + lag). A positive result means `other` runs late.
/// Flat channels yield 0 with a warning. Throws NoOverlap, DegenerateTrack.
double clock_offset(
  const TrackLog & reference, const TrackLog & other, std::string_view channel_name,
  const ClockOffsetOptions & options = {});

}  // namespace scenlib::ingest

#endif  // SCENLIB__INGEST_HPP_
