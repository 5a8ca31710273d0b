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

#include "scenlib/ingest.hpp"

#include "scenlib/diagnostics.hpp"
#include "scenlib/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace scenlib::ingest
{

namespace
{
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTimeEps = 1e-9;
}  // namespace

double * channel(TimedSample & sample, std::string_view name)
{
  if (name == "x") return &sample.x;
  if (name == "y") return &sample.y;
  if (name == "speed") return &sample.speed;
  if (name == "accel") return &sample.accel;
  if (name == "yaw") return &sample.yaw;
  if (name == "yaw_rate") return &sample.yaw_rate;
  return nullptr;
}

const double * channel(const TimedSample & sample, std::string_view name)
{
  return channel(const_cast<TimedSample &>(sample), name);
}

bool is_channel(std::string_view name)
{
  TimedSample probe;
  return channel(probe, name) != nullptr;
}

std::vector<double> TrackLog::times() const
{
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto & s : samples) {
    out.push_back(s.t);
  }
  return out;
}

std::vector<double> TrackLog::values(std::string_view channel_name) const
{
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto & s : samples) {
    const double * value = channel(s, channel_name);
    if (value == nullptr) {
      throw Error(ErrorCode::unknown_channel, std::string(channel_name));
    }
    out.push_back(*value);
  }
  return out;
}

double normalize_angle(double angle)
{
  if (!std::isfinite(angle)) {
    return angle;
  }
  if (angle > -std::numbers::pi && angle <= std::numbers::pi) {
    return angle;
  }
  double wrapped = std::remainder(angle, 2.0 * std::numbers::pi);
  if (wrapped <= -std::numbers::pi) {
    wrapped += 2.0 * std::numbers::pi;
  }
  return wrapped;
}

// ---------------------------------------------------------------------------
// CSV

namespace
{

constexpr std::array<std::string_view, 9> kColumns = {
  "t", "track_id", "x", "y", "speed", "accel", "yaw", "yaw_rate", "lane_id"};

std::string_view trim(std::string_view text)
{
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  return text;
}

std::vector<std::string_view> split_fields(std::string_view line)
{
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

std::optional<double> parse_double(std::string_view text)
{
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

std::optional<int> parse_int(std::string_view text)
{
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

struct RowError
{
  std::string column;
  std::string reason;
};

void append_double(std::string & out, double value)
{
  if (std::isnan(value)) {
    return;
  }
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  out.append(buffer, result.ptr);
}

}  // namespace

ParseResult parse_track_log(std::string_view text, const ParseOptions & options)
{
  if (text.substr(0, 3) == "\xEF\xBB\xBF") {
    text.remove_prefix(3);
  }
  ParseResult result;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::array<std::size_t, kColumns.size()> column_index{};
  bool have_header = false;
  std::size_t header_width = 0;
  std::map<std::string, TrackLog> tracks;

  while (pos <= text.size()) {
    const auto newline = text.find('\n', pos);
    const auto end = newline == std::string_view::npos ? text.size() : newline;
    const std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) {
      if (newline == std::string_view::npos) break;
      continue;
    }

    const auto fields = split_fields(line);
    if (!have_header) {
      for (std::size_t c = 0; c < kColumns.size(); ++c) {
        const auto it = std::find(fields.begin(), fields.end(), kColumns[c]);
        if (it == fields.end()) {
          throw Error(
            ErrorCode::malformed_row,
            "line " + std::to_string(line_no) + ": header lacks column '" +
              std::string(kColumns[c]) + "'");
        }
        column_index[c] = static_cast<std::size_t>(it - fields.begin());
      }
      header_width = fields.size();
      have_header = true;
      if (newline == std::string_view::npos) break;
      continue;
    }

    ++result.rows_read;
    std::optional<RowError> error;
    TimedSample sample;
    std::string track_id;
    if (fields.size() != header_width) {
      error = RowError{"", "expected " + std::to_string(header_width) + " fields, got " +
                             std::to_string(fields.size())};
    }
    for (std::size_t c = 0; c < kColumns.size() && !error; ++c) {
      const std::string_view name = kColumns[c];
      const std::string_view cell = fields[column_index[c]];
      if (name == "track_id") {
        if (cell.empty()) {
          error = RowError{std::string(name), "empty track_id"};
        }
        track_id = std::string(cell);
      } else if (name == "lane_id") {
        const auto lane = parse_int(cell);
        if (!lane) {
          error = RowError{std::string(name), "not an integer: '" + std::string(cell) + "'"};
        } else {
          sample.lane_id = *lane;
        }
      } else if (name == "t") {
        const auto t = parse_double(cell);
        if (!t || !std::isfinite(*t)) {
          error = RowError{std::string(name), "timestamp must be a finite number"};
        } else {
          sample.t = *t;
        }
      } else {
        double * target = channel(sample, name);
        if (cell.empty()) {
          *target = kNaN;
          continue;
        }
        const auto value = parse_double(cell);
        if (!value) {
          error = RowError{std::string(name), "not a number: '" + std::string(cell) + "'"};
        } else if (name == "speed" && *value < 0.0) {
          error = RowError{std::string(name), "negative speed"};
        } else {
          *target = name == "yaw" ? normalize_angle(*value) : *value;
        }
      }
    }

    if (error) {
      if (options.strict) {
        throw Error(
          ErrorCode::malformed_row, "line " + std::to_string(line_no) + ", column '" +
                                      error->column + "': " + error->reason);
      }
      result.rejected.push_back({line_no, error->column, error->reason});
    } else {
      auto & track = tracks[track_id];
      track.track_id = track_id;
      track.samples.push_back(sample);
    }
    if (newline == std::string_view::npos) break;
  }

  if (!have_header) {
    throw Error(ErrorCode::empty_input, "no header row");
  }

  for (auto & [id, track] : tracks) {
    std::stable_sort(
      track.samples.begin(), track.samples.end(),
      [](const TimedSample & a, const TimedSample & b) { return a.t < b.t; });
    if (!options.allow_duplicate_timestamps) {
      for (std::size_t i = 1; i < track.samples.size(); ++i) {
        if (track.samples[i].t == track.samples[i - 1].t) {
          char buffer[64];
          const auto r = std::to_chars(buffer, buffer + sizeof(buffer), track.samples[i].t);
          throw Error(
            ErrorCode::duplicate_timestamp,
            "track '" + id + "' at t=" + std::string(buffer, r.ptr));
        }
      }
    }
    result.tracks.push_back(std::move(track));
  }
  return result;
}

std::string write_track_log(const std::vector<TrackLog> & tracks)
{
  std::string out = "t,track_id,x,y,speed,accel,yaw,yaw_rate,lane_id\n";
  for (const auto & track : tracks) {
    for (const auto & s : track.samples) {
      append_double(out, s.t);
      out += ',';
      out += track.track_id;
      for (const double value : {s.x, s.y, s.speed, s.accel, s.yaw, s.yaw_rate}) {
        out += ',';
        append_double(out, value);
      }
      out += ',';
      out += std::to_string(s.lane_id);
      out += '\n';
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Synchronisation

std::optional<SyncMethod> sync_method_from_string(std::string_view text)
{
  if (text == "median") return SyncMethod::median;
  if (text == "spline") return SyncMethod::spline;
  return std::nullopt;
}

NaturalCubicSpline::NaturalCubicSpline(std::vector<double> xs, std::vector<double> ys)
: xs_(std::move(xs)), ys_(std::move(ys)), second_(xs_.size(), 0.0)
{
  const std::size_t n = xs_.size();
  if (n < 2 || ys_.size() != n) {
    throw Error(ErrorCode::degenerate_track, "spline needs at least two points");
  }
  // Tridiagonal solve for the interior second derivatives (natural ends).
  std::vector<double> diag(n, 1.0), upper(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = xs_[i] - xs_[i - 1];
    const double h1 = xs_[i + 1] - xs_[i];
    const double lower = h0 / 6.0;
    diag[i] = (h0 + h1) / 3.0;
    upper[i] = h1 / 6.0;
    rhs[i] = (ys_[i + 1] - ys_[i]) / h1 - (ys_[i] - ys_[i - 1]) / h0;
    const double m = lower / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  for (std::size_t i = n - 1; i-- > 1;) {
    second_[i] = (rhs[i] - upper[i] * second_[i + 1]) / diag[i];
  }
}

double NaturalCubicSpline::operator()(double x) const
{
  const std::size_t n = xs_.size();
  std::size_t hi = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
  hi = std::clamp<std::size_t>(hi, 1, n - 1);
  const std::size_t lo = hi - 1;
  const double h = xs_[hi] - xs_[lo];
  const double a = (xs_[hi] - x) / h;
  const double b = (x - xs_[lo]) / h;
  return a * ys_[lo] + b * ys_[hi] +
         ((a * a * a - a) * second_[lo] + (b * b * b - b) * second_[hi]) * h * h / 6.0;
}

namespace
{

double median_of(std::vector<double> & values)
{
  const std::size_t n = values.size();
  std::sort(values.begin(), values.end());
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::size_t nearest_index(const std::vector<double> & ts, double t)
{
  const auto it = std::lower_bound(ts.begin(), ts.end(), t);
  if (it == ts.begin()) return 0;
  if (it == ts.end()) return ts.size() - 1;
  const std::size_t hi = static_cast<std::size_t>(it - ts.begin());
  return (t - ts[hi - 1]) <= (ts[hi] - t) ? hi - 1 : hi;
}

std::vector<double> unwrap(std::vector<double> angles)
{
  double offset = 0.0;
  double last_raw = kNaN;
  for (double & a : angles) {
    if (!std::isfinite(a)) continue;
    if (std::isfinite(last_raw)) {
      const double delta = a - last_raw;
      if (delta > std::numbers::pi) offset -= 2.0 * std::numbers::pi;
      if (delta < -std::numbers::pi) offset += 2.0 * std::numbers::pi;
    }
    last_raw = a;
    a += offset;
  }
  return angles;
}

std::vector<double> resample_channel(
  const std::vector<double> & ts, const std::vector<double> & values,
  const std::vector<double> & grid, double target_hz, SyncMethod method)
{
  std::vector<double> out(grid.size(), kNaN);
  if (method == SyncMethod::median) {
    const double half = 0.5 / target_hz;
    std::vector<double> window;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      window.clear();
      auto it = std::lower_bound(ts.begin(), ts.end(), grid[k] - half - kTimeEps);
      for (; it != ts.end() && *it <= grid[k] + half + kTimeEps; ++it) {
        const double v = values[static_cast<std::size_t>(it - ts.begin())];
        if (std::isfinite(v)) window.push_back(v);
      }
      out[k] = window.empty() ? values[nearest_index(ts, grid[k])] : median_of(window);
    }
    return out;
  }

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (std::isfinite(values[i])) {
      xs.push_back(ts[i]);
      ys.push_back(values[i]);
    }
  }
  if (xs.empty()) {
    return out;
  }
  if (xs.size() == 1) {
    std::fill(out.begin(), out.end(), ys.front());
    return out;
  }
  const NaturalCubicSpline spline(std::move(xs), std::move(ys));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out[k] = spline(grid[k]);
  }
  return out;
}

}  // namespace

std::vector<TrackLog> synchronize(
  const std::vector<TrackLog> & tracks, double target_hz, SyncMethod method)
{
  if (!(target_hz > 0.0) || !std::isfinite(target_hz)) {
    throw Error(ErrorCode::invalid_argument, "target_hz must be positive");
  }
  if (tracks.empty()) {
    throw Error(ErrorCode::invalid_argument, "no tracks to synchronize");
  }
  double start = -std::numeric_limits<double>::infinity();
  double end = std::numeric_limits<double>::infinity();
  for (const auto & track : tracks) {
    if (track.samples.size() < 2) {
      throw Error(ErrorCode::degenerate_track, "track '" + track.track_id + "' has < 2 samples");
    }
    start = std::max(start, track.samples.front().t);
    end = std::min(end, track.samples.back().t);
  }
  if (start > end) {
    throw Error(ErrorCode::no_overlap, "tracks share no common time window");
  }

  std::vector<double> grid;
  for (std::size_t k = 0;; ++k) {
    const double t = start + static_cast<double>(k) / target_hz;
    if (t > end + kTimeEps) break;
    grid.push_back(t);
  }

  std::vector<TrackLog> out;
  out.reserve(tracks.size());
  for (const auto & track : tracks) {
    const auto ts = track.times();
    TrackLog synced;
    synced.track_id = track.track_id;
    synced.rate_hz = target_hz;
    synced.samples.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      synced.samples[k].t = grid[k];
      synced.samples[k].lane_id = track.samples[nearest_index(ts, grid[k])].lane_id;
    }
    for (const std::string_view name : kChannels) {
      auto values = track.values(name);
      if (name == "yaw") {
        values = unwrap(std::move(values));
      }
      const auto resampled = resample_channel(ts, values, grid, target_hz, method);
      for (std::size_t k = 0; k < grid.size(); ++k) {
        double v = resampled[k];
        if (name == "yaw") v = normalize_angle(v);
        if (name == "speed" && v < 0.0) v = 0.0;
        *channel(synced.samples[k], name) = v;
      }
    }
    out.push_back(std::move(synced));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Clock offset

namespace
{

struct FiniteSeries
{
  std::vector<double> ts;
  std::vector<double> vs;

  bool covers(double t) const { return t >= ts.front() - kTimeEps && t <= ts.back() + kTimeEps; }

  double at(double t) const
  {
    auto hi = static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin());
    if (hi == 0) return vs.front();
    if (hi >= ts.size()) return vs.back();
    const std::size_t lo = hi - 1;
    const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
    return vs[lo] + w * (vs[hi] - vs[lo]);
  }
};

FiniteSeries finite_series(const TrackLog & track, std::string_view channel_name)
{
  FiniteSeries series;
  for (const auto & s : track.samples) {
    const double * v = channel(s, channel_name);
    if (v == nullptr) {
      throw Error(ErrorCode::unknown_channel, std::string(channel_name));
    }
    if (std::isfinite(*v)) {
      series.ts.push_back(s.t);
      series.vs.push_back(*v);
    }
  }
  if (series.ts.size() < 2) {
    throw Error(
      ErrorCode::degenerate_track,
      "track '" + track.track_id + "' has < 2 finite samples of " + std::string(channel_name));
  }
  return series;
}

bool is_flat(const std::vector<double> & values)
{
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo <= 1e-12 * std::max(1.0, std::abs(*hi));
}

}  // namespace

double clock_offset(
  const TrackLog & reference, const TrackLog & other, std::string_view channel_name,
  const ClockOffsetOptions & options)
{
  const FiniteSeries ref = finite_series(reference, channel_name);
  const FiniteSeries oth = finite_series(other, channel_name);

  if (is_flat(ref.vs) || is_flat(oth.vs)) {
    warn("clock_offset: channel '" + std::string(channel_name) + "' is flat; returning lag 0");
    return 0.0;
  }

  double step = options.grid_step;
  if (!(step > 0.0)) {
    std::vector<double> gaps;
    for (std::size_t i = 1; i < ref.ts.size(); ++i) gaps.push_back(ref.ts[i] - ref.ts[i - 1]);
    step = median_of(gaps);
  }
  std::vector<double> grid;
  for (std::size_t j = 0;; ++j) {
    const double t = ref.ts.front() + static_cast<double>(j) * step;
    if (t > ref.ts.back() + kTimeEps) break;
    grid.push_back(t);
  }
  std::vector<double> ref_values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) ref_values[j] = ref.at(grid[j]);

  const auto max_steps = static_cast<long>(std::floor(options.max_lag / step + 1e-9));
  const auto min_pairs = std::max<std::size_t>(
    3, static_cast<std::size_t>(std::ceil(options.min_overlap_fraction * grid.size())));

  std::optional<long> best_lag;
  double best_corr = -std::numeric_limits<double>::infinity();
  std::vector<double> a, b;
  for (long i = 0; i <= 2 * max_steps; ++i) {
    // 0, +1, -1, +2, -2, ... so ties keep the smallest |lag|.
    const long lag = (i % 2 == 1) ? (i + 1) / 2 : -(i / 2);
    a.clear();
    b.clear();
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double t = grid[j] + static_cast<double>(lag) * step;
      if (oth.covers(t)) {
        a.push_back(ref_values[j]);
        b.push_back(oth.at(t));
      }
    }
    if (a.size() < min_pairs) continue;
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      ma += a[j];
      mb += b[j];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      sab += (a[j] - ma) * (b[j] - mb);
      saa += (a[j] - ma) * (a[j] - ma);
      sbb += (b[j] - mb) * (b[j] - mb);
    }
    if (saa <= 0.0 || sbb <= 0.0) continue;
    const double corr = sab / std::sqrt(saa * sbb);
    if (corr > best_corr + 1e-12) {
      best_corr = corr;
      best_lag = lag;
    }
  }
  if (!best_lag) {
    throw Error(ErrorCode::no_overlap, "no lag within max_lag gives enough overlap");
  }
  return static_cast<double>(*best_lag) * step;
}

}  // namespace scenlib::ingest
