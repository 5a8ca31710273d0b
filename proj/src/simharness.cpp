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

#include "scenlib/simharness.hpp"

#include "scenlib/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace scenlib::simharness
{

namespace
{

void check_inputs(const CutInScenario & s, const AebPolicy & p, double dt, double horizon)
{
  if (!(dt > 0.0) || dt > 0.1) {
    throw Error(ErrorCode::invalid_timestep, "dt must lie in (0, 0.1], got " + std::to_string(dt));
  }
  if (!(horizon > 0.0) || horizon > 120.0) {
    throw Error(ErrorCode::invalid_argument, "horizon must lie in (0, 120] s");
  }
  if (!(s.ego_speed_0 >= 0.0) || !(s.cutin_speed >= 0.0) || !(s.cutin_gap_0 >= 0.0) ||
      !(s.cutin_decel >= 0.0) || !(s.road_friction >= 0.0 && s.road_friction <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "cut-in scenario outside its physical range");
  }
  if (!(p.ttc_trigger >= 0.0) || !(p.max_decel > 0.0) || !(p.actuation_delay >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "AEB policy outside its valid range");
  }
}

/// Advances (x, v) by `dt` of constant acceleration a, stopping at v = 0.
void advance(double & x, double & v, double a, double dt)
{
  if (dt <= 0.0) return;
  if (a < 0.0 && v + a * dt <= 0.0) {
    x += v * v / (-2.0 * a);
    v = 0.0;
    return;
  }
  x += v * dt + 0.5 * a * dt * dt;
  v += a * dt;
}

struct State
{
  double ego_x, ego_v, lead_x, lead_v;
  double gap() const { return lead_x - ego_x; }
  double closing() const { return ego_v - lead_v; }
};

/// Smallest tau in [0, span] with pred(tau) true, given pred(span) is true
/// and pred is monotone on the interval.
template <typename Pred>
double first_true(double span, Pred && pred)
{
  double lo = 0.0, hi = span;
  if (pred(lo)) return lo;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

template <typename Observer>
SimOutcome run(
  const CutInScenario & s, const AebPolicy & p, double dt, double horizon, Observer && observe,
  std::optional<double> & trigger_time)
{
  check_inputs(s, p, dt, horizon);
  const double brake = std::min(p.max_decel, s.road_friction * kGravity);
  const double lead_decel = s.cutin_decel;
  const auto last_step = static_cast<long>(std::floor(horizon / dt + 1e-9));
  constexpr double never = std::numeric_limits<double>::infinity();

  const auto triggered = [&](const State & st) {
    const double closing = st.closing();
    return p.ttc_trigger > 0.0 && closing > 0.0 && std::max(st.gap(), 0.0) < p.ttc_trigger * closing;
  };
  const auto brake_onset = [&]() { return trigger_time ? *trigger_time + p.actuation_delay : never; };

  SimOutcome outcome;
  const auto emit = [&](double t, const State & st) {
    const double gap = st.gap();
    const double closing = st.closing();
    std::optional<double> ttc;
    if (closing > 0.0) ttc = std::max(gap, 0.0) / closing;
    const double ego_a = t >= brake_onset() && st.ego_v > 0.0 ? -brake : 0.0;
    const double lead_a = st.lead_v > 0.0 ? -lead_decel : 0.0;
    observe(SimStep{t, st.ego_x, st.ego_v, ego_a, st.lead_x, st.lead_v, lead_a, gap, ttc});
    outcome.min_gap = std::min(outcome.min_gap, gap);
    outcome.end_time = t;
  };

  State state{0.0, s.ego_speed_0, s.cutin_gap_0, s.cutin_speed};
  outcome.min_gap = state.gap();
  if (triggered(state)) trigger_time = 0.0;
  emit(0.0, state);
  if (state.gap() <= 0.0) {
    outcome.collision = true;
    return outcome;
  }

  for (long k = 0; k < last_step; ++k) {
    if (state.ego_v <= 0.0 && state.lead_v <= 0.0) break;
    const double t = static_cast<double>(k) * dt;
    const State start = state;
    // State at t + tau under the current braking schedule.
    const auto at = [&](double tau) {
      State st = start;
      const double onset = brake_onset() - t;
      if (onset >= tau) {
        advance(st.ego_x, st.ego_v, 0.0, tau);
      } else {
        const double cruise = std::max(onset, 0.0);
        advance(st.ego_x, st.ego_v, 0.0, cruise);
        advance(st.ego_x, st.ego_v, -brake, tau - cruise);
      }
      advance(st.lead_x, st.lead_v, -lead_decel, tau);
      return st;
    };

    State end = at(dt);
    if (!trigger_time && triggered(end)) {
      trigger_time = t + first_true(dt, [&](double tau) { return triggered(at(tau)); });
      end = at(dt);
    }

    std::optional<double> contact;
    if (start.closing() > 0.0 && end.closing() <= 0.0) {
      const double turn = first_true(dt, [&](double tau) { return at(tau).closing() <= 0.0; });
      const State lowest = at(turn);
      outcome.min_gap = std::min(outcome.min_gap, lowest.gap());
      if (lowest.gap() <= 0.0) contact = first_true(turn, [&](double tau) { return at(tau).gap() <= 0.0; });
    }
    if (!contact && end.gap() <= 0.0) {
      contact = first_true(dt, [&](double tau) { return at(tau).gap() <= 0.0; });
    }
    if (contact) {
      emit(t + *contact, at(*contact));
      outcome.collision = true;
      return outcome;
    }
    state = end;
    emit(static_cast<double>(k + 1) * dt, state);
  }
  return outcome;
}

}  // namespace

SimTrace simulate(const CutInScenario & scenario, const AebPolicy & policy, double dt, double horizon)
{
  SimTrace trace;
  trace.dt = dt;
  const auto outcome = run(
    scenario, policy, dt, horizon, [&trace](const SimStep & step) { trace.steps.push_back(step); },
    trace.trigger_time);
  trace.collision = outcome.collision;
  trace.min_gap = outcome.min_gap;
  return trace;
}

SimOutcome simulate_outcome(
  const CutInScenario & scenario, const AebPolicy & policy, double dt, double horizon)
{
  std::optional<double> trigger_time;
  return run(scenario, policy, dt, horizon, [](const SimStep &) {}, trigger_time);
}

int collision_indicator(const SimTrace & trace) { return trace.collision ? 1 : 0; }

KpiReport evaluate_kpis(const SimTrace & trace)
{
  if (trace.steps.empty()) {
    throw Error(ErrorCode::empty_trace, "no simulation steps");
  }
  KpiReport report;
  report.collision = collision_indicator(trace);
  const double v0 = trace.steps.front().ego_v;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto & step = trace.steps[i];
    if (step.ttc && (!report.min_ttc || *step.ttc < *report.min_ttc)) {
      report.min_ttc = step.ttc;
    }
    report.max_abs_accel = std::max(report.max_abs_accel, std::abs(step.ego_a));
    if (i > 0) {
      const double jerk = std::abs(step.ego_a - trace.steps[i - 1].ego_a) / trace.dt;
      report.max_jerk = std::max(report.max_jerk, jerk);
    }
    report.speed_loss += (v0 - step.ego_v) * trace.dt;
  }
  return report;
}

std::string write_trace_csv(const SimTrace & trace)
{
  std::string out = "t,ego_x,ego_v,ego_a,lead_x,lead_v,gap,ttc\n";
  char buffer[64];
  const auto put = [&](double v) {
    const auto r = std::to_chars(buffer, buffer + sizeof(buffer), v);
    out.append(buffer, r.ptr);
  };
  for (const auto & s : trace.steps) {
    for (const double v : {s.t, s.ego_x, s.ego_v, s.ego_a, s.lead_x, s.lead_v, s.gap}) {
      put(v);
      out += ',';
    }
    if (s.ttc) put(*s.ttc);
    out += '\n';
  }
  return out;
}

CutInScenario cutin_from_parameters(const std::map<std::string, double> & point)
{
  const auto get = [&](const char * name) -> double {
    const auto it = point.find(name);
    if (it == point.end()) {
      throw Error(ErrorCode::missing_parameter, name);
    }
    return it->second;
  };
  const auto get_or = [&](const char * name, double fallback) {
    const auto it = point.find(name);
    return it == point.end() ? fallback : it->second;
  };
  CutInScenario s;
  s.ego_speed_0 = std::max(0.0, get("ego_speed_0"));
  s.cutin_speed = std::max(0.0, get("cutin_speed"));
  s.cutin_gap_0 = std::max(0.0, get("cutin_gap_0"));
  s.cutin_decel = std::max(0.0, get_or("cutin_decel", 0.0));
  s.road_friction = std::clamp(get_or("road_friction", 1.0), 0.0, 1.0);
  return s;
}

}  // namespace scenlib::simharness
