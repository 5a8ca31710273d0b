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

#ifndef SCENLIB__SIMHARNESS_HPP_
#define SCENLIB__SIMHARNESS_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scenlib::simharness
{

inline constexpr double kGravity = 9.81;

/// Longitudinal cut-in: at t = 0 the other vehicle is already in the ego lane
/// `cutin_gap_0` metres ahead and then decelerates at `cutin_decel` to a stop.
struct CutInScenario
{
  double ego_speed_0 = 0.0;
  double cutin_speed = 0.0;
  double cutin_gap_0 = 0.0;
  double cutin_decel = 0.0;
  double road_friction = 1.0;
};

/// Brakes (latched) once the instantaneous TTC drops below `ttc_trigger`;
/// ttc_trigger = 0 disables the function.
struct AebPolicy
{
  double ttc_trigger = 1.5;
  double max_decel = 8.0;
  double actuation_delay = 0.2;
};

struct SimStep
{
  double t = 0.0;
  double ego_x = 0.0;
  double ego_v = 0.0;
  double ego_a = 0.0;
  double lead_x = 0.0;
  double lead_v = 0.0;
  double lead_a = 0.0;
  double gap = 0.0;
  std::optional<double> ttc;
};

struct SimTrace
{
  double dt = 0.01;
  std::vector<SimStep> steps;
  bool collision = false;
  double min_gap = 0.0;
  std::optional<double> trigger_time;
};

/// Summary of a run without the per-step record.
struct SimOutcome
{
  bool collision = false;
  double min_gap = 0.0;
  double end_time = 0.0;
};

/// Piecewise constant-acceleration motion sampled every `dt`. The AEB trigger
/// instant, braking onset, stops and first contact are located inside a step
/// rather than snapped to the grid, and min_gap includes the exact minimum
/// between samples. The last step of a colliding trace is the contact
/// instant. Ends at the horizon, on collision (gap <= 0) or once both
/// vehicles stand still.
/// Throws InvalidTimestep (dt outside (0, 0.1]) and InvalidArgument.
SimTrace simulate(
  const CutInScenario & scenario, const AebPolicy & policy, double dt = 0.01,
  double horizon = 20.0);

/// Same dynamics as simulate, returning only the outcome.
SimOutcome simulate_outcome(
  const CutInScenario & scenario, const AebPolicy & policy, double dt = 0.01,
  double horizon = 20.0);

/// 1 iff the trace ended in a collision.
int collision_indicator(const SimTrace & trace);

struct KpiReport
{
  int collision = 0;
  std::optional<double> min_ttc;
  double max_abs_accel = 0.0;  // comfort
  double max_jerk = 0.0;       // naturalness, backward differences of ego_a
  double speed_loss = 0.0;     // economy proxy: integral of (v0 - v) dt
};

/// Throws EmptyTrace.
KpiReport evaluate_kpis(const SimTrace & trace);

/// `t,ego_x,ego_v,ego_a,lead_x,lead_v,gap,ttc` (empty ttc = not closing).
std::string write_trace_csv(const SimTrace & trace);

/// Maps a parameter point (ego_speed_0, cutin_speed, cutin_gap_0, cutin_decel,
/// road_friction) onto a scenario, clamping into the physical range.
/// Missing cutin_decel / road_friction default to 0 / 1.
CutInScenario cutin_from_parameters(const std::map<std::string, double> & point);

}  // namespace scenlib::simharness

#endif  // SCENLIB__SIMHARNESS_HPP_
