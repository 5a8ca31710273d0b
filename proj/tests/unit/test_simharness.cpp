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
#include "oracles/oracles.hpp"
#include "support/helpers.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace
{

using namespace scenlib::simharness;
using scenlib::ErrorCode;

const AebPolicy kDisabled{0.0, 8.0, 0.2};

TEST(Simulate, EqualSpeedsNoCollision)
{
  const auto trace = simulate({20.0, 20.0, 15.0, 0.0, 1.0}, AebPolicy{}, 0.01, 10.0);
  EXPECT_FALSE(trace.collision);
  EXPECT_NEAR(trace.min_gap, 15.0, 1e-9);
  EXPECT_FALSE(trace.trigger_time);
}

TEST(Simulate, ConstantClosingCollisionTime)
{
  const double dt = 0.01;
  const auto trace = simulate({25.0, 10.0, 8.0, 0.0, 1.0}, kDisabled, dt, 10.0);
  ASSERT_TRUE(trace.collision);
  EXPECT_NEAR(trace.steps.back().t, 8.0 / 15.0, dt);
  EXPECT_LE(trace.min_gap, 0.0);
}

TEST(Simulate, Errors)
{
  EXPECT_SCENLIB_ERROR(simulate({20.0, 20.0, 15.0}, AebPolicy{}, 0.0), ErrorCode::invalid_timestep);
  EXPECT_SCENLIB_ERROR(simulate({20.0, 20.0, 15.0}, AebPolicy{}, 0.2), ErrorCode::invalid_timestep);
  EXPECT_SCENLIB_ERROR(simulate({20.0, 20.0, 15.0}, AebPolicy{}, 0.01, 121.0), ErrorCode::invalid_argument);
  EXPECT_SCENLIB_ERROR(simulate({-1.0, 20.0, 15.0}, AebPolicy{}), ErrorCode::invalid_argument);
}

TEST(CollisionIndicator, Examples)
{
  SimTrace trace;
  trace.min_gap = 0.5;
  trace.collision = false;
  EXPECT_EQ(collision_indicator(trace), 0);
  const auto hit = simulate({20.0, 20.0, 0.0, 0.0, 1.0}, AebPolicy{}, 0.01, 1.0);
  EXPECT_EQ(hit.min_gap, 0.0);
  EXPECT_EQ(collision_indicator(hit), 1);
  const CutInScenario s{30.0, 12.0, 25.0, 2.0, 0.8};
  for (int i = 0; i < 3; ++i) {
    const auto a = simulate(s, AebPolicy{}), b = simulate(s, AebPolicy{});
    EXPECT_EQ(collision_indicator(a), collision_indicator(b));
    EXPECT_EQ(a.min_gap, b.min_gap);
    EXPECT_EQ(write_trace_csv(a), write_trace_csv(b));
  }
}

TEST(Kpis, ConstantSpeeds)
{
  const auto kpi = evaluate_kpis(simulate({20.0, 20.0, 15.0}, AebPolicy{}, 0.01, 5.0));
  EXPECT_EQ(kpi.max_abs_accel, 0.0);
  EXPECT_EQ(kpi.max_jerk, 0.0);
  EXPECT_EQ(kpi.speed_loss, 0.0);
  EXPECT_FALSE(kpi.min_ttc);
  EXPECT_EQ(kpi.collision, 0);
}

TEST(Kpis, BrakingRampJerk)
{
  SimTrace trace;
  trace.dt = 0.01;
  double v = 20.0;
  for (int k = 0; k <= 200; ++k) {
    SimStep step;
    step.t = k * trace.dt;
    step.ego_a = (step.t >= 0.5 - 1e-9 && step.t < 1.5 - 1e-9) ? -5.0 : 0.0;
    step.ego_v = v;
    v += step.ego_a * trace.dt;
    trace.steps.push_back(step);
  }
  const auto kpi = evaluate_kpis(trace);
  EXPECT_DOUBLE_EQ(kpi.max_jerk, 5.0 / 0.01);
  EXPECT_EQ(kpi.max_abs_accel, 5.0);
  EXPECT_GT(kpi.speed_loss, 0.0);
  EXPECT_SCENLIB_ERROR(evaluate_kpis(SimTrace{}), ErrorCode::empty_trace);
}

TEST(Kpis, CollisionTrace)
{
  const auto trace = simulate({25.0, 10.0, 8.0, 0.0, 1.0}, AebPolicy{1.0, 6.0, 0.3});
  ASSERT_TRUE(trace.collision);
  const auto kpi = evaluate_kpis(trace);
  EXPECT_EQ(kpi.collision, 1);
  ASSERT_TRUE(kpi.min_ttc);
  ASSERT_TRUE(trace.steps.back().ttc);
  EXPECT_LE(*kpi.min_ttc, *trace.steps.back().ttc);
}

TEST(SimulateProperty, EnergySanity)
{
  for (double ego = 5.0; ego <= 45.0; ego += 8.0) {
    for (double decel = 0.0; decel <= 6.0; decel += 2.0) {
      const auto trace = simulate({ego, 0.5 * ego, 20.0, decel, 0.7}, AebPolicy{2.0, 9.0, 0.1});
      for (const auto & step : trace.steps) {
        EXPECT_GE(step.ego_v, 0.0);
        EXPECT_LE(step.ego_v, ego);
        EXPECT_GE(step.lead_v, 0.0);
      }
    }
  }
}

TEST(SimulateProperty, MonotoneInGapForSteadyLead)
{
  for (double ego = 10.0; ego <= 40.0; ego += 2.5) {
    for (double lead = 0.0; lead <= ego; lead += 2.5) {
      for (const double friction : {0.3, 0.6, 1.0}) {
        bool safe_before = false;
        for (double gap = 0.5; gap <= 100.0; gap += 0.5) {
          const bool collision = simulate_outcome({ego, lead, gap, 0.0, friction}, AebPolicy{}).collision;
          if (safe_before) EXPECT_FALSE(collision) << ego << " " << lead << " " << gap << " " << friction;
          safe_before = safe_before || !collision;
        }
      }
    }
  }
}

// With a braking lead a larger initial gap delays the TTC trigger while the
// lead keeps slowing, so a safe gap can be followed by a colliding one. The
// closed-form kinematics show the same verdicts at every gap.
TEST(SimulateProperty, BrakingLeadGapSweepMatchesClosedForm)
{
  const AebPolicy policy{};
  std::size_t reversals = 0;
  for (double ego = 10.0; ego <= 40.0; ego += 5.0) {
    for (double lead = 0.0; lead <= ego; lead += 5.0) {
      for (const double decel : {3.0, 6.0}) {
        bool safe_before = false;
        for (double gap = 1.0; gap <= 100.0; gap += 1.0) {
          const auto sim = simulate_outcome({ego, lead, gap, decel, 1.0}, policy, 0.01, 20.0);
          const scenlib::oracle::Kinematics k{ego, lead, gap, decel, 1.0, policy.ttc_trigger, policy.max_decel,
                                              policy.actuation_delay};
          const auto exact = scenlib::oracle::cutin_oracle(k, 20.0);
          if (std::abs(exact.min_gap) > 1e-6) {
            EXPECT_EQ(sim.collision, exact.collision) << ego << " " << lead << " " << gap << " " << decel;
          }
          if (safe_before && sim.collision) ++reversals;
          safe_before = safe_before || !sim.collision;
        }
      }
    }
  }
  EXPECT_GT(reversals, 0u);
}

TEST(SimulateProperty, MaxDecelNeverReducesMinGap)
{
  for (double ego = 10.0; ego <= 40.0; ego += 5.0) {
    for (double gap = 5.0; gap <= 60.0; gap += 11.0) {
      for (double decel = 0.0; decel <= 6.0; decel += 3.0) {
        double previous = -std::numeric_limits<double>::infinity();
        for (double max_decel = 2.0; max_decel <= 12.0; max_decel += 0.5) {
          const auto out = simulate_outcome({ego, 0.4 * ego, gap, decel, 1.0}, AebPolicy{2.0, max_decel, 0.2});
          EXPECT_GE(out.min_gap, previous - 1e-9) << ego << " " << gap << " " << decel << " " << max_decel;
          previous = out.min_gap;
        }
      }
    }
  }
}

TEST(SimulateProperty, DtHalvingChangesMinGapLittle)
{
  const std::vector<CutInScenario> reference = {
    {25.0, 10.0, 40.0, 0.0, 1.0}, {30.0, 20.0, 25.0, 2.0, 1.0}, {20.0, 0.0, 60.0, 0.0, 0.8},
    {35.0, 30.0, 15.0, 4.0, 1.0}, {15.0, 5.0, 20.0, 1.0, 0.5}, {28.0, 28.0, 10.0, 3.0, 1.0},
  };
  const AebPolicy policy{2.0, 8.0, 0.2};
  for (const auto & s : reference) {
    const auto coarse = simulate_outcome(s, policy, 0.01, 30.0);
    const auto fine = simulate_outcome(s, policy, 0.005, 30.0);
    EXPECT_LT(std::abs(coarse.min_gap - fine.min_gap), 0.1);
  }
}

TEST(SimulateOracle, AgreesWithClosedFormOffBoundary)
{
  const double dt = 0.01, horizon = 30.0;
  const AebPolicy policy{1.5, 6.0, 0.3};
  std::size_t compared = 0, exempt = 0;
  for (double ego = 5.0; ego <= 40.0; ego += 5.0) {
    for (double lead = 0.0; lead <= 30.0; lead += 7.5) {
      for (double gap = 2.0; gap <= 62.0; gap += 15.0) {
        for (double decel = 0.0; decel <= 6.0; decel += 3.0) {
          const CutInScenario s{ego, lead, gap, decel, 0.5};
          const scenlib::oracle::Kinematics k{ego, lead, gap, decel, 0.5, policy.ttc_trigger, policy.max_decel,
                                              policy.actuation_delay};
          const auto early = scenlib::oracle::cutin_oracle(k, horizon, 0.0);
          const auto late = scenlib::oracle::cutin_oracle(k, horizon, 2.0 * dt);
          if (early.collision != late.collision) {
            ++exempt;
            continue;
          }
          ++compared;
          EXPECT_EQ(simulate_outcome(s, policy, dt, horizon).collision, early.collision)
            << ego << " " << lead << " " << gap << " " << decel << " oracle min gap " << early.min_gap;
        }
      }
    }
  }
  EXPECT_GT(compared, 9 * (compared + exempt) / 10);
}

TEST(CutinFromParameters, DefaultsAndClamping)
{
  const auto s = cutin_from_parameters({{"ego_speed_0", 20.0}, {"cutin_speed", -3.0}, {"cutin_gap_0", 12.0}});
  EXPECT_EQ(s.ego_speed_0, 20.0);
  EXPECT_EQ(s.cutin_speed, 0.0);
  EXPECT_EQ(s.cutin_decel, 0.0);
  EXPECT_EQ(s.road_friction, 1.0);
}

}  // namespace
