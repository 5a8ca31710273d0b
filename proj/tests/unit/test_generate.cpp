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

#include "scenlib/generate.hpp"
#include "scenlib/random.hpp"
#include "oracles/oracles.hpp"
#include "support/helpers.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace
{

using namespace scenlib::generate;
using scenlib::ErrorCode;
using scenlib::density::Kernel;
using scenlib::density::kde_fit;
using scenlib::ontology::contains;
using scenlib::ontology::Scenario;
using scenlib::test::continuous_spec;
using scenlib::test::discrete_spec;
using scenlib::test::logical_scenario;

SamplingPlan speed_plan(std::size_t count, std::uint64_t seed)
{
  scenlib::Rng rng(101);
  std::vector<double> samples(200);
  for (auto & v : samples) v = rng.uniform(12.0, 28.0);
  SamplingPlan plan;
  plan.logical = logical_scenario("speed", {continuous_spec("speed", 10.0, 30.0)});
  plan.densities["speed"] = kde_fit(samples, Kernel::gaussian);
  plan.count = count;
  plan.seed = seed;
  return plan;
}

TEST(RandomGenerate, CountZero) { EXPECT_TRUE(random_generate(speed_plan(0, 1)).empty()); }

TEST(RandomGenerate, HundredInsideDomain)
{
  const auto plan = speed_plan(100, 2);
  const auto out = random_generate(plan);
  ASSERT_EQ(out.size(), 100u);
  for (const auto & s : out) {
    const double v = std::get<double>(s.values.at("speed").value);
    EXPECT_GE(v, 10.0);
    EXPECT_LE(v, 30.0);
    EXPECT_TRUE(contains(plan.logical, s));
  }
}

TEST(RandomGenerate, DistributionMatchesKdeSampling)
{
  const auto plan = speed_plan(10000, 3);
  std::vector<double> drawn;
  for (const auto & s : random_generate(plan)) drawn.push_back(std::get<double>(s.values.at("speed").value));
  const auto reference = scenlib::density::kde_sample(plan.densities.at("speed"), 10000, 999);
  EXPECT_LT(scenlib::density::ks_statistic(drawn, reference), 0.03);
}

TEST(RandomGenerate, Errors)
{
  auto plan = speed_plan(5, 4);
  plan.densities.clear();
  EXPECT_SCENLIB_ERROR(random_generate(plan), ErrorCode::domain_density_mismatch);

  plan = speed_plan(5, 4);
  plan.densities["speed"] = kde_fit({100.0}, Kernel::epanechnikov, 1.0);
  plan.clamp = false;
  EXPECT_SCENLIB_ERROR(random_generate(plan), ErrorCode::resample_exhausted);
  plan.clamp = true;
  for (const auto & s : random_generate(plan)) EXPECT_EQ(std::get<double>(s.values.at("speed").value), 30.0);
}

TEST(RandomGenerateProperty, FuzzedPlansContainedAndDeterministic)
{
  scenlib::Rng rng(103);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<scenlib::ontology::ParameterSpec> specs;
    SamplingPlan plan;
    const auto params = 1 + rng.below(4);
    for (std::size_t p = 0; p < params; ++p) {
      const std::string name = "p" + std::to_string(p);
      if (rng.uniform() < 0.7) {
        const double lo = rng.uniform(-50.0, 50.0), hi = lo + rng.uniform(0.5, 40.0);
        specs.push_back(continuous_spec(name, lo, hi));
        std::vector<double> samples(1 + rng.below(30));
        // Densities may sit partly or entirely outside the domain.
        for (auto & v : samples) v = rng.uniform(lo - 20.0, hi + 20.0);
        plan.densities[name] = kde_fit(samples, rng.uniform() < 0.5 ? Kernel::gaussian : Kernel::epanechnikov);
      } else {
        specs.push_back(discrete_spec(name, {"a", "b", "c"}));
        if (rng.uniform() < 0.5) plan.level_weights[name] = {{"a", 0.2}, {"c", 0.8}};
      }
    }
    plan.logical = logical_scenario("fuzz" + std::to_string(trial), specs);
    plan.count = 25;
    plan.seed = rng.next_u64();
    const auto out = random_generate(plan);
    ASSERT_EQ(out.size(), 25u);
    for (const auto & s : out) EXPECT_TRUE(contains(plan.logical, s));
    EXPECT_EQ(out, random_generate(plan));
  }
}

std::vector<std::vector<std::size_t>> level_indices(
  const std::vector<Scenario> & scenarios, const std::vector<scenlib::ontology::ParameterSpec> & specs)
{
  std::vector<std::vector<std::size_t>> out;
  for (const auto & s : scenarios) {
    std::vector<std::size_t> row;
    for (const auto & spec : specs) {
      const auto & levels = std::get<scenlib::ontology::DiscreteDomain>(spec.domain).levels;
      const auto & value = std::get<std::string>(s.values.at(spec.name).value);
      row.push_back(static_cast<std::size_t>(std::find(levels.begin(), levels.end(), value) - levels.begin()));
    }
    out.push_back(row);
  }
  return out;
}

TEST(Combinatorial, FullFactorialWhenBudgetFits)
{
  const std::vector specs = {discrete_spec("light", {"day", "night"}), discrete_spec("road", {"dry", "wet", "snow"})};
  const auto weights = scenlib::analyze::importance_scores({{"light", {"day", "night"}}, {"road", {"dry", "wet"}}});
  const auto out = combinatorial_generate(specs, weights, 6);
  ASSERT_EQ(out.size(), 6u);
  auto idx = level_indices(out, specs);
  std::sort(idx.begin(), idx.end());
  EXPECT_EQ(std::unique(idx.begin(), idx.end()), idx.end());
}

TEST(Combinatorial, BudgetFourMatchesExhaustiveRanking)
{
  const std::vector specs = {discrete_spec("light", {"day", "night"}), discrete_spec("road", {"dry", "wet", "snow"})};
  const std::vector<std::map<std::string, std::vector<std::string>>> observations = {
    {{"light", {"day", "day", "day", "night"}}, {"road", {"dry", "wet", "wet", "snow", "dry", "dry"}}},
    {{"light", {"day", "night"}}, {"road", {"dry", "wet", "snow"}}},
    {{"light", {"night", "night", "night"}}, {"road", {"snow", "wet"}}},
  };
  for (const auto & obs : observations) {
    const auto weights = scenlib::analyze::importance_scores(obs);
    std::vector<double> w;
    std::vector<std::vector<double>> probs;
    std::vector<std::size_t> counts;
    for (const auto & spec : specs) {
      const auto & levels = std::get<scenlib::ontology::DiscreteDomain>(spec.domain).levels;
      counts.push_back(levels.size());
      w.push_back(weights.weight.at(spec.name));
      std::vector<double> p;
      for (const auto & level : levels) {
        const auto & freq = weights.level_probability.at(spec.name);
        p.push_back(freq.count(level) ? freq.at(level) : 0.0);
      }
      probs.push_back(p);
    }
    const auto expected = scenlib::oracle::top_combinations(counts, w, probs, 4);
    const auto out = combinatorial_generate(specs, weights, 4);
    EXPECT_EQ(level_indices(out, specs), expected);
  }
}

TEST(Combinatorial, DedupCeilingAndErrors)
{
  const std::vector specs = {discrete_spec("road", {"dry", "wet", "snow"})};
  const auto weights = scenlib::analyze::importance_scores({{"road", {"dry"}}});
  EXPECT_EQ(combinatorial_generate(specs, weights, 10).size(), 3u);
  EXPECT_SCENLIB_ERROR(combinatorial_generate({}, weights, 10), ErrorCode::no_discrete_specs);
  EXPECT_SCENLIB_ERROR(
    combinatorial_generate({continuous_spec("v", 0.0, 1.0)}, weights, 10), ErrorCode::no_discrete_specs);
}

TEST(MinTests, NaiveExamples)
{
  EXPECT_EQ(min_tests_naive(TestBudget(1.0, 0.5)), 1u);
  EXPECT_EQ(min_tests_naive(TestBudget(100.0, 0.01)), 9900u);
  EXPECT_EQ(min_tests_naive(TestBudget(100.0, 0.99)), 2u);
}

TEST(MinTests, ImportanceExamples)
{
  const TestBudget b(100.0, 0.01);
  EXPECT_EQ(min_tests_is(0.01, b), 9900u);
  EXPECT_EQ(min_tests_is(0.01 * 0.01, b), 0u);
  EXPECT_EQ(min_tests_is(2.0 * 0.01 * 0.01, b), 100u);
  EXPECT_SCENLIB_ERROR(min_tests_is(0.5 * 0.01 * 0.01, b), ErrorCode::moment_below_square);
}

TEST(MinTests, BudgetValidation)
{
  EXPECT_SCENLIB_ERROR(TestBudget(0.0, 0.1), ErrorCode::invalid_argument);
  EXPECT_SCENLIB_ERROR(TestBudget(1.0, 0.0), ErrorCode::invalid_argument);
  EXPECT_SCENLIB_ERROR(TestBudget(1.0, 1.0), ErrorCode::invalid_argument);
}

TEST(MinTests, ZConvention)
{
  EXPECT_NEAR(z_from_confidence(), 384.1, 0.05);
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-9);
  EXPECT_NEAR(normal_quantile(1.0 - scenlib::oracle::normal_upper_tail(3.0)), 3.0, 1e-9);
}

TEST(MinTestsProperty, ImportanceReducesToNaive)
{
  scenlib::Rng rng(107);
  for (int i = 0; i < 1000; ++i) {
    const double gamma = std::exp(rng.uniform(std::log(1e-4), std::log(0.9)));
    const double z = rng.uniform(1.0, 1000.0);
    const TestBudget b(z, gamma);
    ASSERT_EQ(min_tests_is(gamma, b), min_tests_naive(b)) << "gamma=" << gamma << " z=" << z;
  }
}

TEST(CeilCount, SnapsNearIntegers)
{
  EXPECT_EQ(ceil_count(198.00000000000003), 198u);
  EXPECT_EQ(ceil_count(198.001), 199u);
  EXPECT_EQ(ceil_count(0.0), 0u);
}

scenlib::generate::DangerIndicator tail_indicator()
{
  return [](const ParameterPoint & p) { return p.at("x") > 3.0 ? 1 : 0; };
}

SamplingPlan normal_plan(std::uint64_t seed)
{
  SamplingPlan plan;
  plan.logical = logical_scenario("toy", {continuous_spec("x", -50.0, 50.0, "1")});
  plan.densities["x"] = kde_fit({0.0}, Kernel::gaussian, 1.0);
  plan.proposal = ProductDensity{{"x", kde_fit({3.0}, Kernel::gaussian, 1.0)}};
  plan.seed = seed;
  return plan;
}

TEST(IsEstimate, NaiveOnKdeOfNormalSamples)
{
  scenlib::Rng rng(109);
  std::vector<double> samples(100000);
  for (auto & v : samples) v = rng.normal();
  SamplingPlan plan = normal_plan(5);
  plan.densities["x"] = kde_fit(samples, Kernel::gaussian);
  plan.proposal.reset();
  const auto est = is_estimate(plan, tail_indicator(), 100000, EstimateMethod::naive);
  const double oracle = scenlib::oracle::normal_upper_tail(3.0);
  EXPECT_NEAR(oracle, 1.3499e-3, 1e-7);
  EXPECT_LT(std::abs(est.gamma_hat - oracle), 3.0 * est.std_error);
  EXPECT_DOUBLE_EQ(est.second_moment, est.gamma_hat);
}

TEST(IsEstimate, ShiftedProposalBeatsNaive)
{
  const auto plan = normal_plan(6);
  const double oracle = scenlib::oracle::normal_upper_tail(3.0);
  const auto is = is_estimate(plan, tail_indicator(), 10000, EstimateMethod::importance);
  const auto naive = is_estimate(plan, tail_indicator(), 10000, EstimateMethod::naive);
  EXPECT_LT(std::abs(is.gamma_hat - oracle), 3.0 * is.std_error);
  EXPECT_GE(naive.std_error, 5.0 * is.std_error);
  EXPECT_GT(is.weight_min, 0.0);
  EXPECT_TRUE(std::isfinite(is.weight_max));
}

TEST(IsEstimate, EmptyEventAndErrors)
{
  auto plan = normal_plan(7);
  const auto never = [](const ParameterPoint &) { return 0; };
  for (const auto method : {EstimateMethod::naive, EstimateMethod::importance}) {
    const auto est = is_estimate(plan, never, 500, method);
    EXPECT_EQ(est.gamma_hat, 0.0);
    EXPECT_EQ(est.std_error, 0.0);
  }
  EXPECT_SCENLIB_ERROR(is_estimate(plan, never, 0, EstimateMethod::naive), ErrorCode::invalid_argument);
  plan.proposal.reset();
  EXPECT_SCENLIB_ERROR(is_estimate(plan, never, 10, EstimateMethod::importance), ErrorCode::invalid_argument);
  plan.proposal = ProductDensity{{"y", kde_fit({3.0}, Kernel::gaussian, 1.0)}};
  EXPECT_SCENLIB_ERROR(is_estimate(plan, never, 10, EstimateMethod::importance), ErrorCode::domain_density_mismatch);
}

TEST(IsEstimate, SeededDeterminism)
{
  const auto plan = normal_plan(8);
  const auto a = is_estimate(plan, tail_indicator(), 2000, EstimateMethod::importance);
  const auto b = is_estimate(plan, tail_indicator(), 2000, EstimateMethod::importance);
  EXPECT_EQ(a.gamma_hat, b.gamma_hat);
  EXPECT_EQ(a.second_moment, b.second_moment);
}

TEST(IsEstimateProperty, UnbiasedOverRepeatedCampaigns)
{
  const std::size_t campaigns = 200;
  const double oracle = scenlib::oracle::normal_upper_tail(3.0);
  double sum = 0.0, se_sum = 0.0;
  for (std::size_t r = 0; r < campaigns; ++r) {
    const auto est = is_estimate(normal_plan(5000 + r), tail_indicator(), 10000, EstimateMethod::importance);
    sum += est.gamma_hat;
    se_sum += est.std_error;
  }
  const double mean = sum / campaigns;
  const double se = se_sum / campaigns;
  EXPECT_LT(std::abs(mean - oracle), 4.0 * se / std::sqrt(static_cast<double>(campaigns)));
}

TEST(AccelerationFactor, IdenticalProposalGivesOne)
{
  auto plan = normal_plan(9);
  plan.proposal = plan.densities;
  const auto indicator = [](const ParameterPoint & p) { return p.at("x") > 1.5 ? 1 : 0; };
  const auto naive = is_estimate(plan, indicator, 5000, EstimateMethod::naive);
  const auto is = is_estimate(plan, indicator, 5000, EstimateMethod::importance);
  EXPECT_EQ(acceleration_factor(naive, is, TestBudget(100.0, 0.5)), 1.0);
}

TEST(AccelerationFactor, AlgebraicInversionGivesFifty)
{
  const double gamma = 0.01;
  DangerEstimate naive, is;
  naive.gamma_hat = is.gamma_hat = gamma;
  naive.n_used = is.n_used = 10000;
  naive.second_moment = gamma;
  naive.method = EstimateMethod::naive;
  is.method = EstimateMethod::importance;
  is.second_moment = gamma * gamma * (1.0 + (1.0 - gamma) / gamma / 50.0);
  EXPECT_DOUBLE_EQ(acceleration_factor(naive, is, TestBudget(100.0, 0.5)), 50.0);
}

TEST(AccelerationFactor, NoHitsIsAnError)
{
  DangerEstimate naive, is;
  naive.n_used = is.n_used = 10;
  EXPECT_SCENLIB_ERROR(acceleration_factor(naive, is, TestBudget(100.0, 0.5)), ErrorCode::invalid_argument);
}

TEST(Proposal, ShiftReachesTargetHitRate)
{
  const ProductDensity f{{"x", kde_fit({0.0}, Kernel::gaussian, 1.0)}};
  ProposalOptions options;
  options.seed = 11;
  const auto proposal = build_shifted_proposal(f, tail_indicator(), options);
  ASSERT_EQ(proposal.count("x"), 1u);
  EXPECT_GT(proposal.at("x").samples[0], 2.0);
  SamplingPlan plan = normal_plan(12);
  plan.proposal = proposal;
  const auto est = is_estimate(plan, tail_indicator(), 5000, EstimateMethod::importance);
  EXPECT_GE(static_cast<double>(est.hits) / 5000.0, 0.18);
  const auto never = [](const ParameterPoint &) { return 0; };
  EXPECT_SCENLIB_ERROR(build_shifted_proposal(f, never, options), ErrorCode::invalid_argument);
}

}  // namespace
