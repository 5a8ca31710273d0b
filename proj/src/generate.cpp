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

#include "scenlib/error.hpp"
#include "scenlib/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>

namespace scenlib::generate
{

using ontology::ContinuousDomain;
using ontology::DiscreteDomain;
using ontology::ParameterSpec;
using ontology::ParamValue;
using ontology::Scenario;

namespace
{

std::string indexed_id(const std::string & prefix, const char * tag, std::size_t index)
{
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%s%06zu", tag, index);
  return prefix + buffer;
}

void check_plan_densities(const SamplingPlan & plan)
{
  if (plan.logical.kind != ontology::ScenarioKind::logical) {
    throw Error(ErrorCode::kind_mismatch, "sampling plan needs a logical scenario");
  }
  for (const auto & [name, spec] : plan.logical.specs) {
    if (spec.is_continuous() && plan.densities.count(name) == 0) {
      throw Error(ErrorCode::domain_density_mismatch, "no density for continuous parameter '" + name + "'");
    }
    if (!spec.is_continuous() && plan.densities.count(name) != 0) {
      throw Error(ErrorCode::domain_density_mismatch, "density given for discrete parameter '" + name + "'");
    }
  }
  for (const auto & [name, model] : plan.densities) {
    if (plan.logical.specs.count(name) == 0) {
      throw Error(ErrorCode::domain_density_mismatch, "density for undeclared parameter '" + name + "'");
    }
  }
}

std::string pick_level(
  const ParameterSpec & spec, const std::map<std::string, double> * weights, Rng & rng)
{
  const auto & levels = std::get<DiscreteDomain>(spec.domain).levels;
  if (weights == nullptr) {
    return levels[rng.below(levels.size())];
  }
  double total = 0.0;
  for (const auto & level : levels) {
    const auto it = weights->find(level);
    if (it != weights->end()) total += it->second;
  }
  if (!(total > 0.0)) {
    return levels[rng.below(levels.size())];
  }
  const double target = rng.uniform() * total;
  double cumulative = 0.0;
  for (const auto & level : levels) {
    const auto it = weights->find(level);
    if (it == weights->end()) continue;
    cumulative += it->second;
    if (target < cumulative) return level;
  }
  return levels.back();
}

}  // namespace

std::vector<Scenario> random_generate(const SamplingPlan & plan)
{
  check_plan_densities(plan);
  if (plan.proposal) {
    throw Error(ErrorCode::invalid_argument, "random generation draws from f; remove the proposal");
  }
  for (const auto & [name, weights] : plan.level_weights) {
    const auto spec = plan.logical.specs.find(name);
    if (spec == plan.logical.specs.end() || spec->second.is_continuous()) {
      throw Error(ErrorCode::domain_density_mismatch, "level weights for non-discrete parameter '" + name + "'");
    }
    for (const auto & [level, w] : weights) {
      if (!ontology::in_domain(spec->second.domain, level) || !(w >= 0.0)) {
        throw Error(ErrorCode::domain_density_mismatch, "bad level weight '" + level + "' for '" + name + "'");
      }
    }
  }

  constexpr int kMaxTries = 1000;
  std::vector<Scenario> out;
  out.reserve(plan.count);
  for (std::size_t i = 0; i < plan.count; ++i) {
    Rng rng(derive_seed(plan.seed, i));
    std::map<std::string, ParamValue> assignment;
    for (const auto & [name, spec] : plan.logical.specs) {
      if (const auto * interval = std::get_if<ContinuousDomain>(&spec.domain)) {
        const auto & model = plan.densities.at(name);
        double value = 0.0;
        bool inside = false;
        for (int attempt = 0; attempt < kMaxTries && !inside; ++attempt) {
          value = density::kde_draw(model, rng);
          inside = value >= interval->lo && value <= interval->hi;
        }
        if (!inside) {
          if (!plan.clamp) {
            throw Error(ErrorCode::resample_exhausted, "parameter '" + name + "'");
          }
          value = std::clamp(value, interval->lo, interval->hi);
        }
        assignment.emplace(name, value);
      } else {
        const auto weights = plan.level_weights.find(name);
        assignment.emplace(
          name, pick_level(spec, weights == plan.level_weights.end() ? nullptr : &weights->second, rng));
      }
    }
    auto scenario = ontology::concretize(plan.logical, assignment, indexed_id(plan.logical.id, ".r", i));
    scenario.provenance["generator"] = "random";
    scenario.provenance["seed"] = std::to_string(plan.seed);
    out.push_back(std::move(scenario));
  }
  return out;
}

double combination_score(
  const std::vector<ParameterSpec> & specs, const analyze::ImportanceScores & weights,
  const std::vector<std::size_t> & level_indices)
{
  double score = 0.0;
  for (std::size_t e = 0; e < specs.size(); ++e) {
    const auto & levels = std::get<DiscreteDomain>(specs[e].domain).levels;
    const auto & level = levels.at(level_indices.at(e));
    const auto w = weights.weight.find(specs[e].name);
    if (w == weights.weight.end()) continue;
    double p = 1.0 / static_cast<double>(levels.size());
    if (const auto probs = weights.level_probability.find(specs[e].name);
        probs != weights.level_probability.end()) {
      const auto found = probs->second.find(level);
      p = found == probs->second.end() ? 0.0 : found->second;
    }
    if (p > 0.0 && p < 1.0) {
      score += w->second * (-p * std::log2(p));
    }
  }
  return score;
}

std::vector<Scenario> combinatorial_generate(
  const std::vector<ParameterSpec> & specs, const analyze::ImportanceScores & weights,
  std::size_t budget, const std::string & id_prefix)
{
  if (specs.empty()) {
    throw Error(ErrorCode::no_discrete_specs, "no parameters given");
  }
  for (const auto & spec : specs) {
    if (spec.is_continuous()) {
      throw Error(ErrorCode::no_discrete_specs, "parameter '" + spec.name + "' is continuous; discretize it first");
    }
    if (std::get<DiscreteDomain>(spec.domain).levels.empty()) {
      throw Error(ErrorCode::invalid_argument, "parameter '" + spec.name + "' has no levels");
    }
  }
  if (budget == 0) {
    throw Error(ErrorCode::invalid_argument, "budget must be at least 1");
  }

  constexpr std::size_t kMaxCombinations = 10'000'000;
  std::size_t total = 1;
  for (const auto & spec : specs) {
    total *= std::get<DiscreteDomain>(spec.domain).levels.size();
    if (total > kMaxCombinations) {
      throw Error(ErrorCode::too_many_combinations, "full factorial exceeds 1e7 combinations");
    }
  }

  // Lexicographic enumeration, last parameter fastest.
  std::vector<std::vector<std::size_t>> combos;
  combos.reserve(total);
  std::vector<std::size_t> current(specs.size(), 0);
  for (std::size_t c = 0; c < total; ++c) {
    combos.push_back(current);
    for (std::size_t e = specs.size(); e-- > 0;) {
      if (++current[e] < std::get<DiscreteDomain>(specs[e].domain).levels.size()) break;
      current[e] = 0;
    }
  }

  std::vector<double> scores(combos.size(), 0.0);
  if (total > budget) {
    for (std::size_t c = 0; c < combos.size(); ++c) {
      scores[c] = combination_score(specs, weights, combos[c]);
    }
    std::vector<std::size_t> order(combos.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return scores[a] > scores[b];
    });
    order.resize(budget);
    std::vector<std::vector<std::size_t>> chosen;
    std::vector<double> chosen_scores;
    for (const auto idx : order) {
      chosen.push_back(std::move(combos[idx]));
      chosen_scores.push_back(scores[idx]);
    }
    combos = std::move(chosen);
    scores = std::move(chosen_scores);
  } else {
    for (std::size_t c = 0; c < combos.size(); ++c) {
      scores[c] = combination_score(specs, weights, combos[c]);
    }
  }

  std::vector<Scenario> out;
  out.reserve(combos.size());
  for (std::size_t c = 0; c < combos.size(); ++c) {
    Scenario scenario;
    scenario.id = indexed_id(id_prefix, "-", c);
    scenario.kind = ontology::ScenarioKind::concrete;
    for (std::size_t e = 0; e < specs.size(); ++e) {
      const auto & levels = std::get<DiscreteDomain>(specs[e].domain).levels;
      scenario.values.emplace(
        specs[e].name, ontology::ConcreteParam{specs[e].unit, levels[combos[c][e]], specs[e].category});
    }
    scenario.provenance["generator"] = "combinatorial";
    char score[32];
    std::snprintf(score, sizeof(score), "%.17g", scores[c]);
    scenario.provenance["score"] = score;
    out.push_back(std::move(scenario));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Test budgets

TestBudget::TestBudget(double z, double gamma) : z_(z), gamma_(gamma)
{
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw Error(ErrorCode::invalid_argument, "z must be positive");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "gamma must lie in (0, 1)");
  }
}

double normal_quantile(double p)
{
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "normal quantile needs p in (0, 1)");
  }
  // Acklam's rational approximation, polished with one Halley step.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double low = 0.02425;
  double x = 0.0;
  if (p < low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

double z_from_confidence(double alpha, double beta)
{
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "need alpha in (0, 1) and beta > 0");
  }
  const double q = normal_quantile(1.0 - alpha / 2.0);
  return (q / beta) * (q / beta);
}

std::uint64_t ceil_count(double value)
{
  if (!std::isfinite(value) || value > 1.8e19) {
    throw Error(ErrorCode::invalid_argument, "test count is not representable");
  }
  if (value <= 0.0) return 0;
  const double nearest = std::round(value);
  if (std::abs(value - nearest) <= 1e-9 * std::max(1.0, value)) {
    return static_cast<std::uint64_t>(nearest);
  }
  return static_cast<std::uint64_t>(std::ceil(value));
}

std::uint64_t min_tests_naive(const TestBudget & budget)
{
  return ceil_count(budget.z() * (1.0 - budget.gamma()) / budget.gamma());
}

std::uint64_t min_tests_is(double second_moment, const TestBudget & budget)
{
  const double gamma_sq = budget.gamma() * budget.gamma();
  if (!(second_moment >= gamma_sq * (1.0 - 1e-12))) {
    throw Error(
      ErrorCode::moment_below_square,
      "second moment " + std::to_string(second_moment) + " < gamma^2 = " + std::to_string(gamma_sq));
  }
  return ceil_count(budget.z() * (second_moment / gamma_sq - 1.0));
}

// ---------------------------------------------------------------------------
// Danger estimation

std::string_view to_string(EstimateMethod method)
{
  return method == EstimateMethod::naive ? "naive" : "importance";
}

double product_log_density(const ProductDensity & density, const ParameterPoint & point)
{
  double total = 0.0;
  for (const auto & [name, model] : density) {
    const auto value = point.find(name);
    if (value == point.end()) {
      throw Error(ErrorCode::missing_parameter, name);
    }
    total += density::kde_log_eval(model, value->second);
  }
  return total;
}

ParameterPoint draw_point(const ProductDensity & density, Rng & rng)
{
  ParameterPoint point;
  for (const auto & [name, model] : density) {
    point.emplace(name, density::kde_draw(model, rng));
  }
  return point;
}

DangerEstimate is_estimate(
  const SamplingPlan & plan, const DangerIndicator & indicator, std::size_t n,
  EstimateMethod method)
{
  if (n == 0) {
    throw Error(ErrorCode::invalid_argument, "need at least one draw");
  }
  if (plan.densities.empty()) {
    throw Error(ErrorCode::domain_density_mismatch, "plan has no densities");
  }
  const bool importance = method == EstimateMethod::importance;
  if (importance) {
    if (!plan.proposal) {
      throw Error(ErrorCode::invalid_argument, "importance sampling needs a proposal");
    }
    if (plan.proposal->size() != plan.densities.size() ||
        !std::equal(plan.proposal->begin(), plan.proposal->end(), plan.densities.begin(),
                    [](const auto & a, const auto & b) { return a.first == b.first; })) {
      throw Error(ErrorCode::domain_density_mismatch, "proposal and f cover different parameters");
    }
  }
  const ProductDensity & source = importance ? *plan.proposal : plan.densities;

  DangerEstimate est;
  est.method = method;
  est.n_used = n;
  est.weight_min = std::numeric_limits<double>::infinity();
  est.weight_max = 0.0;
  double mean = 0.0, m2 = 0.0, sum = 0.0, second = 0.0, weight_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    Rng rng(derive_seed(plan.seed, j));
    const ParameterPoint x = draw_point(source, rng);
    const int hit = indicator(x) != 0 ? 1 : 0;
    double weight = 1.0;
    if (importance) {
      const double log_f = product_log_density(plan.densities, x);
      const double log_proposal = product_log_density(*plan.proposal, x);
      if (std::isinf(log_proposal) && log_proposal < 0.0) {
        if (!(std::isinf(log_f) && log_f < 0.0)) {
          throw Error(ErrorCode::zero_proposal_density, "f*(x) = 0 where f(x) > 0");
        }
        weight = 0.0;
      } else {
        weight = std::exp(log_f - log_proposal);
      }
    }
    est.weight_min = std::min(est.weight_min, weight);
    est.weight_max = std::max(est.weight_max, weight);
    weight_sum += weight;
    est.hits += static_cast<std::size_t>(hit);
    const double summand = hit * weight;
    sum += summand;
    second += hit * weight * weight;
    const double delta = summand - mean;
    mean += delta / static_cast<double>(j + 1);
    m2 += delta * (summand - mean);
  }
  const auto count = static_cast<double>(n);
  est.summand_variance = n > 1 ? m2 / (count - 1.0) : 0.0;
  est.std_error = std::sqrt(est.summand_variance / count);
  est.gamma_hat = std::clamp(sum / count, 0.0, 1.0);
  est.second_moment = second / count;
  est.weight_mean = weight_sum / count;
  return est;
}

double acceleration_factor(
  const DangerEstimate & naive, const DangerEstimate & importance, const TestBudget & budget)
{
  const double total = static_cast<double>(naive.n_used + importance.n_used);
  if (!(total > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "estimates carry no draws");
  }
  const double pooled = (naive.gamma_hat * static_cast<double>(naive.n_used) +
                         importance.gamma_hat * static_cast<double>(importance.n_used)) /
                        total;
  if (!(pooled > 0.0 && pooled < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "pooled danger probability must lie in (0, 1)");
  }
  const TestBudget pooled_budget(budget.z(), pooled);
  const auto naive_tests = static_cast<double>(min_tests_naive(pooled_budget));
  std::uint64_t is_tests = 0;
  try {
    is_tests = min_tests_is(importance.second_moment, pooled_budget);
  } catch (const Error & e) {
    if (e.code() != ErrorCode::moment_below_square) throw;
  }
  return naive_tests / static_cast<double>(std::max<std::uint64_t>(1, is_tests));
}

// ---------------------------------------------------------------------------
// Proposal construction

namespace
{

double kde_spread(const density::KdeModel & model)
{
  const auto n = static_cast<double>(model.samples.size());
  const double mean = std::accumulate(model.samples.begin(), model.samples.end(), 0.0) / n;
  double ss = 0.0;
  for (const double v : model.samples) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / n + model.h * model.h);
}

ProductDensity shifted(
  const ProductDensity & density, const std::map<std::string, double> & offset, double scale)
{
  ProductDensity out = density;
  for (auto & [name, model] : out) {
    const auto it = offset.find(name);
    if (it == offset.end()) continue;
    for (double & v : model.samples) v += scale * it->second;
  }
  return out;
}

double hit_rate(
  const ProductDensity & density, const DangerIndicator & indicator, std::size_t draws,
  std::uint64_t seed)
{
  std::size_t hits = 0;
  for (std::size_t j = 0; j < draws; ++j) {
    Rng rng(derive_seed(seed, j));
    hits += indicator(draw_point(density, rng)) != 0 ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(draws);
}

}  // namespace

ProductDensity build_shifted_proposal(
  const ProductDensity & density, const DangerIndicator & indicator, const ProposalOptions & options)
{
  if (density.empty() || options.pilot_draws == 0) {
    throw Error(ErrorCode::invalid_argument, "need densities and pilot draws");
  }
  const std::uint64_t pilot_seed = derive_seed(options.seed, "proposal-pilot");

  std::map<std::string, double> direction = options.direction;
  if (direction.empty()) {
    std::map<std::string, double> all_mean, hit_mean;
    std::size_t hits = 0, draws = 0;
    const std::size_t limit = std::max(options.pilot_draws, options.max_pilot_draws);
    for (std::size_t j = 0; j < limit && (j < options.pilot_draws || hits < options.min_pilot_hits); ++j) {
      ++draws;
      Rng rng(derive_seed(pilot_seed, j));
      const auto x = draw_point(density, rng);
      const bool hit = indicator(x) != 0;
      for (const auto & [name, v] : x) {
        all_mean[name] += v;
        if (hit) hit_mean[name] += v;
      }
      hits += hit ? 1 : 0;
    }
    if (hits == 0) {
      throw Error(
        ErrorCode::invalid_argument, "no pilot draw reached the danger region; supply a direction");
    }
    for (const auto & [name, model] : density) {
      const double shift = hit_mean[name] / static_cast<double>(hits) -
                           all_mean[name] / static_cast<double>(draws);
      direction[name] = shift / kde_spread(model);
    }
  }
  double norm = 0.0;
  for (const auto & [name, d] : direction) {
    if (density.count(name) == 0) {
      throw Error(ErrorCode::domain_density_mismatch, "direction names unknown parameter '" + name + "'");
    }
    norm += d * d;
  }
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "shift direction is zero");
  }
  std::map<std::string, double> offset;
  for (const auto & [name, d] : direction) {
    offset[name] = d / norm * kde_spread(density.at(name));
  }

  const auto rate = [&](double scale) {
    return hit_rate(shifted(density, offset, scale), indicator, options.pilot_draws, pilot_seed);
  };
  if (rate(0.0) >= options.target_hit_rate) {
    return density;
  }
  if (rate(options.max_shift) < options.target_hit_rate) {
    throw Error(ErrorCode::invalid_argument, "target hit rate unreachable within max_shift");
  }
  double lo = 0.0, hi = options.max_shift;
  for (int step = 0; step < options.bisection_steps; ++step) {
    const double mid = 0.5 * (lo + hi);
    (rate(mid) >= options.target_hit_rate ? hi : lo) = mid;
  }
  return shifted(density, offset, hi);
}

}  // namespace scenlib::generate
