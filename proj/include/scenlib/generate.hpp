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

#ifndef SCENLIB__GENERATE_HPP_
#define SCENLIB__GENERATE_HPP_

#include "scenlib/analyze.hpp"
#include "scenlib/density.hpp"
#include "scenlib/ontology.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace scenlib::generate
{

/// Continuous parameter values of one draw, keyed by parameter name.
using ParameterPoint = std::map<std::string, double>;
using ProductDensity = std::map<std::string, density::KdeModel>;

/// Danger indicator I(x) in {0, 1}.
using DangerIndicator = std::function<int(const ParameterPoint &)>;

struct SamplingPlan
{
  ontology::Scenario logical;
  /// f: one KDE per continuous parameter (independent product).
  ProductDensity densities;
  /// Level weights for discrete parameters; uniform over the declared levels
  /// when absent.
  std::map<std::string, std::map<std::string, double>> level_weights;
  /// f*: importance-sampling proposal over the same parameters.
  std::optional<ProductDensity> proposal;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  /// Clamp into the domain after 1000 rejected draws (else ResampleExhausted).
  bool clamp = true;
};

/// Monte Carlo generation of `plan.count` concrete scenarios from the fitted
/// densities, rejection-sampled into the logical domain. Draw i uses a stream
/// derived from (seed, i). Throws DomainDensityMismatch, ResampleExhausted.
std::vector<ontology::Scenario> random_generate(const SamplingPlan & plan);

/// Full factorial when it fits in `budget`; otherwise the `budget` best
/// combinations by sum_e weight(e) * (-p log2 p) of the chosen level, ties
/// broken lexicographically on level indices. Throws NoDiscreteSpecs,
/// InvalidArgument, TooManyCombinations.
std::vector<ontology::Scenario> combinatorial_generate(
  const std::vector<ontology::ParameterSpec> & specs, const analyze::ImportanceScores & weights,
  std::size_t budget, const std::string & id_prefix = "comb");

/// Score used by combinatorial_generate for one combination (level indices
/// aligned with `specs`).
double combination_score(
  const std::vector<ontology::ParameterSpec> & specs, const analyze::ImportanceScores & weights,
  const std::vector<std::size_t> & level_indices);

/// z and the danger probability gamma. Throws InvalidArgument when
/// z <= 0 or gamma outside (0, 1).
class TestBudget
{
public:
  TestBudget(double z, double gamma);

  double z() const { return z_; }
  double gamma() const { return gamma_; }

private:
  double z_;
  double gamma_;
};

/// z = (Phi^-1(1 - alpha/2) / beta)^2: relative half-width beta at confidence 1 - alpha.
double z_from_confidence(double alpha = 0.05, double beta = 0.1);

/// Inverse standard normal CDF.
double normal_quantile(double p);

/// Ceiling that treats values within 1e-9 (relative) of an integer as that integer.
std::uint64_t ceil_count(double value);

/// ceil(z (1 - gamma) / gamma).
std::uint64_t min_tests_naive(const TestBudget & budget);

/// ceil(z (E_f*[I^2 L^2] / gamma^2 - 1)). Throws MomentBelowSquare when the
/// second moment is below gamma^2.
std::uint64_t min_tests_is(double second_moment, const TestBudget & budget);

enum class EstimateMethod { naive, importance };

std::string_view to_string(EstimateMethod method);

struct DangerEstimate
{
  EstimateMethod method = EstimateMethod::naive;
  double gamma_hat = 0.0;
  double std_error = 0.0;
  /// mean of I * L^2 (equals gamma_hat for naive sampling).
  double second_moment = 0.0;
  /// Sample variance of the summands I * L.
  double summand_variance = 0.0;
  std::size_t n_used = 0;
  std::size_t hits = 0;
  double weight_min = 0.0;
  double weight_max = 0.0;
  double weight_mean = 0.0;
};

/// Product density log f(x) = sum_p log f_p(x_p).
double product_log_density(const ProductDensity & density, const ParameterPoint & point);

ParameterPoint draw_point(const ProductDensity & density, Rng & rng);

/// gamma_hat = mean of I(x) (naive, x ~ f) or of I(x) f(x)/f*(x) (importance,
/// x ~ f*). Draw j uses a stream derived from (plan.seed, j). Throws
/// InvalidArgument (n == 0, importance without a proposal) and
/// ZeroProposalDensity.
DangerEstimate is_estimate(
  const SamplingPlan & plan, const DangerIndicator & indicator, std::size_t n,
  EstimateMethod method);

/// min_tests_naive / max(1, min_tests_is) at the pooled gamma estimate.
/// Throws InvalidArgument when no dangerous event was observed at all.
/// Only budget.z() is used; gamma comes from the estimates.
double acceleration_factor(
  const DangerEstimate & naive, const DangerEstimate & importance, const TestBudget & budget);

struct ProposalOptions
{
  /// Shift direction per parameter in units of that parameter's spread. When
  /// empty it is estimated from pilot draws that hit the danger region.
  std::map<std::string, double> direction;
  double target_hit_rate = 0.2;
  std::size_t pilot_draws = 2000;
  /// The direction pilot keeps drawing until it has seen this many hits or
  /// max_pilot_draws draws.
  std::size_t min_pilot_hits = 100;
  std::size_t max_pilot_draws = 50000;
  double max_shift = 10.0;
  int bisection_steps = 24;
  std::uint64_t seed = 0;
};

/// Builds f* as the fitted densities with their samples shifted along a
/// direction; the scale of the shift is the smallest (by bisection) whose
/// pilot hit rate reaches target_hit_rate. Throws InvalidArgument when the
/// danger region cannot be reached.
ProductDensity build_shifted_proposal(
  const ProductDensity & density, const DangerIndicator & indicator,
  const ProposalOptions & options = {});

}  // namespace scenlib::generate

#endif  // SCENLIB__GENERATE_HPP_
