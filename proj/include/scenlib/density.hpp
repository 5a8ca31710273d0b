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

#ifndef SCENLIB__DENSITY_HPP_
#define SCENLIB__DENSITY_HPP_

#include "scenlib/random.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace scenlib::density
{

enum class Kernel { gaussian, epanechnikov };

std::string_view to_string(Kernel kernel);
std::optional<Kernel> kernel_from_string(std::string_view text);

/// Unit-integral kernel K(u).
double kernel_value(Kernel kernel, double u);

/// Normal-reference bandwidth: 1.06 * min(sd, IQR / 1.34) * n^(-1/5).
struct SilvermanRule
{
};

using Bandwidth = std::variant<double, SilvermanRule>;

/// Univariate kernel density estimate f_h(x) = (1/n) sum_i K_h(x - x_i),
/// with K_h(u) = K(u / h) / h.
struct KdeModel
{
  std::vector<double> samples;
  Kernel kernel = Kernel::gaussian;
  double h = 1.0;

  bool operator==(const KdeModel &) const = default;
};

/// Fits a model. Rule-based bandwidths that collapse to zero (identical
/// samples, or n == 1) fall back to 1e-6 * max(1, |mean|) with a warning.
/// Throws InvalidArgument for empty/non-finite samples or h <= 0.
KdeModel kde_fit(std::vector<double> samples, Kernel kernel, Bandwidth bandwidth = SilvermanRule{});

/// Bandwidth the normal-reference rule picks for `samples` (0 when degenerate).
double silverman_bandwidth(std::span<const double> samples);

double kde_eval(const KdeModel & model, double x);
/// log f_h(x), finite far into the Gaussian tails; -inf outside compact support.
double kde_log_eval(const KdeModel & model, double x);
/// Closed-form cumulative distribution of the estimate.
double kde_cdf(const KdeModel & model, double x);

/// Smoothed bootstrap: pick x_i uniformly and add h * kernel noise.
std::vector<double> kde_sample(const KdeModel & model, std::size_t count, std::uint64_t seed);

/// One smoothed-bootstrap draw from an external stream.
double kde_draw(const KdeModel & model, Rng & rng);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|. Throws EmptyInput.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// One-sample KS statistic of `samples` against a continuous CDF.
double ks_statistic(std::span<const double> samples, const std::function<double(double)> & cdf);

/// Sample quantile with linear interpolation (type 7).
double quantile(std::vector<double> values, double p);

}  // namespace scenlib::density

#endif  // SCENLIB__DENSITY_HPP_
