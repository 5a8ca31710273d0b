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

#include "scenlib/density.hpp"

#include "scenlib/diagnostics.hpp"
#include "scenlib/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace scenlib::density
{

std::string_view to_string(Kernel kernel)
{
  return kernel == Kernel::gaussian ? "gaussian" : "epanechnikov";
}

std::optional<Kernel> kernel_from_string(std::string_view text)
{
  if (text == "gaussian") return Kernel::gaussian;
  if (text == "epanechnikov") return Kernel::epanechnikov;
  return std::nullopt;
}

namespace
{

constexpr double kInvSqrt2Pi = 0.3989422804014327;

double kernel_cdf(Kernel kernel, double u)
{
  if (kernel == Kernel::gaussian) {
    return 0.5 * std::erfc(-u / std::numbers::sqrt2);
  }
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return 0.5 + 0.75 * u - 0.25 * u * u * u;
}

}  // namespace

double kernel_value(Kernel kernel, double u)
{
  if (kernel == Kernel::gaussian) {
    return kInvSqrt2Pi * std::exp(-0.5 * u * u);
  }
  return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
}

double quantile(std::vector<double> values, double p)
{
  if (values.empty()) {
    throw Error(ErrorCode::empty_input, "quantile of an empty sample");
  }
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double silverman_bandwidth(std::span<const double> samples)
{
  const auto n = static_cast<double>(samples.size());
  if (samples.size() < 2) return 0.0;
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (const double v : samples) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const std::vector<double> copy(samples.begin(), samples.end());
  const double iqr_scale = (quantile(copy, 0.75) - quantile(copy, 0.25)) / 1.34;
  double spread = sd;
  if (iqr_scale > 0.0 && iqr_scale < spread) spread = iqr_scale;
  return 1.06 * spread * std::pow(n, -0.2);
}

KdeModel kde_fit(std::vector<double> samples, Kernel kernel, Bandwidth bandwidth)
{
  if (samples.empty()) {
    throw Error(ErrorCode::invalid_argument, "kde needs at least one sample");
  }
  for (const double v : samples) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::invalid_argument, "kde samples must be finite");
    }
  }
  KdeModel model;
  model.kernel = kernel;
  if (const auto * explicit_h = std::get_if<double>(&bandwidth)) {
    if (!(*explicit_h > 0.0) || !std::isfinite(*explicit_h)) {
      throw Error(ErrorCode::invalid_argument, "bandwidth must be positive");
    }
    model.h = *explicit_h;
  } else {
    model.h = silverman_bandwidth(samples);
    if (!(model.h > 0.0)) {
      const double mean =
        std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
      model.h = 1e-6 * std::max(1.0, std::abs(mean));
      warn("kde_fit: degenerate sample, bandwidth set to h_min = " + std::to_string(model.h));
    }
  }
  model.samples = std::move(samples);
  return model;
}

double kde_eval(const KdeModel & model, double x)
{
  double sum = 0.0;
  for (const double xi : model.samples) {
    sum += kernel_value(model.kernel, (x - xi) / model.h);
  }
  return sum / (static_cast<double>(model.samples.size()) * model.h);
}

double kde_log_eval(const KdeModel & model, double x)
{
  if (model.kernel == Kernel::epanechnikov) {
    return std::log(kde_eval(model, x));
  }
  double top = -std::numeric_limits<double>::infinity();
  for (const double xi : model.samples) {
    const double u = (x - xi) / model.h;
    top = std::max(top, -0.5 * u * u);
  }
  double sum = 0.0;
  for (const double xi : model.samples) {
    const double u = (x - xi) / model.h;
    sum += std::exp(-0.5 * u * u - top);
  }
  return top + std::log(sum) + std::log(kInvSqrt2Pi) -
         std::log(static_cast<double>(model.samples.size()) * model.h);
}

double kde_cdf(const KdeModel & model, double x)
{
  double sum = 0.0;
  for (const double xi : model.samples) {
    sum += kernel_cdf(model.kernel, (x - xi) / model.h);
  }
  return sum / static_cast<double>(model.samples.size());
}

double kde_draw(const KdeModel & model, Rng & rng)
{
  const double center = model.samples[rng.below(model.samples.size())];
  double noise = 0.0;
  if (model.kernel == Kernel::gaussian) {
    noise = rng.normal();
  } else {
    // Devroye's median-of-three construction for the Epanechnikov kernel.
    const double u1 = rng.uniform(-1.0, 1.0);
    const double u2 = rng.uniform(-1.0, 1.0);
    const double u3 = rng.uniform(-1.0, 1.0);
    noise = (std::abs(u3) >= std::abs(u2) && std::abs(u3) >= std::abs(u1)) ? u2 : u3;
  }
  return center + model.h * noise;
}

std::vector<double> kde_sample(const KdeModel & model, std::size_t count, std::uint64_t seed)
{
  Rng rng(seed);
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(kde_draw(model, rng));
  }
  return out;
}

double ks_statistic(std::span<const double> a, std::span<const double> b)
{
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::empty_input, "KS statistic needs two non-empty samples");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const auto na = static_cast<double>(sa.size());
  const auto nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() || j < sb.size()) {
    double v = 0.0;
    if (i == sa.size()) v = sb[j];
    else if (j == sb.size()) v = sa[i];
    else v = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == v) ++i;
    while (j < sb.size() && sb[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)> & cdf)
{
  if (samples.empty()) {
    throw Error(ErrorCode::empty_input, "KS statistic needs a non-empty sample");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

}  // namespace scenlib::density
