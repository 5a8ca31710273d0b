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

#include "scenlib/analyze.hpp"

#include "scenlib/error.hpp"
#include "scenlib/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace scenlib::analyze
{

FeatureMatrix::FeatureMatrix(std::vector<std::string> columns, std::vector<std::vector<double>> rows)
: columns_(std::move(columns)), rows_(rows.size())
{
  data_.reserve(rows_ * columns_.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != columns_.size()) {
      throw Error(
        ErrorCode::invalid_argument, "row " + std::to_string(r) + " has " +
                                       std::to_string(rows[r].size()) + " values, expected " +
                                       std::to_string(columns_.size()));
    }
    for (const double v : rows[r]) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::invalid_argument, "non-finite value in row " + std::to_string(r));
      }
      data_.push_back(v);
    }
  }
}

std::vector<double> FeatureMatrix::column(std::size_t c) const
{
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

namespace
{

double squared_distance(std::span<const double> a, std::span<const double> b)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

/// Assigns each row to its nearest centroid (lowest index on ties); returns inertia.
double assign(
  const FeatureMatrix & x, const std::vector<std::vector<double>> & centroids,
  std::vector<std::size_t> & labels)
{
  double inertia = 0.0;
  labels.resize(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_c = 0;
    for (std::size_t c = 0; c < centroids.size(); ++c) {
      const double d = squared_distance(x.row(r), centroids[c]);
      if (d < best) {
        best = d;
        best_c = c;
      }
    }
    labels[r] = best_c;
    inertia += best;
  }
  return inertia;
}

std::vector<std::vector<double>> kmeans_plus_plus(
  const FeatureMatrix & x, std::size_t k, Rng & rng)
{
  std::vector<std::vector<double>> centroids;
  const auto first = rng.below(x.rows());
  centroids.emplace_back(x.row(first).begin(), x.row(first).end());
  std::vector<double> nearest(x.rows(), std::numeric_limits<double>::infinity());
  while (centroids.size() < k) {
    double total = 0.0;
    for (std::size_t r = 0; r < x.rows(); ++r) {
      nearest[r] = std::min(nearest[r], squared_distance(x.row(r), centroids.back()));
      total += nearest[r];
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double cumulative = 0.0;
      pick = x.rows() - 1;
      for (std::size_t r = 0; r < x.rows(); ++r) {
        cumulative += nearest[r];
        if (cumulative > target && nearest[r] > 0.0) {
          pick = r;
          break;
        }
      }
    } else {
      pick = rng.below(x.rows());
    }
    centroids.emplace_back(x.row(pick).begin(), x.row(pick).end());
  }
  return centroids;
}

ClusterModel lloyd(
  const FeatureMatrix & x, std::size_t k, std::uint64_t seed, const KMeansOptions & options)
{
  Rng rng(seed);
  ClusterModel model;
  model.kind = ClusterKind::kmeans;
  model.k = k;
  model.means = kmeans_plus_plus(x, k, rng);
  model.objective_trace.push_back(assign(x, model.means, model.labels));

  const std::size_t d = x.cols();
  for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
    std::vector<std::vector<double>> sums(k, std::vector<double>(d, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t r = 0; r < x.rows(); ++r) {
      const auto row = x.row(r);
      auto & sum = sums[model.labels[r]];
      for (std::size_t c = 0; c < d; ++c) sum[c] += row[c];
      ++counts[model.labels[r]];
    }
    double shift = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (counts[j] == 0) continue;  // empty cluster keeps its centroid
      for (std::size_t c = 0; c < d; ++c) sums[j][c] /= static_cast<double>(counts[j]);
      shift = std::max(shift, std::sqrt(squared_distance(sums[j], model.means[j])));
      model.means[j] = std::move(sums[j]);
    }
    model.objective_trace.push_back(assign(x, model.means, model.labels));
    if (shift < options.tol) {
      model.converged = true;
      break;
    }
  }
  return model;
}

}  // namespace

ClusterModel kmeans(
  const FeatureMatrix & x, std::size_t k, std::uint64_t seed, const KMeansOptions & options)
{
  if (k == 0) {
    throw Error(ErrorCode::invalid_argument, "k must be at least 1");
  }
  if (k > x.rows()) {
    throw Error(
      ErrorCode::k_too_large,
      "k = " + std::to_string(k) + " exceeds " + std::to_string(x.rows()) + " rows");
  }
  const std::size_t restarts = std::max<std::size_t>(1, options.restarts);
  ClusterModel best;
  for (std::size_t r = 0; r < restarts; ++r) {
    auto model = lloyd(x, k, derive_seed(seed, r), options);
    if (r == 0 || model.objective_trace.back() < best.objective_trace.back()) {
      best = std::move(model);
    }
  }
  return best;
}

namespace
{

struct EStep
{
  double log_likelihood = 0.0;
  std::vector<std::vector<double>> responsibilities;
};

EStep expectation(
  const FeatureMatrix & x, const std::vector<double> & weights,
  const std::vector<std::vector<double>> & means, const std::vector<std::vector<double>> & variances)
{
  const std::size_t k = weights.size();
  const std::size_t d = x.cols();
  std::vector<double> log_norm(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    log_norm[j] = std::log(weights[j]);
    for (std::size_t c = 0; c < d; ++c) {
      log_norm[j] -= 0.5 * std::log(2.0 * std::numbers::pi * variances[j][c]);
    }
  }
  EStep out;
  out.responsibilities.assign(x.rows(), std::vector<double>(k, 0.0));
  std::vector<double> log_p(k);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto row = x.row(r);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
      double lp = log_norm[j];
      for (std::size_t c = 0; c < d; ++c) {
        const double diff = row[c] - means[j][c];
        lp -= 0.5 * diff * diff / variances[j][c];
      }
      log_p[j] = lp;
      top = std::max(top, lp);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) sum += std::exp(log_p[j] - top);
    const double log_total = top + std::log(sum);
    out.log_likelihood += log_total;
    for (std::size_t j = 0; j < k; ++j) {
      out.responsibilities[r][j] = std::exp(log_p[j] - log_total);
    }
  }
  return out;
}

std::vector<double> column_variance(const FeatureMatrix & x)
{
  std::vector<double> out(x.cols(), 0.0);
  for (std::size_t c = 0; c < x.cols(); ++c) {
    const auto col = x.column(c);
    const double mean = std::accumulate(col.begin(), col.end(), 0.0) / static_cast<double>(col.size());
    double ss = 0.0;
    for (const double v : col) ss += (v - mean) * (v - mean);
    out[c] = ss / static_cast<double>(col.size());
  }
  return out;
}

}  // namespace

ClusterModel gmm_fit(
  const FeatureMatrix & x, std::size_t k, std::uint64_t seed, const GmmOptions & options)
{
  if (k == 0) {
    throw Error(ErrorCode::invalid_argument, "k must be at least 1");
  }
  if (x.rows() <= k) {
    throw Error(ErrorCode::invalid_argument, "gmm needs more rows than components");
  }
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  const auto global_var = column_variance(x);
  std::vector<double> floor(d);
  for (std::size_t c = 0; c < d; ++c) {
    floor[c] = std::max(options.variance_floor * global_var[c], 1e-300);
  }

  const ClusterModel init = kmeans(x, k, seed);
  ClusterModel model;
  model.kind = ClusterKind::gmm;
  model.k = k;
  model.means = init.means;
  model.weights.assign(k, 0.0);
  model.variances.assign(k, std::vector<double>(d, 0.0));
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t r = 0; r < n; ++r) {
    ++counts[init.labels[r]];
    for (std::size_t c = 0; c < d; ++c) {
      const double diff = x(r, c) - init.means[init.labels[r]][c];
      model.variances[init.labels[r]][c] += diff * diff;
    }
  }
  for (std::size_t j = 0; j < k; ++j) {
    model.weights[j] = static_cast<double>(counts[j]) / static_cast<double>(n);
    for (std::size_t c = 0; c < d; ++c) {
      const double v = counts[j] >= 2 ? model.variances[j][c] / static_cast<double>(counts[j])
                                      : global_var[c];
      model.variances[j][c] = std::max(v, floor[c]);
    }
    if (counts[j] == 0) {
      throw Error(ErrorCode::singular_component, "component " + std::to_string(j) + " starts empty");
    }
  }

  for (std::size_t iter = 0;; ++iter) {
    EStep e = expectation(x, model.weights, model.means, model.variances);
    const bool small_step = !model.objective_trace.empty() &&
                            std::abs(e.log_likelihood - model.objective_trace.back()) <
                              options.tol * std::max(1.0, std::abs(e.log_likelihood));
    model.objective_trace.push_back(e.log_likelihood);
    model.responsibilities = std::move(e.responsibilities);
    if (small_step) {
      model.converged = true;
      break;
    }
    if (iter >= options.max_iter) break;

    for (std::size_t j = 0; j < k; ++j) {
      double mass = 0.0;
      std::vector<double> mean(d, 0.0);
      for (std::size_t r = 0; r < n; ++r) {
        const double w = model.responsibilities[r][j];
        mass += w;
        for (std::size_t c = 0; c < d; ++c) mean[c] += w * x(r, c);
      }
      if (!(mass > 1e-300)) {
        throw Error(ErrorCode::singular_component, "component " + std::to_string(j) + " lost all mass");
      }
      for (std::size_t c = 0; c < d; ++c) mean[c] /= mass;
      std::vector<double> var(d, 0.0);
      for (std::size_t r = 0; r < n; ++r) {
        const double w = model.responsibilities[r][j];
        for (std::size_t c = 0; c < d; ++c) {
          const double diff = x(r, c) - mean[c];
          var[c] += w * diff * diff;
        }
      }
      for (std::size_t c = 0; c < d; ++c) {
        var[c] = std::max(var[c] / mass, floor[c]);
        if (!std::isfinite(var[c])) {
          throw Error(ErrorCode::singular_component, "non-finite variance in component " + std::to_string(j));
        }
      }
      model.weights[j] = mass / static_cast<double>(n);
      model.means[j] = std::move(mean);
      model.variances[j] = std::move(var);
    }
  }

  model.labels.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto & resp = model.responsibilities[r];
    model.labels[r] =
      static_cast<std::size_t>(std::max_element(resp.begin(), resp.end()) - resp.begin());
  }
  return model;
}

double gmm_log_likelihood(const ClusterModel & model, const FeatureMatrix & x)
{
  if (model.kind != ClusterKind::gmm) {
    throw Error(ErrorCode::invalid_argument, "log-likelihood needs a gmm model");
  }
  return expectation(x, model.weights, model.means, model.variances).log_likelihood;
}

double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b)
{
  if (a.size() != b.size()) {
    throw Error(ErrorCode::length_mismatch, "labelings differ in length");
  }
  const std::size_t n = a.size();
  if (n < 2) return 1.0;
  std::map<std::pair<std::size_t, std::size_t>, double> table;
  std::map<std::size_t, double> rows, cols;
  for (std::size_t i = 0; i < n; ++i) {
    table[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  const auto pairs = [](double m) { return m * (m - 1.0) / 2.0; };
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto & [cell, count] : table) index += pairs(count);
  for (const auto & [label, count] : rows) sum_rows += pairs(count);
  for (const auto & [label, count] : cols) sum_cols += pairs(count);
  const double expected = sum_rows * sum_cols / pairs(static_cast<double>(n));
  const double maximum = 0.5 * (sum_rows + sum_cols);
  if (maximum == expected) return 1.0;
  return (index - expected) / (maximum - expected);
}

std::map<std::string, double> flatten_scores(const std::map<std::string, double> & raw)
{
  std::map<std::string, double> out;
  double total = 0.0;
  for (const auto & [name, score] : raw) {
    if (!(score >= 0.0) || !std::isfinite(score)) {
      throw Error(ErrorCode::invalid_argument, "score of '" + name + "' must be finite and >= 0");
    }
    total += score;
  }
  for (const auto & [name, score] : raw) {
    out[name] = total > 0.0 ? score / total : 1.0 / static_cast<double>(raw.size());
  }
  return out;
}

ImportanceScores importance_scores(const std::map<std::string, std::vector<std::string>> & levels)
{
  ImportanceScores out;
  for (const auto & [element, observations] : levels) {
    if (observations.empty()) {
      throw Error(ErrorCode::invalid_argument, "element '" + element + "' has no observations");
    }
    std::map<std::string, double> counts;
    for (const auto & level : observations) counts[level] += 1.0;
    double entropy = 0.0;
    auto & probs = out.level_probability[element];
    for (const auto & [level, count] : counts) {
      const double p = count / static_cast<double>(observations.size());
      probs[level] = p;
      if (p < 1.0) entropy -= p * std::log2(p);
    }
    out.entropy_bits[element] = entropy;
  }
  out.weight = flatten_scores(out.entropy_bits);
  return out;
}

}  // namespace scenlib::analyze
