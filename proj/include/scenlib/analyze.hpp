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

#ifndef SCENLIB__ANALYZE_HPP_
#define SCENLIB__ANALYZE_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace scenlib::analyze
{

/// Row-major matrix of finite features, one row per scenario.
class FeatureMatrix
{
public:
  FeatureMatrix() = default;
  /// Throws InvalidArgument when the data is not rectangular or not finite.
  FeatureMatrix(std::vector<std::string> columns, std::vector<std::vector<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const std::vector<std::string> & columns() const { return columns_; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols(), cols()}; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }
  std::vector<double> column(std::size_t c) const;

private:
  std::vector<std::string> columns_;
  std::size_t rows_ = 0;
  std::vector<double> data_;
};

enum class ClusterKind { kmeans, gmm };

struct ClusterModel
{
  ClusterKind kind = ClusterKind::kmeans;
  std::size_t k = 0;
  /// Centroids (kmeans) or component means (gmm), k x d.
  std::vector<std::vector<double>> means;
  /// gmm only: diagonal variances (k x d) and mixture weights.
  std::vector<std::vector<double>> variances;
  std::vector<double> weights;
  /// Hard labels; gmm uses the arg-max responsibility.
  std::vector<std::size_t> labels;
  /// gmm only, n x k.
  std::vector<std::vector<double>> responsibilities;
  /// kmeans: inertia after each assignment step; gmm: log-likelihood per E-step.
  std::vector<double> objective_trace;
  bool converged = false;

  bool operator==(const ClusterModel &) const = default;
};

struct KMeansOptions
{
  std::size_t max_iter = 300;
  double tol = 1e-8;
  /// Independent k-means++ restarts; the lowest final inertia wins.
  std::size_t restarts = 4;
};

/// Lloyd iterations from k-means++ seeding. Deterministic given `seed`.
/// Throws KTooLarge (k > rows) and InvalidArgument (k == 0).
ClusterModel kmeans(
  const FeatureMatrix & x, std::size_t k, std::uint64_t seed, const KMeansOptions & options = {});

struct GmmOptions
{
  std::size_t max_iter = 500;
  double tol = 1e-10;
  /// Variance floor as a fraction of each column's variance.
  double variance_floor = 1e-6;
};

/// Diagonal-covariance EM initialised from kmeans. Throws InvalidArgument
/// (rows <= k, k == 0) and SingularComponent.
ClusterModel gmm_fit(
  const FeatureMatrix & x, std::size_t k, std::uint64_t seed, const GmmOptions & options = {});

/// Mean log-density contribution of each row, summed: the gmm objective.
double gmm_log_likelihood(const ClusterModel & model, const FeatureMatrix & x);

/// Adjusted Rand index between two labelings of the same rows.
double adjusted_rand_index(std::span<const std::size_t> a, std::span<const std::size_t> b);

struct ImportanceScores
{
  std::map<std::string, double> entropy_bits;
  std::map<std::string, double> weight;
  /// Observed relative frequency of each level, per element.
  std::map<std::string, std::map<std::string, double>> level_probability;
};

/// Shannon entropy (bits) of the observed level frequencies per element and
/// the entropies normalised onto the simplex (uniform when all are zero).
ImportanceScores importance_scores(const std::map<std::string, std::vector<std::string>> & levels);

/// Simplex normalisation of non-negative raw scores (uniform if all zero).
std::map<std::string, double> flatten_scores(const std::map<std::string, double> & raw);

}  // namespace scenlib::analyze

#endif  // SCENLIB__ANALYZE_HPP_
