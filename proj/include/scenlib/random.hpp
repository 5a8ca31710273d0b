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

#ifndef SCENLIB__RANDOM_HPP_
#define SCENLIB__RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace scenlib
{

/// splitmix64 finalizer; used to derive independent streams from one master seed.
std::uint64_t mix_seed(std::uint64_t value);

/// Seed for draw `index` of a campaign driven by `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Seed for a named stage (stable FNV-1a hash of the name mixed with `master`).
std::uint64_t derive_seed(std::uint64_t master, std::string_view stage);

/// Thin wrapper around mt19937_64. The conversions to uniform/normal variates
/// are spelled out here so that streams are identical across standard libraries.
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  /// Standard normal variate (Box-Muller, one value per call).
  double normal();

private:
  std::mt19937_64 engine_;
};

}  // namespace scenlib

#endif  // SCENLIB__RANDOM_HPP_
