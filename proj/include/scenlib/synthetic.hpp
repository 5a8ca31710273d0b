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

#ifndef SCENLIB__SYNTHETIC_HPP_
#define SCENLIB__SYNTHETIC_HPP_

#include "scenlib/ingest.hpp"
#include "scenlib/simharness.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace scenlib::synthetic
{

struct CorpusOptions
{
  std::size_t episodes = 60;
  double duration = 5.0;     // [s]
  double rate_hz = 20.0;     // raw logging rate
  double jitter = 0.002;     // timestamp noise [s]
  double lead_length = 4.5;  // [m]
  double missing_fraction = 0.01;
  double duplicate_fraction = 0.005;
};

/// One recorded cut-in: an "ego" and a "lead" track sharing a time base.
/// `truth` holds the generating kinematics.
struct Episode
{
  std::string name;
  std::vector<ingest::TrackLog> tracks;
  simharness::CutInScenario truth;
  std::size_t behaviour = 0;
};

/// Seeded corpus of cut-in episodes drawn from three behaviour groups
/// (relaxed, close, braking lead). Raw logs carry timestamp jitter, missing
/// cells and duplicated rows.
std::vector<Episode> cutin_corpus(const CorpusOptions & options, std::uint64_t seed);

}  // namespace scenlib::synthetic

#endif  // SCENLIB__SYNTHETIC_HPP_
