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

#include "scenlib/diagnostics.hpp"
#include "scenlib/error.hpp"
#include "scenlib/random.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <mutex>
#include <numbers>
#include <utility>

namespace scenlib
{

std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::schema_error: return "SchemaError";
    case ErrorCode::missing_parameter: return "MissingParameter";
    case ErrorCode::out_of_domain: return "OutOfDomain";
    case ErrorCode::kind_mismatch: return "KindMismatch";
    case ErrorCode::empty_input: return "EmptyInput";
    case ErrorCode::malformed_row: return "MalformedRow";
    case ErrorCode::duplicate_timestamp: return "DuplicateTimestamp";
    case ErrorCode::no_overlap: return "NoOverlap";
    case ErrorCode::degenerate_track: return "DegenerateTrack";
    case ErrorCode::unknown_channel: return "UnknownChannel";
    case ErrorCode::length_mismatch: return "LengthMismatch";
    case ErrorCode::unaligned_logs: return "UnalignedLogs";
    case ErrorCode::k_too_large: return "KTooLarge";
    case ErrorCode::singular_component: return "SingularComponent";
    case ErrorCode::domain_density_mismatch: return "DomainDensityMismatch";
    case ErrorCode::resample_exhausted: return "ResampleExhausted";
    case ErrorCode::no_discrete_specs: return "NoDiscreteSpecs";
    case ErrorCode::too_many_combinations: return "TooManyCombinations";
    case ErrorCode::moment_below_square: return "MomentBelowSquare";
    case ErrorCode::zero_proposal_density: return "ZeroProposalDensity";
    case ErrorCode::invalid_timestep: return "InvalidTimestep";
    case ErrorCode::empty_trace: return "EmptyTrace";
    case ErrorCode::duplicate_id: return "DuplicateId";
    case ErrorCode::storage_failure: return "StorageFailure";
    case ErrorCode::not_found: return "NotFound";
    case ErrorCode::corrupt_entry: return "CorruptEntry";
    case ErrorCode::validation_failed: return "ValidationFailed";
  }
  return "Unknown";
}

namespace
{
std::mutex g_sink_mutex;
WarningSink g_sink;
}  // namespace

void warn(const std::string & message)
{
  std::lock_guard lock(g_sink_mutex);
  if (g_sink) {
    g_sink(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

WarningSink set_warning_sink(WarningSink sink)
{
  std::lock_guard lock(g_sink_mutex);
  return std::exchange(g_sink, std::move(sink));
}

WarningCapture::WarningCapture()
{
  previous_ = set_warning_sink([this](const std::string & m) { messages_.push_back(m); });
}

WarningCapture::~WarningCapture() { set_warning_sink(std::move(previous_)); }

std::uint64_t mix_seed(std::uint64_t value)
{
  value += 0x9e3779b97f4a7c15ULL;
  value = (value ^ (value >> 30)) * 0xbf58476d1ce4e5b9ULL;
  value = (value ^ (value >> 27)) * 0x94d049bb133111ebULL;
  return value ^ (value >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
  return mix_seed(mix_seed(master) ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view stage)
{
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : stage) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return derive_seed(master, hash);
}

double Rng::uniform()
{
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n)
{
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t value = engine_();
  while (value >= limit) {
    value = engine_();
  }
  return value % n;
}

double Rng::normal()
{
  double u1 = uniform();
  while (u1 <= 0.0) {
    u1 = uniform();
  }
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace scenlib
