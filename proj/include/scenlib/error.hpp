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

#ifndef SCENLIB__ERROR_HPP_
#define SCENLIB__ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace scenlib
{

enum class ErrorCode {
  invalid_argument,
  schema_error,
  // ontology
  missing_parameter,
  out_of_domain,
  kind_mismatch,
  // ingest
  empty_input,
  malformed_row,
  duplicate_timestamp,
  no_overlap,
  degenerate_track,
  // cleanse
  unknown_channel,
  length_mismatch,
  // enrich
  unaligned_logs,
  // analyze
  k_too_large,
  singular_component,
  // generate
  domain_density_mismatch,
  resample_exhausted,
  no_discrete_specs,
  too_many_combinations,
  moment_below_square,
  zero_proposal_density,
  // simharness
  invalid_timestep,
  empty_trace,
  // store
  duplicate_id,
  storage_failure,
  not_found,
  corrupt_entry,
  validation_failed,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every data-level failure raised by the library.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string & message)
  : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace scenlib

#endif  // SCENLIB__ERROR_HPP_
