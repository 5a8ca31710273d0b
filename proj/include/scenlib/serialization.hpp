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

#ifndef SCENLIB__SERIALIZATION_HPP_
#define SCENLIB__SERIALIZATION_HPP_

#include "scenlib/analyze.hpp"
#include "scenlib/cleanse.hpp"
#include "scenlib/density.hpp"
#include "scenlib/enrich.hpp"
#include "scenlib/generate.hpp"
#include "scenlib/ontology.hpp"
#include "scenlib/simharness.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace scenlib::serialization
{

using nlohmann::json;

// Every *_from_json throws SchemaError with a path-like hint on bad input.

json scenario_to_json(const ontology::Scenario & scenario);
/// Rejects unknown keys, categories outside the taxonomy, and params whose
/// shape does not match the scenario kind.
ontology::Scenario scenario_from_json(const json & doc);

json kde_to_json(const density::KdeModel & model);
density::KdeModel kde_from_json(const json & doc);

/// Object mapping parameter name to KdeModel.
json product_density_to_json(const generate::ProductDensity & density);
generate::ProductDensity product_density_from_json(const json & doc);

json rules_to_json(const std::vector<cleanse::CleaningRule> & rules);
std::vector<cleanse::CleaningRule> rules_from_json(const json & doc);

json cleaning_report_to_json(const cleanse::CleaningReport & report);
json events_to_json(const std::vector<enrich::EventAnnotation> & events);
json cluster_model_to_json(const analyze::ClusterModel & model);
json importance_to_json(const analyze::ImportanceScores & scores);
json danger_estimate_to_json(const generate::DangerEstimate & estimate);
json kpi_to_json(const simharness::KpiReport & report);

simharness::AebPolicy policy_from_json(const json & doc);
json policy_to_json(const simharness::AebPolicy & policy);

/// Reads and parses a JSON file; SchemaError names the path on failure.
json read_json_file(const std::filesystem::path & path);
std::string read_text_file(const std::filesystem::path & path);
/// Pretty-printed with a trailing newline, so files diff cleanly.
std::string dump(const json & doc);

}  // namespace scenlib::serialization

#endif  // SCENLIB__SERIALIZATION_HPP_
