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

#ifndef SCENLIB__PIPELINE_HPP_
#define SCENLIB__PIPELINE_HPP_

#include "scenlib/analyze.hpp"
#include "scenlib/cleanse.hpp"
#include "scenlib/density.hpp"
#include "scenlib/enrich.hpp"
#include "scenlib/ingest.hpp"
#include "scenlib/ontology.hpp"
#include "scenlib/simharness.hpp"
#include "scenlib/synthetic.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace scenlib::pipeline
{

namespace fs = std::filesystem;
using nlohmann::json;

// Stage functions shared by the CLI subcommands and `pipeline`. Each reads
// its inputs from disk, writes its artifacts, and returns a short summary.

/// Per-episode numeric features, one row per episode.
struct FeatureTable
{
  std::vector<std::string> columns;
  std::vector<std::string> episodes;
  std::vector<std::vector<double>> rows;  // NaN for empty cells

  std::vector<double> column(const std::string & name) const;
  analyze::FeatureMatrix matrix(const std::vector<std::string> & names) const;
};

std::string write_features_csv(const FeatureTable & table);
FeatureTable read_features_csv(const fs::path & path);

/// Writes one raw CSV per episode into `out_dir`.
json synth_stage(const synthetic::CorpusOptions & options, std::uint64_t seed, const fs::path & out_dir);

/// Parses raw logs (duplicate timestamps allowed) and writes normalized CSVs.
/// Directories in `inputs` expand to their *.csv files in name order.
json ingest_stage(const std::vector<fs::path> & inputs, bool strict, const fs::path & out_dir);

json clean_stage(
  const fs::path & in_dir, const std::vector<cleanse::CleaningRule> & rules, const fs::path & out_dir);

struct EnrichParams
{
  std::string ego_id = "ego";
  std::string lead_id = "lead";
  double rate_hz = 10.0;
  ingest::SyncMethod sync = ingest::SyncMethod::median;
  enrich::AnnotateConfig annotate;
};

EnrichParams default_enrich_params();

/// Synchronizes ego and lead of each log to a common grid, annotates them,
/// and writes `<name>.csv`, `events.json` and `features.csv`.
json enrich_stage(const fs::path & in_dir, const EnrichParams & params, const fs::path & out_dir);

/// Feature columns extracted per episode by enrich_stage.
const std::vector<std::string> & kinematic_columns();

struct ClusterParams
{
  std::size_t k = 3;
  analyze::ClusterKind method = analyze::ClusterKind::gmm;
  std::vector<std::string> columns = kinematic_columns();
};

json cluster_stage(
  const fs::path & features, const ClusterParams & params, std::uint64_t seed, const fs::path & out_file);

struct DensityParams
{
  density::Kernel kernel = density::Kernel::gaussian;
  density::Bandwidth bandwidth = density::SilvermanRule{};
  std::vector<std::string> columns = kinematic_columns();
};

json density_stage(const fs::path & features, const DensityParams & params, const fs::path & out_file);

/// Writes a JSON array of concrete scenarios.
json generate_random_stage(
  const fs::path & logical, const fs::path & densities, std::size_t count, std::uint64_t seed,
  const fs::path & out_file);

struct SimulateParams
{
  simharness::AebPolicy policy;
  double dt = 0.01;
  double horizon = 20.0;
};

/// Simulates every concrete scenario in `scenarios` (a scenario object or an
/// array) and writes a KPI report keyed by scenario id.
json simulate_stage(const fs::path & scenarios, const SimulateParams & params, const fs::path & out_file);

/// Stores every scenario of `scenarios` in the library at `root`. A scenario
/// already stored with identical content is skipped.
json store_stage(const fs::path & scenarios, const fs::path & root);

struct PipelineConfig
{
  std::optional<std::uint64_t> seed;
  std::optional<fs::path> logs;
  std::optional<synthetic::CorpusOptions> synthetic;
  bool strict_ingest = false;
  std::vector<cleanse::CleaningRule> rules;
  EnrichParams enrich = default_enrich_params();
  ClusterParams cluster;
  DensityParams density;
  fs::path logical;
  std::size_t count = 100;
  SimulateParams simulate;
  std::optional<fs::path> library;
  std::optional<fs::path> output;
};

/// Parses a pipeline config; relative paths resolve against `base_dir`.
/// Throws SchemaError or NotFound for unresolvable files.
PipelineConfig load_pipeline_config(const json & doc, const fs::path & base_dir);
PipelineConfig load_pipeline_config(const fs::path & path);

/// Runs synth/ingest, clean, enrich, cluster, density, generate, simulate and
/// store in that order into `out_dir`. Stage seeds derive from `seed`.
json run_pipeline(const PipelineConfig & config, std::uint64_t seed, const fs::path & out_dir);

/// Writes `text` to `path`, creating parent directories.
void write_text(const fs::path & path, const std::string & text);

/// Reads a scenario file holding one scenario object or an array of them.
std::vector<ontology::Scenario> read_scenarios(const fs::path & path);

}  // namespace scenlib::pipeline

#endif  // SCENLIB__PIPELINE_HPP_
