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

#include "scenlib/error.hpp"
#include "scenlib/generate.hpp"
#include "scenlib/pipeline.hpp"
#include "scenlib/random.hpp"
#include "scenlib/serialization.hpp"
#include "scenlib/simharness.hpp"
#include "scenlib/store.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

namespace fs = std::filesystem;
namespace sl = scenlib;
using sl::serialization::json;

namespace
{

struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

void emit(const std::string & text, const std::string & out)
{
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    sl::pipeline::write_text(out, text);
  }
}

sl::simharness::AebPolicy load_policy(const std::string & path)
{
  if (path.empty()) return {};
  return sl::serialization::policy_from_json(sl::serialization::read_json_file(path));
}

std::vector<std::string> split_list(const std::string & text)
{
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find(',', pos);
    const auto item = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (!item.empty()) out.push_back(item);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

sl::store::Library open_library(const std::string & root)
{
  return root.empty() ? sl::store::Library::open_default() : sl::store::Library(root);
}

std::vector<sl::ontology::ParameterSpec> discrete_specs(const sl::ontology::Scenario & logical)
{
  std::vector<sl::ontology::ParameterSpec> specs;
  for (const auto & [name, spec] : logical.specs) {
    if (!spec.is_continuous()) specs.push_back(spec);
  }
  return specs;
}

json campaign_entry(const sl::generate::DangerEstimate & e, double factor, std::uint64_t seed)
{
  json j = sl::serialization::danger_estimate_to_json(e);
  j["acceleration_factor"] = factor;
  j["seed"] = seed;
  return j;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"scenlib: scenario library toolkit for automated-driving tests"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Master seed; stage seeds derive from it");

  // synth
  auto * synth = app.add_subcommand("synth", "Write a synthetic cut-in log corpus");
  sl::synthetic::CorpusOptions corpus;
  std::string synth_out;
  synth->add_option("--episodes", corpus.episodes, "Number of episodes")->capture_default_str();
  synth->add_option("--duration", corpus.duration, "Episode length [s]")->capture_default_str();
  synth->add_option("--rate-hz", corpus.rate_hz, "Raw logging rate [Hz]")->capture_default_str();
  synth->add_option("--out", synth_out, "Output directory")->required();

  // ingest
  auto * ingest = app.add_subcommand("ingest", "Parse raw track CSV logs into normalized CSVs");
  std::vector<std::string> ingest_inputs;
  std::string ingest_out;
  bool ingest_strict = false;
  ingest->add_option("inputs", ingest_inputs, "CSV files or directories")->required();
  ingest->add_option("--out", ingest_out, "Output directory")->required();
  ingest->add_flag("--strict", ingest_strict, "Fail on the first malformed row");

  // clean
  auto * clean = app.add_subcommand("clean", "Apply cleaning rules to every log in a directory");
  std::string clean_in, clean_out, clean_rules;
  clean->add_option("--in", clean_in, "Directory of track CSVs")->required();
  clean->add_option("--rules", clean_rules, "Cleaning rules JSON")->required();
  clean->add_option("--out", clean_out, "Output directory")->required();

  // enrich
  auto * enrich = app.add_subcommand("enrich", "Synchronize ego/lead pairs and annotate TTC, THW, TTB and events");
  auto enrich_params = sl::pipeline::default_enrich_params();
  std::string enrich_in, enrich_out, enrich_sync = "median";
  double ttc_danger = *enrich_params.annotate.ttc_danger;
  double yaw_threshold = *enrich_params.annotate.yaw_rate_threshold;
  enrich->add_option("--in", enrich_in, "Directory of cleaned track CSVs")->required();
  enrich->add_option("--out", enrich_out, "Output directory")->required();
  enrich->add_option("--ego", enrich_params.ego_id, "Ego track id")->capture_default_str();
  enrich->add_option("--lead", enrich_params.lead_id, "Lead track id")->capture_default_str();
  enrich->add_option("--rate-hz", enrich_params.rate_hz, "Common grid rate [Hz]")->capture_default_str();
  enrich->add_option("--sync", enrich_sync, "median or spline")->capture_default_str();
  enrich->add_option("--lead-length", enrich_params.annotate.lead_length, "Lead vehicle length [m]")->capture_default_str();
  enrich->add_option("--a-max", enrich_params.annotate.a_max, "Braking capability for TTB [m/s^2]")->capture_default_str();
  enrich->add_option("--ttc-danger", ttc_danger, "TTC threshold for danger events [s]")->capture_default_str();
  enrich->add_option("--yaw-rate-threshold", yaw_threshold, "Lane-change yaw-rate threshold [rad/s]")->capture_default_str();

  // cluster
  auto * cluster = app.add_subcommand("cluster", "Cluster per-episode features with k-means or a GMM");
  sl::pipeline::ClusterParams cluster_params;
  std::string cluster_features, cluster_out, cluster_method = "gmm", cluster_columns;
  cluster->add_option("--features", cluster_features, "features.csv")->required();
  cluster->add_option("--k", cluster_params.k, "Number of clusters")->capture_default_str();
  cluster->add_option("--method", cluster_method, "kmeans or gmm")->capture_default_str();
  cluster->add_option("--columns", cluster_columns, "Comma-separated feature columns");
  cluster->add_option("--out", cluster_out, "Output JSON (default stdout)");

  // density
  auto * dens = app.add_subcommand("density", "Fit one KDE per feature column");
  sl::pipeline::DensityParams density_params;
  std::string density_features, density_out, density_kernel = "gaussian", density_bw = "silverman", density_columns;
  dens->add_option("--features", density_features, "features.csv")->required();
  dens->add_option("--kernel", density_kernel, "gaussian or epanechnikov")->capture_default_str();
  dens->add_option("--bandwidth", density_bw, "silverman or a positive number")->capture_default_str();
  dens->add_option("--columns", density_columns, "Comma-separated feature columns");
  dens->add_option("--out", density_out, "Output JSON (default stdout)");

  // generate
  auto * gen = app.add_subcommand("generate", "Generate concrete scenarios or run a danger campaign");
  gen->require_subcommand(1);
  auto * gen_random = gen->add_subcommand("random", "Monte Carlo draws from fitted densities");
  std::string gr_logical, gr_densities, gr_out, gr_library;
  std::size_t gr_count = 100;
  gen_random->add_option("--logical", gr_logical, "Logical scenario JSON")->required();
  gen_random->add_option("--densities", gr_densities, "Product density JSON")->required();
  gen_random->add_option("--count", gr_count, "Number of scenarios")->capture_default_str();
  gen_random->add_option("--out", gr_out, "Output JSON array (default stdout)");
  gen_random->add_option("--library", gr_library, "Also store the scenarios in this library");

  auto * gen_comb = gen->add_subcommand("combinatorial", "Weighted combinatorial test cases over discrete parameters");
  std::string gc_logical, gc_out, gc_prefix = "comb", gc_probabilities;
  std::size_t gc_budget = 0;
  gen_comb->add_option("--logical", gc_logical, "Logical scenario JSON")->required();
  gen_comb->add_option("--budget", gc_budget, "Maximum number of test cases")->required();
  gen_comb->add_option("--level-probabilities", gc_probabilities, "JSON {param: {level: p}} (default uniform)");
  gen_comb->add_option("--prefix", gc_prefix, "Id prefix")->capture_default_str();
  gen_comb->add_option("--out", gc_out, "Output JSON array (default stdout)");

  auto * gen_danger = gen->add_subcommand("danger", "Estimate the collision probability under an AEB policy");
  std::string gd_logical, gd_densities, gd_proposal, gd_proposal_out, gd_policy, gd_out;
  std::size_t gd_n = 10000, gd_naive_n = 0;
  double gd_dt = 0.01, gd_horizon = 20.0, gd_alpha = 0.05, gd_beta = 0.1, gd_target = 0.2;
  std::optional<double> gd_z;
  gen_danger->add_option("--logical", gd_logical, "Logical scenario JSON")->required();
  gen_danger->add_option("--densities", gd_densities, "Product density JSON (f)")->required();
  gen_danger->add_option("--proposal", gd_proposal, "Proposal density JSON (f*), or 'auto' to build a shifted one")->required();
  gen_danger->add_option("--proposal-out", gd_proposal_out, "Write the proposal used");
  gen_danger->add_option("--n", gd_n, "Importance-sampling draws")->capture_default_str();
  gen_danger->add_option("--naive-n", gd_naive_n, "Naive Monte Carlo draws (0 skips)")->capture_default_str();
  gen_danger->add_option("--policy", gd_policy, "AEB policy JSON");
  gen_danger->add_option("--dt", gd_dt, "Simulation step [s]")->capture_default_str();
  gen_danger->add_option("--horizon", gd_horizon, "Simulation horizon [s]")->capture_default_str();
  gen_danger->add_option("--z", gd_z, "Test-count constant z");
  gen_danger->add_option("--alpha", gd_alpha, "Confidence level 1-alpha for z")->capture_default_str();
  gen_danger->add_option("--beta", gd_beta, "Relative half-width for z")->capture_default_str();
  gen_danger->add_option("--target-hit-rate", gd_target, "Proposal hit rate for --proposal auto")->capture_default_str();
  gen_danger->add_option("--out", gd_out, "Campaign report JSON (default stdout)");

  // min-tests
  auto * min_tests = app.add_subcommand("min-tests", "Minimum number of tests for a target accuracy");
  double mt_gamma = 0.0, mt_alpha = 0.05, mt_beta = 0.1;
  std::optional<double> mt_z, mt_second;
  min_tests->add_option("--gamma", mt_gamma, "Danger probability")->required();
  min_tests->add_option("--z", mt_z, "Test-count constant z (default from --alpha/--beta)");
  min_tests->add_option("--alpha", mt_alpha, "Confidence level 1-alpha")->capture_default_str();
  min_tests->add_option("--beta", mt_beta, "Relative half-width")->capture_default_str();
  min_tests->add_option("--second-moment", mt_second, "E_f*[I^2 L^2]; selects the importance-sampling count");

  // simulate
  auto * simulate = app.add_subcommand("simulate", "Simulate concrete cut-in scenarios and report KPIs");
  std::string sim_scenario, sim_policy, sim_out, sim_trace;
  double sim_dt = 0.01, sim_horizon = 20.0;
  simulate->add_option("--scenario", sim_scenario, "Concrete scenario JSON (object or array)")->required();
  simulate->add_option("--policy", sim_policy, "AEB policy JSON");
  simulate->add_option("--dt", sim_dt, "Simulation step [s]")->capture_default_str();
  simulate->add_option("--horizon", sim_horizon, "Simulation horizon [s]")->capture_default_str();
  simulate->add_option("--trace", sim_trace, "Trace CSV (single-scenario files only)");
  simulate->add_option("--out", sim_out, "KPI report JSON (default stdout)");

  // search / store
  auto * search = app.add_subcommand("search", "Search the scenario library");
  std::string search_library, search_kind;
  std::vector<std::string> search_tags, search_ranges;
  search->add_option("--library", search_library, "Library root (default $SCENLIB_HOME)");
  search->add_option("--tag", search_tags, "Required tag (repeatable)");
  search->add_option("--range", search_ranges, "name:lo:hi (repeatable)");
  search->add_option("--kind", search_kind, "functional, logical or concrete");

  auto * store = app.add_subcommand("store", "Add scenarios to the library");
  std::string store_in, store_library;
  store->add_option("--in", store_in, "Scenario JSON (object or array)")->required();
  store->add_option("--library", store_library, "Library root (default $SCENLIB_HOME)");

  // pipeline
  auto * pipeline = app.add_subcommand("pipeline", "Run every stage from a JSON config");
  std::string pl_config, pl_out;
  pipeline->add_option("--config", pl_config, "Pipeline config JSON")->required();
  pipeline->add_option("--out", pl_out, "Output directory (default: config 'output')");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "remedy: see 'scenlib --help' or 'scenlib <command> --help'\n";
    return 1;
  }
  const bool seed_given = app.count("--seed") > 0;

  try {
    if (*synth) {
      const auto r = sl::pipeline::synth_stage(corpus, sl::derive_seed(seed, "synth"), synth_out);
      std::cerr << "synth: " << r.dump() << "\n";
    } else if (*ingest) {
      std::vector<fs::path> inputs(ingest_inputs.begin(), ingest_inputs.end());
      const auto r = sl::pipeline::ingest_stage(inputs, ingest_strict, ingest_out);
      std::cerr << "ingest: " << r.dump() << "\n";
    } else if (*clean) {
      const auto rules = sl::serialization::rules_from_json(sl::serialization::read_json_file(clean_rules));
      const auto r = sl::pipeline::clean_stage(clean_in, rules, clean_out);
      std::cerr << "clean: " << r.dump() << "\n";
    } else if (*enrich) {
      const auto method = sl::ingest::sync_method_from_string(enrich_sync);
      if (!method) throw UsageError("--sync must be median or spline");
      enrich_params.sync = *method;
      enrich_params.annotate.ttc_danger = ttc_danger;
      enrich_params.annotate.yaw_rate_threshold = yaw_threshold;
      const auto r = sl::pipeline::enrich_stage(enrich_in, enrich_params, enrich_out);
      std::cerr << "enrich: " << r.dump() << "\n";
    } else if (*cluster) {
      if (cluster_method == "kmeans") cluster_params.method = sl::analyze::ClusterKind::kmeans;
      else if (cluster_method == "gmm") cluster_params.method = sl::analyze::ClusterKind::gmm;
      else throw UsageError("--method must be kmeans or gmm");
      if (!cluster_columns.empty()) cluster_params.columns = split_list(cluster_columns);
      const fs::path out = cluster_out.empty() || cluster_out == "-" ? fs::path() : fs::path(cluster_out);
      if (out.empty()) {
        const auto tmp = fs::temp_directory_path() / ("scenlib_cluster_" + std::to_string(::getpid()) + ".json");
        sl::pipeline::cluster_stage(cluster_features, cluster_params, sl::derive_seed(seed, "cluster"), tmp);
        std::cout << sl::serialization::read_text_file(tmp);
        fs::remove(tmp);
      } else {
        const auto r = sl::pipeline::cluster_stage(cluster_features, cluster_params, sl::derive_seed(seed, "cluster"), out);
        std::cerr << "cluster: " << r.dump() << "\n";
      }
    } else if (*dens) {
      const auto kernel = sl::density::kernel_from_string(density_kernel);
      if (!kernel) throw UsageError("--kernel must be gaussian or epanechnikov");
      density_params.kernel = *kernel;
      if (density_bw != "silverman") {
        try {
          density_params.bandwidth = std::stod(density_bw);
        } catch (const std::exception &) {
          throw UsageError("--bandwidth must be 'silverman' or a number");
        }
      }
      if (!density_columns.empty()) density_params.columns = split_list(density_columns);
      if (density_out.empty() || density_out == "-") {
        const auto tmp = fs::temp_directory_path() / ("scenlib_density_" + std::to_string(::getpid()) + ".json");
        sl::pipeline::density_stage(density_features, density_params, tmp);
        std::cout << sl::serialization::read_text_file(tmp);
        fs::remove(tmp);
      } else {
        const auto r = sl::pipeline::density_stage(density_features, density_params, density_out);
        std::cerr << "density: " << r.dump() << "\n";
      }
    } else if (*gen_random) {
      const auto tmp = gr_out.empty() || gr_out == "-"
                         ? fs::temp_directory_path() / ("scenlib_generate_" + std::to_string(::getpid()) + ".json")
                         : fs::path(gr_out);
      const auto r = sl::pipeline::generate_random_stage(
        gr_logical, gr_densities, gr_count, sl::derive_seed(seed, "generate"), tmp);
      if (!gr_library.empty()) sl::pipeline::store_stage(tmp, gr_library);
      if (gr_out.empty() || gr_out == "-") {
        std::cout << sl::serialization::read_text_file(tmp);
        fs::remove(tmp);
      } else {
        std::cerr << "generate random: " << r.dump() << "\n";
      }
    } else if (*gen_comb) {
      const auto logical = sl::serialization::scenario_from_json(sl::serialization::read_json_file(gc_logical));
      const auto specs = discrete_specs(logical);
      std::map<std::string, std::vector<std::string>> levels;
      for (const auto & spec : specs) {
        levels[spec.name] = std::get<sl::ontology::DiscreteDomain>(spec.domain).levels;
      }
      auto weights = sl::analyze::importance_scores(levels);
      if (!gc_probabilities.empty()) {
        const auto doc = sl::serialization::read_json_file(gc_probabilities);
        weights.level_probability = doc.get<std::map<std::string, std::map<std::string, double>>>();
      }
      const auto scenarios = sl::generate::combinatorial_generate(specs, weights, gc_budget, gc_prefix);
      json out = json::array();
      for (const auto & s : scenarios) out.push_back(sl::serialization::scenario_to_json(s));
      emit(sl::serialization::dump(out), gc_out);
    } else if (*gen_danger) {
      namespace gen_ns = sl::generate;
      gen_ns::SamplingPlan plan;
      plan.logical = sl::serialization::scenario_from_json(sl::serialization::read_json_file(gd_logical));
      plan.densities = sl::serialization::product_density_from_json(sl::serialization::read_json_file(gd_densities));
      plan.seed = sl::derive_seed(seed, "danger");
      const auto policy = load_policy(gd_policy);
      const gen_ns::DangerIndicator indicator = [&](const gen_ns::ParameterPoint & x) {
        return sl::simharness::simulate_outcome(sl::simharness::cutin_from_parameters(x), policy, gd_dt, gd_horizon)
                   .collision
                 ? 1
                 : 0;
      };
      if (gd_proposal == "auto") {
        gen_ns::ProposalOptions options;
        options.target_hit_rate = gd_target;
        options.seed = sl::derive_seed(seed, "proposal");
        plan.proposal = gen_ns::build_shifted_proposal(plan.densities, indicator, options);
      } else {
        plan.proposal =
          sl::serialization::product_density_from_json(sl::serialization::read_json_file(gd_proposal));
      }
      if (!gd_proposal_out.empty()) {
        sl::pipeline::write_text(
          gd_proposal_out, sl::serialization::dump(sl::serialization::product_density_to_json(*plan.proposal)));
      }
      const double z = gd_z ? *gd_z : gen_ns::z_from_confidence(gd_alpha, gd_beta);
      const auto is = gen_ns::is_estimate(plan, indicator, gd_n, gen_ns::EstimateMethod::importance);
      json campaign = json::array();
      double factor = 0.0;
      if (gd_naive_n > 0) {
        auto naive_plan = plan;
        naive_plan.seed = sl::derive_seed(seed, "danger-naive");
        const auto naive = gen_ns::is_estimate(naive_plan, indicator, gd_naive_n, gen_ns::EstimateMethod::naive);
        factor = gen_ns::acceleration_factor(naive, is, gen_ns::TestBudget(z, 0.5));
        campaign.push_back(campaign_entry(naive, 1.0, naive_plan.seed));
      } else if (is.gamma_hat > 0.0 && is.gamma_hat < 1.0) {
        const gen_ns::TestBudget budget(z, is.gamma_hat);
        std::uint64_t n_is = 0;
        try {
          n_is = gen_ns::min_tests_is(is.second_moment, budget);
        } catch (const sl::Error &) {
          n_is = 0;
        }
        factor = static_cast<double>(gen_ns::min_tests_naive(budget)) / static_cast<double>(std::max<std::uint64_t>(1, n_is));
      }
      campaign.push_back(campaign_entry(is, factor, plan.seed));
      json report = {{"z", z}, {"acceleration_factor", factor}, {"seed", seed}, {"campaign", std::move(campaign)}};
      emit(sl::serialization::dump(report), gd_out);
    } else if (*min_tests) {
      const double z = mt_z ? *mt_z : sl::generate::z_from_confidence(mt_alpha, mt_beta);
      const sl::generate::TestBudget budget(z, mt_gamma);
      const auto n = mt_second ? sl::generate::min_tests_is(*mt_second, budget) : sl::generate::min_tests_naive(budget);
      std::cout << n << "\n";
    } else if (*simulate) {
      sl::pipeline::SimulateParams params{load_policy(sim_policy), sim_dt, sim_horizon};
      if (!sim_trace.empty()) {
        const auto list = sl::pipeline::read_scenarios(sim_scenario);
        if (list.size() != 1) throw UsageError("--trace needs a file with exactly one scenario");
        std::map<std::string, double> point;
        for (const auto & [name, param] : list.front().values) {
          if (const auto * v = std::get_if<double>(&param.value)) point[name] = *v;
        }
        const auto trace =
          sl::simharness::simulate(sl::simharness::cutin_from_parameters(point), params.policy, sim_dt, sim_horizon);
        sl::pipeline::write_text(sim_trace, sl::simharness::write_trace_csv(trace));
      }
      if (sim_out.empty() || sim_out == "-") {
        const auto tmp = fs::temp_directory_path() / ("scenlib_kpi_" + std::to_string(::getpid()) + ".json");
        sl::pipeline::simulate_stage(sim_scenario, params, tmp);
        std::cout << sl::serialization::read_text_file(tmp);
        fs::remove(tmp);
      } else {
        const auto r = sl::pipeline::simulate_stage(sim_scenario, params, sim_out);
        std::cerr << "simulate: " << r.dump() << "\n";
      }
    } else if (*search) {
      sl::store::Query query;
      for (const auto & tag : search_tags) query.with_tag(tag);
      for (const auto & range : search_ranges) {
        const auto first = range.find(':');
        const auto second = range.find(':', first == std::string::npos ? first : first + 1);
        if (first == std::string::npos || second == std::string::npos) {
          throw UsageError("--range expects name:lo:hi, got '" + range + "'");
        }
        double lo = 0.0, hi = 0.0;
        try {
          lo = std::stod(range.substr(first + 1, second - first - 1));
          hi = std::stod(range.substr(second + 1));
        } catch (const std::exception &) {
          throw UsageError("--range bounds must be numbers, got '" + range + "'");
        }
        query.with_range(range.substr(0, first), lo, hi);
      }
      if (!search_kind.empty()) {
        const auto kind = sl::ontology::kind_from_string(search_kind);
        if (!kind) throw UsageError("--kind must be functional, logical or concrete");
        query.with_kind(*kind);
      }
      const auto library = open_library(search_library);
      for (const auto & id : library.search(query)) std::cout << id << "\n";
    } else if (*store) {
      const auto root = store_library.empty() ? open_library("").root() : fs::path(store_library);
      const auto r = sl::pipeline::store_stage(store_in, root);
      std::cerr << "store: " << r.dump() << "\n";
    } else if (*pipeline) {
      auto config = sl::pipeline::load_pipeline_config(fs::path(pl_config));
      if (!seed_given && !config.seed) {
        throw UsageError("pipeline needs a seed: pass --seed or set \"seed\" in the config");
      }
      const std::uint64_t master = seed_given ? seed : *config.seed;
      fs::path out = pl_out.empty() ? (config.output ? *config.output : fs::path()) : fs::path(pl_out);
      if (out.empty()) throw UsageError("pipeline needs --out or an \"output\" entry in the config");
      const auto r = sl::pipeline::run_pipeline(config, master, out);
      std::cerr << "pipeline: " << r.dump() << "\n";
    }
  } catch (const UsageError & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const sl::Error & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
