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

#include "scenlib/pipeline.hpp"

#include "scenlib/error.hpp"
#include "scenlib/generate.hpp"
#include "scenlib/random.hpp"
#include "scenlib/serialization.hpp"
#include "scenlib/store.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numeric>

namespace scenlib::pipeline
{

namespace
{

[[noreturn]] void schema_error(const std::string & where, const std::string & what)
{
  throw Error(ErrorCode::schema_error, where + ": " + what);
}

std::vector<fs::path> csv_files(const fs::path & dir)
{
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::not_found, "'" + dir.string() + "' is not a directory");
  }
  std::vector<fs::path> files;
  for (const auto & entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

void append_double(std::string & out, double v)
{
  if (std::isnan(v)) return;
  char buffer[64];
  const auto r = std::to_chars(buffer, buffer + sizeof(buffer), v);
  out.append(buffer, r.ptr);
}

std::vector<std::string> split(std::string_view line, char sep)
{
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = line.find(sep, pos);
    out.emplace_back(line.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

ingest::ParseResult parse_file(const fs::path & path, const ingest::ParseOptions & options)
{
  const std::string text = serialization::read_text_file(path);
  try {
    return ingest::parse_track_log(text, options);
  } catch (const Error & e) {
    throw Error(e.code(), path.filename().string() + ": " + e.what());
  }
}

const ingest::TrackLog & find_track(
  const std::vector<ingest::TrackLog> & tracks, const std::string & id, const fs::path & file)
{
  for (const auto & track : tracks) {
    if (track.track_id == id) return track;
  }
  throw Error(ErrorCode::not_found, file.filename().string() + ": no track '" + id + "'");
}

// Optional typed config fields.
template <typename T>
void read_opt(const json & obj, const char * key, T & target, const std::string & where)
{
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    target = it->get<T>();
  } catch (const json::exception &) {
    schema_error(where + "." + key, "wrong type");
  }
}

void check_keys(const json & obj, std::initializer_list<const char *> allowed, const std::string & where)
{
  if (!obj.is_object()) schema_error(where, "expected an object");
  for (const auto & [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char * a) { return key == a; })) {
      schema_error(where, "unknown key '" + key + "'");
    }
  }
}

fs::path resolve_existing(const fs::path & base, const std::string & rel, const std::string & where)
{
  const fs::path p = fs::path(rel).is_absolute() ? fs::path(rel) : base / rel;
  if (!fs::exists(p)) {
    throw Error(ErrorCode::not_found, where + ": '" + p.string() + "' does not exist");
  }
  return p;
}

}  // namespace

void write_text(const fs::path & path, const std::string & text)
{
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::storage_failure, "cannot write '" + path.string() + "'");
}

std::vector<ontology::Scenario> read_scenarios(const fs::path & path)
{
  const json doc = serialization::read_json_file(path);
  std::vector<ontology::Scenario> out;
  if (doc.is_array()) {
    for (const auto & item : doc) out.push_back(serialization::scenario_from_json(item));
  } else {
    out.push_back(serialization::scenario_from_json(doc));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Feature tables

std::vector<double> FeatureTable::column(const std::string & name) const
{
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw Error(ErrorCode::unknown_channel, "no feature column '" + name + "'");
  }
  const auto c = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto & row : rows) out.push_back(row[c]);
  return out;
}

analyze::FeatureMatrix FeatureTable::matrix(const std::vector<std::string> & names) const
{
  std::vector<std::vector<double>> cols;
  for (const auto & name : names) cols.push_back(column(name));
  std::vector<std::vector<double>> data(rows.size(), std::vector<double>(names.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < names.size(); ++c) data[r][c] = cols[c][r];
  }
  return analyze::FeatureMatrix(names, std::move(data));
}

std::string write_features_csv(const FeatureTable & table)
{
  std::string out = "episode";
  for (const auto & c : table.columns) out += "," + c;
  out += '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out += table.episodes[r];
    for (const double v : table.rows[r]) {
      out += ',';
      append_double(out, v);
    }
    out += '\n';
  }
  return out;
}

FeatureTable read_features_csv(const fs::path & path)
{
  const std::string text = serialization::read_text_file(path);
  FeatureTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (table.columns.empty() && line_no == 1) {
      if (cells.front() != "episode") {
        throw Error(ErrorCode::schema_error, path.string() + ": first column must be 'episode'");
      }
      table.columns.assign(cells.begin() + 1, cells.end());
      continue;
    }
    if (cells.size() != table.columns.size() + 1) {
      throw Error(ErrorCode::malformed_row, path.string() + ": line " + std::to_string(line_no) + " has wrong width");
    }
    table.episodes.push_back(cells.front());
    std::vector<double> row;
    for (std::size_t c = 1; c < cells.size(); ++c) {
      double v = std::numeric_limits<double>::quiet_NaN();
      if (!cells[c].empty()) {
        const auto r = std::from_chars(cells[c].data(), cells[c].data() + cells[c].size(), v);
        if (r.ec != std::errc() || r.ptr != cells[c].data() + cells[c].size()) {
          throw Error(
            ErrorCode::malformed_row,
            path.string() + ": line " + std::to_string(line_no) + ", column '" + table.columns[c - 1] + "'");
        }
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.columns.empty()) throw Error(ErrorCode::empty_input, path.string() + ": no header");
  return table;
}

const std::vector<std::string> & kinematic_columns()
{
  static const std::vector<std::string> columns = {"ego_speed_0", "cutin_speed", "cutin_gap_0", "cutin_decel"};
  return columns;
}

EnrichParams default_enrich_params()
{
  EnrichParams p;
  p.annotate.lead_length = 4.5;
  p.annotate.ttc_danger = 1.0;
  p.annotate.yaw_rate_threshold = 0.1;
  p.annotate.lane_change_min_duration = 0.5;
  return p;
}

// ---------------------------------------------------------------------------
// Stages

json synth_stage(const synthetic::CorpusOptions & options, std::uint64_t seed, const fs::path & out_dir)
{
  const auto corpus = synthetic::cutin_corpus(options, seed);
  fs::create_directories(out_dir);
  json truth = json::object();
  for (const auto & episode : corpus) {
    write_text(out_dir / (episode.name + ".csv"), ingest::write_track_log(episode.tracks));
    truth[episode.name] = {
      {"behaviour", episode.behaviour},
      {"ego_speed_0", episode.truth.ego_speed_0},
      {"cutin_speed", episode.truth.cutin_speed},
      {"cutin_gap_0", episode.truth.cutin_gap_0},
      {"cutin_decel", episode.truth.cutin_decel},
    };
  }
  write_text(out_dir / "truth.json", serialization::dump(truth));
  return {{"episodes", corpus.size()}};
}

json ingest_stage(const std::vector<fs::path> & inputs, bool strict, const fs::path & out_dir)
{
  std::vector<fs::path> files;
  for (const auto & input : inputs) {
    if (fs::is_directory(input)) {
      const auto more = csv_files(input);
      files.insert(files.end(), more.begin(), more.end());
    } else if (fs::exists(input)) {
      files.push_back(input);
    } else {
      throw Error(ErrorCode::not_found, "'" + input.string() + "' does not exist");
    }
  }
  if (files.empty()) throw Error(ErrorCode::empty_input, "no input logs");
  fs::create_directories(out_dir);
  json report = json::object();
  std::size_t rows = 0, rejected = 0;
  for (const auto & file : files) {
    const auto parsed = parse_file(file, {strict, true});
    write_text(out_dir / file.filename(), ingest::write_track_log(parsed.tracks));
    json rej = json::array();
    for (const auto & r : parsed.rejected) {
      rej.push_back({{"line", r.line}, {"column", r.column}, {"reason", r.reason}});
    }
    report[file.filename().string()] = {
      {"rows_read", parsed.rows_read}, {"tracks", parsed.tracks.size()}, {"rejected", std::move(rej)}};
    rows += parsed.rows_read;
    rejected += parsed.rejected.size();
  }
  write_text(out_dir / "ingest_report.json", serialization::dump(report));
  return {{"files", files.size()}, {"rows_read", rows}, {"rows_rejected", rejected}};
}

json clean_stage(
  const fs::path & in_dir, const std::vector<cleanse::CleaningRule> & rules, const fs::path & out_dir)
{
  const auto files = csv_files(in_dir);
  if (files.empty()) throw Error(ErrorCode::empty_input, "no logs in '" + in_dir.string() + "'");
  fs::create_directories(out_dir);
  json report = json::object();
  double j_sum = 0.0;
  std::size_t tracks = 0;
  for (const auto & file : files) {
    const auto parsed = parse_file(file, {true, true});
    std::vector<ingest::TrackLog> cleaned;
    json per_file = json::object();
    for (const auto & track : parsed.tracks) {
      auto [log, r] = cleanse::clean(track, rules);
      per_file[track.track_id] = serialization::cleaning_report_to_json(r);
      j_sum += r.reconstruction_error;
      ++tracks;
      cleaned.push_back(std::move(log));
    }
    write_text(out_dir / file.filename(), ingest::write_track_log(cleaned));
    report[file.filename().string()] = std::move(per_file);
  }
  write_text(out_dir / "cleaning_report.json", serialization::dump(report));
  return {{"files", files.size()}, {"tracks", tracks}, {"mean_reconstruction_error", j_sum / static_cast<double>(tracks)}};
}

json enrich_stage(const fs::path & in_dir, const EnrichParams & params, const fs::path & out_dir)
{
  const auto files = csv_files(in_dir);
  if (files.empty()) throw Error(ErrorCode::empty_input, "no logs in '" + in_dir.string() + "'");
  fs::create_directories(out_dir);
  FeatureTable table;
  table.columns = kinematic_columns();
  table.columns.push_back("min_ttc");
  json events = json::object();
  std::size_t danger = 0;
  for (const auto & file : files) {
    const auto parsed = parse_file(file, {});
    const auto & ego = find_track(parsed.tracks, params.ego_id, file);
    const auto & lead = find_track(parsed.tracks, params.lead_id, file);
    const auto synced = ingest::synchronize({ego, lead}, params.rate_hz, params.sync);
    const auto annotated = enrich::annotate(synced[0], synced[1], params.annotate);
    write_text(out_dir / file.filename(), enrich::write_enriched_csv(annotated));

    auto episode_events = annotated.events;
    if (params.annotate.yaw_rate_threshold) {
      for (auto e : enrich::detect_lane_changes(
             synced[1], *params.annotate.yaw_rate_threshold, params.annotate.lane_change_min_duration)) {
        e.kind = "lead_lane_change";
        episode_events.push_back(std::move(e));
      }
      std::stable_sort(episode_events.begin(), episode_events.end(), [](const auto & a, const auto & b) {
        return a.t_start < b.t_start;
      });
    }
    const std::string name = file.stem().string();
    events[name] = serialization::events_to_json(episode_events);
    for (const auto & e : episode_events) danger += e.kind == "danger" ? 1 : 0;

    double accel_sum = 0.0;
    std::size_t accel_n = 0;
    for (const auto & s : synced[1].samples) {
      if (std::isfinite(s.accel)) {
        accel_sum += s.accel;
        ++accel_n;
      }
    }
    double min_ttc = std::numeric_limits<double>::quiet_NaN();
    for (const auto & t : annotated.ttc) {
      if (t && !(*t >= min_ttc)) min_ttc = *t;
    }
    table.episodes.push_back(name);
    table.rows.push_back({
      synced[0].samples.front().speed,
      synced[1].samples.front().speed,
      annotated.gap.front(),
      accel_n ? std::max(0.0, -accel_sum / static_cast<double>(accel_n)) : 0.0,
      min_ttc,
    });
  }
  write_text(out_dir / "events.json", serialization::dump(events));
  write_text(out_dir / "features.csv", write_features_csv(table));
  return {{"episodes", files.size()}, {"danger_events", danger}};
}

json cluster_stage(
  const fs::path & features, const ClusterParams & params, std::uint64_t seed, const fs::path & out_file)
{
  const auto table = read_features_csv(features);
  const auto x = table.matrix(params.columns);
  const auto model = params.method == analyze::ClusterKind::kmeans ? analyze::kmeans(x, params.k, seed)
                                                                     : analyze::gmm_fit(x, params.k, seed);
  json doc = serialization::cluster_model_to_json(model);
  doc["columns"] = params.columns;
  doc["episodes"] = table.episodes;
  doc["seed"] = seed;
  write_text(out_file, serialization::dump(doc));
  std::vector<std::size_t> sizes(model.k, 0);
  for (const auto label : model.labels) ++sizes[label];
  return {{"k", model.k}, {"sizes", sizes}, {"converged", model.converged}};
}

json density_stage(const fs::path & features, const DensityParams & params, const fs::path & out_file)
{
  const auto table = read_features_csv(features);
  generate::ProductDensity densities;
  json bandwidths = json::object();
  for (const auto & name : params.columns) {
    std::vector<double> values;
    for (const double v : table.column(name)) {
      if (std::isfinite(v)) values.push_back(v);
    }
    auto model = density::kde_fit(std::move(values), params.kernel, params.bandwidth);
    bandwidths[name] = model.h;
    densities.emplace(name, std::move(model));
  }
  write_text(out_file, serialization::dump(serialization::product_density_to_json(densities)));
  return {{"bandwidths", std::move(bandwidths)}};
}

json generate_random_stage(
  const fs::path & logical, const fs::path & densities, std::size_t count, std::uint64_t seed,
  const fs::path & out_file)
{
  generate::SamplingPlan plan;
  plan.logical = serialization::scenario_from_json(serialization::read_json_file(logical));
  const auto violations = ontology::validate_scenario(plan.logical);
  if (!violations.empty()) {
    throw Error(ErrorCode::validation_failed, logical.string() + ": " + violations.front().reason);
  }
  plan.densities = serialization::product_density_from_json(serialization::read_json_file(densities));
  plan.seed = seed;
  plan.count = count;
  const auto scenarios = generate::random_generate(plan);
  json out = json::array();
  for (const auto & s : scenarios) out.push_back(serialization::scenario_to_json(s));
  write_text(out_file, serialization::dump(out));
  return {{"generated", scenarios.size()}, {"logical", plan.logical.id}};
}

json simulate_stage(const fs::path & scenarios, const SimulateParams & params, const fs::path & out_file)
{
  json report = json::object();
  std::size_t collisions = 0;
  const auto list = read_scenarios(scenarios);
  for (const auto & s : list) {
    if (s.kind != ontology::ScenarioKind::concrete) {
      throw Error(ErrorCode::kind_mismatch, "'" + s.id + "' is not a concrete scenario");
    }
    std::map<std::string, double> point;
    for (const auto & [name, param] : s.values) {
      if (const auto * v = std::get_if<double>(&param.value)) point[name] = *v;
    }
    const auto trace = simharness::simulate(
      simharness::cutin_from_parameters(point), params.policy, params.dt, params.horizon);
    const auto kpi = simharness::evaluate_kpis(trace);
    collisions += static_cast<std::size_t>(kpi.collision);
    report[s.id] = serialization::kpi_to_json(kpi);
  }
  write_text(out_file, serialization::dump(report));
  return {{"simulated", list.size()}, {"collisions", collisions}};
}

json store_stage(const fs::path & scenarios, const fs::path & root)
{
  store::Library library(root);
  std::size_t added = 0, unchanged = 0;
  for (const auto & s : read_scenarios(scenarios)) {
    if (library.entries().count(s.id) && library.get(s.id) == s) {
      ++unchanged;
      continue;
    }
    library.put(s);
    ++added;
  }
  return {{"added", added}, {"unchanged", unchanged}, {"version", library.version()}};
}

// ---------------------------------------------------------------------------
// Config

PipelineConfig load_pipeline_config(const json & doc, const fs::path & base_dir)
{
  check_keys(
    doc,
    {"seed", "logs", "synthetic", "ingest", "clean", "enrich", "cluster", "density", "generate", "simulate",
     "library", "output"},
    "config");
  PipelineConfig c;
  if (doc.contains("seed")) {
    std::uint64_t seed = 0;
    read_opt(doc, "seed", seed, "config");
    c.seed = seed;
  }
  if (doc.contains("logs") == doc.contains("synthetic")) {
    schema_error("config", "give exactly one of 'logs' or 'synthetic'");
  }
  if (doc.contains("logs")) {
    std::string logs;
    read_opt(doc, "logs", logs, "config");
    c.logs = resolve_existing(base_dir, logs, "config.logs");
  } else {
    const auto & s = doc.at("synthetic");
    check_keys(
      s, {"episodes", "duration", "rate_hz", "jitter", "lead_length", "missing_fraction", "duplicate_fraction"},
      "config.synthetic");
    synthetic::CorpusOptions o;
    read_opt(s, "episodes", o.episodes, "config.synthetic");
    read_opt(s, "duration", o.duration, "config.synthetic");
    read_opt(s, "rate_hz", o.rate_hz, "config.synthetic");
    read_opt(s, "jitter", o.jitter, "config.synthetic");
    read_opt(s, "lead_length", o.lead_length, "config.synthetic");
    read_opt(s, "missing_fraction", o.missing_fraction, "config.synthetic");
    read_opt(s, "duplicate_fraction", o.duplicate_fraction, "config.synthetic");
    c.synthetic = o;
  }
  if (doc.contains("ingest")) {
    check_keys(doc["ingest"], {"strict"}, "config.ingest");
    read_opt(doc["ingest"], "strict", c.strict_ingest, "config.ingest");
  }
  if (doc.contains("clean")) {
    const auto & cl = doc["clean"];
    check_keys(cl, {"rules"}, "config.clean");
    const auto & rules = cl.at("rules");
    if (rules.is_string()) {
      c.rules = serialization::rules_from_json(serialization::read_json_file(
        resolve_existing(base_dir, rules.get<std::string>(), "config.clean.rules")));
    } else {
      c.rules = serialization::rules_from_json(rules);
    }
  }
  if (doc.contains("enrich")) {
    const auto & e = doc["enrich"];
    check_keys(
      e,
      {"ego", "lead", "rate_hz", "sync", "lead_length", "a_max", "ttc_danger", "danger_min_duration",
       "yaw_rate_threshold", "lane_change_min_duration"},
      "config.enrich");
    auto & p = c.enrich;
    read_opt(e, "ego", p.ego_id, "config.enrich");
    read_opt(e, "lead", p.lead_id, "config.enrich");
    read_opt(e, "rate_hz", p.rate_hz, "config.enrich");
    if (e.contains("sync")) {
      std::string sync;
      read_opt(e, "sync", sync, "config.enrich");
      const auto m = ingest::sync_method_from_string(sync);
      if (!m) schema_error("config.enrich.sync", "expected median or spline");
      p.sync = *m;
    }
    read_opt(e, "lead_length", p.annotate.lead_length, "config.enrich");
    read_opt(e, "a_max", p.annotate.a_max, "config.enrich");
    read_opt(e, "danger_min_duration", p.annotate.danger_min_duration, "config.enrich");
    read_opt(e, "lane_change_min_duration", p.annotate.lane_change_min_duration, "config.enrich");
    if (e.contains("ttc_danger")) {
      double v = 0.0;
      read_opt(e, "ttc_danger", v, "config.enrich");
      p.annotate.ttc_danger = v;
    }
    if (e.contains("yaw_rate_threshold")) {
      double v = 0.0;
      read_opt(e, "yaw_rate_threshold", v, "config.enrich");
      p.annotate.yaw_rate_threshold = v;
    }
  }
  if (doc.contains("cluster")) {
    const auto & k = doc["cluster"];
    check_keys(k, {"k", "method", "columns"}, "config.cluster");
    read_opt(k, "k", c.cluster.k, "config.cluster");
    read_opt(k, "columns", c.cluster.columns, "config.cluster");
    if (k.contains("method")) {
      std::string m;
      read_opt(k, "method", m, "config.cluster");
      if (m == "kmeans") c.cluster.method = analyze::ClusterKind::kmeans;
      else if (m == "gmm") c.cluster.method = analyze::ClusterKind::gmm;
      else schema_error("config.cluster.method", "expected kmeans or gmm");
    }
  }
  if (doc.contains("density")) {
    const auto & d = doc["density"];
    check_keys(d, {"kernel", "bandwidth", "columns"}, "config.density");
    read_opt(d, "columns", c.density.columns, "config.density");
    if (d.contains("kernel")) {
      std::string k;
      read_opt(d, "kernel", k, "config.density");
      const auto kernel = density::kernel_from_string(k);
      if (!kernel) schema_error("config.density.kernel", "expected gaussian or epanechnikov");
      c.density.kernel = *kernel;
    }
    if (d.contains("bandwidth")) {
      const auto & bw = d["bandwidth"];
      if (bw.is_number()) c.density.bandwidth = bw.get<double>();
      else if (bw == "silverman") c.density.bandwidth = density::SilvermanRule{};
      else schema_error("config.density.bandwidth", "expected a number or \"silverman\"");
    }
  }
  {
    if (!doc.contains("generate")) schema_error("config", "missing 'generate' section");
    const auto & g = doc["generate"];
    check_keys(g, {"logical", "count"}, "config.generate");
    std::string logical;
    if (!g.contains("logical")) schema_error("config.generate", "missing 'logical'");
    read_opt(g, "logical", logical, "config.generate");
    c.logical = resolve_existing(base_dir, logical, "config.generate.logical");
    read_opt(g, "count", c.count, "config.generate");
  }
  if (doc.contains("simulate")) {
    const auto & s = doc["simulate"];
    check_keys(s, {"policy", "dt", "horizon"}, "config.simulate");
    if (s.contains("policy")) {
      const auto & p = s["policy"];
      c.simulate.policy = p.is_string() ? serialization::policy_from_json(serialization::read_json_file(
                                            resolve_existing(base_dir, p.get<std::string>(), "config.simulate.policy")))
                                        : serialization::policy_from_json(p);
    }
    read_opt(s, "dt", c.simulate.dt, "config.simulate");
    read_opt(s, "horizon", c.simulate.horizon, "config.simulate");
  }
  if (doc.contains("library")) {
    std::string lib;
    read_opt(doc, "library", lib, "config");
    c.library = fs::path(lib);
  }
  if (doc.contains("output")) {
    std::string out;
    read_opt(doc, "output", out, "config");
    c.output = fs::path(out).is_absolute() ? fs::path(out) : base_dir / out;
  }
  return c;
}

PipelineConfig load_pipeline_config(const fs::path & path)
{
  const auto doc = serialization::read_json_file(path);
  return load_pipeline_config(doc, path.has_parent_path() ? path.parent_path() : fs::path("."));
}

json run_pipeline(const PipelineConfig & config, std::uint64_t seed, const fs::path & out_dir)
{
  fs::create_directories(out_dir);
  json report = json::object();
  report["seed"] = seed;

  fs::path raw;
  if (config.synthetic) {
    raw = out_dir / "raw";
    report["synth"] = synth_stage(*config.synthetic, derive_seed(seed, "synth"), raw);
  } else {
    raw = *config.logs;
  }
  report["ingest"] = ingest_stage({raw}, config.strict_ingest, out_dir / "ingested");
  report["clean"] = clean_stage(out_dir / "ingested", config.rules, out_dir / "cleaned");
  report["enrich"] = enrich_stage(out_dir / "cleaned", config.enrich, out_dir / "enriched");
  const fs::path features = out_dir / "enriched" / "features.csv";
  report["cluster"] = cluster_stage(features, config.cluster, derive_seed(seed, "cluster"), out_dir / "cluster.json");
  report["density"] = density_stage(features, config.density, out_dir / "densities.json");
  report["generate"] = generate_random_stage(
    config.logical, out_dir / "densities.json", config.count, derive_seed(seed, "generate"),
    out_dir / "scenarios.json");
  report["simulate"] = simulate_stage(out_dir / "scenarios.json", config.simulate, out_dir / "kpis.json");

  fs::path library;
  if (config.library) {
    library = config.library->is_absolute() ? *config.library : out_dir / *config.library;
  } else if (const char * home = std::getenv("SCENLIB_HOME"); home && *home) {
    library = home;
  } else {
    library = out_dir / "library";
  }
  report["store"] = store_stage(out_dir / "scenarios.json", library);
  json summary = report;
  summary["store"].erase("version");
  summary["store"].erase("unchanged");
  summary["store"].erase("added");
  summary["store"]["stored"] = report["store"]["added"].get<std::size_t>() + report["store"]["unchanged"].get<std::size_t>();
  write_text(out_dir / "pipeline_report.json", serialization::dump(summary));
  return report;
}

}  // namespace scenlib::pipeline
