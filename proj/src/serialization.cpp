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

#include "scenlib/serialization.hpp"

#include "scenlib/error.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace scenlib::serialization
{

using ontology::ContinuousDomain;
using ontology::DiscreteDomain;
using ontology::ParameterSpec;
using ontology::Scenario;
using ontology::ScenarioKind;

namespace
{

[[noreturn]] void schema_error(const std::string & where, const std::string & what)
{
  throw Error(ErrorCode::schema_error, where + ": " + what);
}

void reject_unknown_keys(const json & object, std::initializer_list<const char *> allowed, const std::string & where)
{
  for (const auto & [key, value] : object.items()) {
    bool known = false;
    for (const char * name : allowed) {
      if (key == name) known = true;
    }
    if (!known) schema_error(where, "unknown key '" + key + "'");
  }
}

const json & require(const json & object, const char * key, const std::string & where)
{
  const auto it = object.find(key);
  if (it == object.end()) schema_error(where, std::string("missing key '") + key + "'");
  return *it;
}

double number_at(const json & object, const char * key, const std::string & where)
{
  const auto & value = require(object, key, where);
  if (!value.is_number()) schema_error(where + "." + key, "expected a number");
  return value.get<double>();
}

std::string string_at(const json & object, const char * key, const std::string & where)
{
  const auto & value = require(object, key, where);
  if (!value.is_string()) schema_error(where + "." + key, "expected a string");
  return value.get<std::string>();
}

void require_object(const json & doc, const std::string & where)
{
  if (!doc.is_object()) schema_error(where, "expected an object");
}

}  // namespace

json scenario_to_json(const Scenario & scenario)
{
  json params = json::object();
  for (const auto & [name, spec] : scenario.specs) {
    json p = {{"unit", spec.unit}, {"category", std::string(ontology::to_path(spec.category))}};
    if (const auto * interval = std::get_if<ContinuousDomain>(&spec.domain)) {
      p["lo"] = interval->lo;
      p["hi"] = interval->hi;
    } else {
      p["levels"] = std::get<DiscreteDomain>(spec.domain).levels;
    }
    params[name] = std::move(p);
  }
  for (const auto & [name, param] : scenario.values) {
    json p = {{"unit", param.unit}};
    if (param.category) p["category"] = std::string(ontology::to_path(*param.category));
    if (const auto * number = std::get_if<double>(&param.value)) {
      p["value"] = *number;
    } else {
      p["value"] = std::get<std::string>(param.value);
    }
    params[name] = std::move(p);
  }
  return {
    {"id", scenario.id},
    {"kind", std::string(ontology::to_string(scenario.kind))},
    {"tags", scenario.tags},
    {"params", std::move(params)},
    {"provenance", scenario.provenance},
  };
}

Scenario scenario_from_json(const json & doc)
{
  require_object(doc, "scenario");
  reject_unknown_keys(doc, {"id", "kind", "tags", "params", "provenance"}, "scenario");
  Scenario s;
  s.id = string_at(doc, "id", "scenario");
  const auto kind = ontology::kind_from_string(string_at(doc, "kind", "scenario"));
  if (!kind) schema_error("scenario.kind", "expected functional, logical or concrete");
  s.kind = *kind;

  if (const auto tags = doc.find("tags"); tags != doc.end()) {
    if (!tags->is_array()) schema_error("scenario.tags", "expected an array");
    for (const auto & tag : *tags) {
      if (!tag.is_string()) schema_error("scenario.tags", "tags must be strings");
      s.tags.insert(tag.get<std::string>());
    }
  }
  if (const auto prov = doc.find("provenance"); prov != doc.end()) {
    require_object(*prov, "scenario.provenance");
    for (const auto & [key, value] : prov->items()) {
      if (!value.is_string()) schema_error("scenario.provenance." + key, "expected a string");
      s.provenance[key] = value.get<std::string>();
    }
  }
  if (const auto params = doc.find("params"); params != doc.end()) {
    require_object(*params, "scenario.params");
    for (const auto & [name, p] : params->items()) {
      const std::string where = "scenario.params." + name;
      require_object(p, where);
      reject_unknown_keys(p, {"unit", "category", "lo", "hi", "levels", "value"}, where);
      const std::string unit = p.contains("unit") ? string_at(p, "unit", where) : std::string();
      std::optional<ontology::ElementCategory> category;
      if (p.contains("category")) {
        category = ontology::category_from_path(string_at(p, "category", where));
        if (!category) schema_error(where + ".category", "not a taxonomy leaf");
      }
      if (s.kind == ScenarioKind::concrete) {
        if (p.contains("lo") || p.contains("hi") || p.contains("levels")) {
          schema_error(where, "concrete parameters carry a 'value' only");
        }
        const auto & value = require(p, "value", where);
        ontology::ConcreteParam param{unit, 0.0, category};
        if (value.is_number()) {
          param.value = value.get<double>();
        } else if (value.is_string()) {
          param.value = value.get<std::string>();
        } else {
          schema_error(where + ".value", "expected a number or string");
        }
        s.values.emplace(name, std::move(param));
      } else if (s.kind == ScenarioKind::logical) {
        if (p.contains("value")) schema_error(where, "logical parameters carry a domain, not a value");
        if (!category) schema_error(where, "logical parameters need a category");
        ParameterSpec spec{name, *category, unit, ContinuousDomain{}};
        if (p.contains("levels")) {
          if (p.contains("lo") || p.contains("hi")) schema_error(where, "mixes levels and interval");
          const auto & levels = p.at("levels");
          if (!levels.is_array()) schema_error(where + ".levels", "expected an array");
          DiscreteDomain domain;
          for (const auto & level : levels) {
            if (!level.is_string()) schema_error(where + ".levels", "levels must be strings");
            domain.levels.push_back(level.get<std::string>());
          }
          spec.domain = std::move(domain);
        } else {
          spec.domain = ContinuousDomain{number_at(p, "lo", where), number_at(p, "hi", where)};
        }
        s.specs.emplace(name, std::move(spec));
      } else {
        schema_error(where, "functional scenarios carry no parameters");
      }
    }
  }
  return s;
}

json kde_to_json(const density::KdeModel & model)
{
  return {{"kernel", std::string(density::to_string(model.kernel))}, {"h", model.h}, {"samples", model.samples}};
}

density::KdeModel kde_from_json(const json & doc)
{
  require_object(doc, "kde");
  reject_unknown_keys(doc, {"kernel", "h", "samples"}, "kde");
  const auto kernel = density::kernel_from_string(string_at(doc, "kernel", "kde"));
  if (!kernel) schema_error("kde.kernel", "expected gaussian or epanechnikov");
  const double h = number_at(doc, "h", "kde");
  const auto & samples = require(doc, "samples", "kde");
  if (!samples.is_array() || samples.empty()) schema_error("kde.samples", "expected a non-empty array");
  std::vector<double> values;
  for (const auto & v : samples) {
    if (!v.is_number()) schema_error("kde.samples", "samples must be numbers");
    values.push_back(v.get<double>());
  }
  try {
    return density::kde_fit(std::move(values), *kernel, h);
  } catch (const Error & e) {
    schema_error("kde", e.what());
  }
}

json product_density_to_json(const generate::ProductDensity & density)
{
  json out = json::object();
  for (const auto & [name, model] : density) out[name] = kde_to_json(model);
  return out;
}

generate::ProductDensity product_density_from_json(const json & doc)
{
  require_object(doc, "densities");
  generate::ProductDensity out;
  for (const auto & [name, model] : doc.items()) {
    try {
      out.emplace(name, kde_from_json(model));
    } catch (const Error & e) {
      schema_error("densities." + name, e.what());
    }
  }
  return out;
}

json rules_to_json(const std::vector<cleanse::CleaningRule> & rules)
{
  json out = json::array();
  for (const auto & rule : rules) {
    json r = {{"kind", std::string(cleanse::to_string(rule.kind))}};
    if (!rule.channel.empty()) r["channel"] = rule.channel;
    if (rule.kind == cleanse::RuleKind::repair_statistic) {
      r["statistic"] = std::string(cleanse::to_string(rule.statistic));
    }
    if (rule.kind == cleanse::RuleKind::clamp_range) {
      r["lo"] = rule.lo;
      r["hi"] = rule.hi;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<cleanse::CleaningRule> rules_from_json(const json & doc)
{
  if (!doc.is_array()) schema_error("rules", "expected an array of rules");
  std::vector<cleanse::CleaningRule> rules;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string where = "rules[" + std::to_string(i) + "]";
    const auto & r = doc[i];
    require_object(r, where);
    reject_unknown_keys(r, {"kind", "channel", "statistic", "lo", "hi"}, where);
    cleanse::CleaningRule rule;
    const std::string kind = string_at(r, "kind", where);
    if (kind == "drop_duplicate") rule.kind = cleanse::RuleKind::drop_duplicate;
    else if (kind == "drop_missing") rule.kind = cleanse::RuleKind::drop_missing;
    else if (kind == "repair_interpolate") rule.kind = cleanse::RuleKind::repair_interpolate;
    else if (kind == "repair_statistic") rule.kind = cleanse::RuleKind::repair_statistic;
    else if (kind == "clamp_range") rule.kind = cleanse::RuleKind::clamp_range;
    else schema_error(where + ".kind", "unknown rule kind '" + kind + "'");
    if (r.contains("channel")) rule.channel = string_at(r, "channel", where);
    if (rule.kind == cleanse::RuleKind::repair_statistic) {
      const std::string stat = r.contains("statistic") ? string_at(r, "statistic", where) : "mean";
      if (stat == "mean") rule.statistic = cleanse::Statistic::mean;
      else if (stat == "median") rule.statistic = cleanse::Statistic::median;
      else schema_error(where + ".statistic", "expected mean or median");
    }
    if (rule.kind == cleanse::RuleKind::clamp_range) {
      rule.lo = number_at(r, "lo", where);
      rule.hi = number_at(r, "hi", where);
      if (!(rule.lo <= rule.hi)) schema_error(where, "clamp_range needs lo <= hi");
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

json cleaning_report_to_json(const cleanse::CleaningReport & report)
{
  return {
    {"rows_in", report.rows_in},
    {"rows_out", report.rows_out},
    {"repairs", report.repairs},
    {"reconstruction_error", report.reconstruction_error},
  };
}

json events_to_json(const std::vector<enrich::EventAnnotation> & events)
{
  json out = json::array();
  for (const auto & e : events) {
    out.push_back(
      {{"kind", e.kind}, {"t_start", e.t_start}, {"t_end", e.t_end}, {"attributes", e.attributes}});
  }
  return out;
}

json cluster_model_to_json(const analyze::ClusterModel & model)
{
  json out = {
    {"kind", model.kind == analyze::ClusterKind::kmeans ? "kmeans" : "gmm"},
    {"k", model.k},
    {"labels", model.labels},
    {"objective_trace", model.objective_trace},
    {"converged", model.converged},
  };
  if (model.kind == analyze::ClusterKind::kmeans) {
    out["centroids"] = model.means;
  } else {
    out["means"] = model.means;
    out["variances"] = model.variances;
    out["weights"] = model.weights;
    out["responsibilities"] = model.responsibilities;
  }
  return out;
}

json importance_to_json(const analyze::ImportanceScores & scores)
{
  return {
    {"entropy_bits", scores.entropy_bits},
    {"weight", scores.weight},
    {"level_probability", scores.level_probability},
  };
}

json danger_estimate_to_json(const generate::DangerEstimate & e)
{
  return {
    {"method", std::string(generate::to_string(e.method))},
    {"n", e.n_used},
    {"hits", e.hits},
    {"gamma_hat", e.gamma_hat},
    {"std_error", e.std_error},
    {"second_moment", e.second_moment},
    {"summand_variance", e.summand_variance},
    {"weights", {{"min", e.weight_min}, {"max", e.weight_max}, {"mean", e.weight_mean}}},
  };
}

json kpi_to_json(const simharness::KpiReport & r)
{
  return {
    {"safety", {{"collision", r.collision}, {"min_ttc", r.min_ttc ? json(*r.min_ttc) : json(nullptr)}}},
    {"comfort", {{"max_abs_accel", r.max_abs_accel}}},
    {"naturalness", {{"max_jerk", r.max_jerk}}},
    {"economy", {{"speed_loss", r.speed_loss}}},
  };
}

simharness::AebPolicy policy_from_json(const json & doc)
{
  require_object(doc, "policy");
  reject_unknown_keys(doc, {"ttc_trigger", "max_decel", "actuation_delay"}, "policy");
  simharness::AebPolicy p;
  p.ttc_trigger = number_at(doc, "ttc_trigger", "policy");
  p.max_decel = number_at(doc, "max_decel", "policy");
  p.actuation_delay = number_at(doc, "actuation_delay", "policy");
  return p;
}

json policy_to_json(const simharness::AebPolicy & p)
{
  return {{"ttc_trigger", p.ttc_trigger}, {"max_decel", p.max_decel}, {"actuation_delay", p.actuation_delay}};
}

std::string read_text_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::not_found, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json read_json_file(const std::filesystem::path & path)
{
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error & e) {
    schema_error(path.string(), e.what());
  }
}

std::string dump(const json & doc) { return doc.dump(2) + "\n"; }

}  // namespace scenlib::serialization
