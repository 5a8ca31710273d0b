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

#include "scenlib/ontology.hpp"

#include "scenlib/error.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

namespace scenlib::ontology
{

std::string_view to_path(ElementCategory category)
{
  switch (category) {
    case ElementCategory::ego_basic: return "ego.basic";
    case ElementCategory::ego_target: return "ego.target";
    case ElementCategory::ego_behavior: return "ego.behavior";
    case ElementCategory::env_weather_light: return "env.weather_light";
    case ElementCategory::env_static_road: return "env.static_road";
    case ElementCategory::env_dynamic_road: return "env.dynamic_road";
    case ElementCategory::env_participants: return "env.participants";
  }
  return "";
}

std::optional<ElementCategory> category_from_path(std::string_view path)
{
  for (const auto category : kAllCategories) {
    if (to_path(category) == path) {
      return category;
    }
  }
  return std::nullopt;
}

std::string_view to_string(ScenarioKind kind)
{
  switch (kind) {
    case ScenarioKind::functional: return "functional";
    case ScenarioKind::logical: return "logical";
    case ScenarioKind::concrete: return "concrete";
  }
  return "";
}

std::optional<ScenarioKind> kind_from_string(std::string_view text)
{
  if (text == "functional") return ScenarioKind::functional;
  if (text == "logical") return ScenarioKind::logical;
  if (text == "concrete") return ScenarioKind::concrete;
  return std::nullopt;
}

std::string format_value(const ParamValue & value)
{
  if (const auto * number = std::get_if<double>(&value)) {
    std::ostringstream out;
    out.precision(17);
    out << *number;
    return out.str();
  }
  return "\"" + std::get<std::string>(value) + "\"";
}

bool in_domain(const Domain & domain, const ParamValue & value)
{
  if (const auto * interval = std::get_if<ContinuousDomain>(&domain)) {
    const auto * number = std::get_if<double>(&value);
    return number != nullptr && std::isfinite(*number) && *number >= interval->lo &&
           *number <= interval->hi;
  }
  const auto & levels = std::get<DiscreteDomain>(domain).levels;
  const auto * level = std::get_if<std::string>(&value);
  if (level == nullptr) {
    return false;
  }
  for (const auto & candidate : levels) {
    if (candidate == *level) {
      return true;
    }
  }
  return false;
}

namespace
{

void check_spec(const std::string & key, const ParameterSpec & spec, ValidationReport & report)
{
  if (spec.name != key) {
    report.push_back({key, "spec name '" + spec.name + "' does not match its key"});
  }
  if (const auto * interval = std::get_if<ContinuousDomain>(&spec.domain)) {
    if (!std::isfinite(interval->lo) || !std::isfinite(interval->hi)) {
      report.push_back({key, "interval bounds must be finite"});
    } else if (!(interval->lo < interval->hi)) {
      report.push_back({key, "lo < hi violated"});
    }
    return;
  }
  const auto & levels = std::get<DiscreteDomain>(spec.domain).levels;
  if (levels.empty()) {
    report.push_back({key, "discrete domain needs at least one level"});
  }
  const std::set<std::string> distinct(levels.begin(), levels.end());
  if (distinct.size() != levels.size()) {
    report.push_back({key, "discrete levels must be distinct"});
  }
}

}  // namespace

ValidationReport validate_scenario(const Scenario & scenario, const Scenario * parent)
{
  ValidationReport report;
  if (scenario.id.empty()) {
    report.push_back({"", "id must not be empty"});
  }
  switch (scenario.kind) {
    case ScenarioKind::functional:
      if (!scenario.specs.empty() || !scenario.values.empty()) {
        report.push_back({"", "functional scenario must not carry parameters"});
      }
      if (scenario.tags.empty()) {
        report.push_back({"", "functional scenario needs at least one tag"});
      }
      break;
    case ScenarioKind::logical:
      if (!scenario.values.empty()) {
        report.push_back({"", "logical scenario must not carry assigned values"});
      }
      for (const auto & [name, spec] : scenario.specs) {
        check_spec(name, spec, report);
      }
      break;
    case ScenarioKind::concrete:
      if (!scenario.specs.empty()) {
        report.push_back({"", "concrete scenario must not carry parameter domains"});
      }
      for (const auto & [name, param] : scenario.values) {
        if (const auto * number = std::get_if<double>(&param.value);
            number != nullptr && !std::isfinite(*number)) {
          report.push_back({name, "value must be finite"});
        }
      }
      break;
  }

  if (parent != nullptr && scenario.kind == ScenarioKind::concrete) {
    if (parent->kind != ScenarioKind::logical) {
      report.push_back({"", "declared parent is not a logical scenario"});
      return report;
    }
    for (const auto & [name, param] : scenario.values) {
      const auto spec = parent->specs.find(name);
      if (spec == parent->specs.end()) {
        report.push_back({name, "parameter not declared by parent"});
      } else if (!in_domain(spec->second.domain, param.value)) {
        report.push_back({name, "value " + format_value(param.value) + " outside parent domain"});
      }
    }
    for (const auto & [name, spec] : parent->specs) {
      if (scenario.values.count(name) == 0) {
        report.push_back({name, "parameter required by parent is missing"});
      }
    }
  }
  return report;
}

namespace
{

std::uint64_t fnv1a(std::string_view text, std::uint64_t hash = 0xcbf29ce484222325ULL)
{
  for (const char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace

Scenario concretize(
  const Scenario & logical, const std::map<std::string, ParamValue> & assignment, std::string id)
{
  if (logical.kind != ScenarioKind::logical) {
    throw Error(ErrorCode::kind_mismatch, "concretize expects a logical scenario");
  }
  for (const auto & [name, spec] : logical.specs) {
    if (assignment.count(name) == 0) {
      throw Error(ErrorCode::missing_parameter, name);
    }
  }
  for (const auto & [name, value] : assignment) {
    const auto spec = logical.specs.find(name);
    if (spec == logical.specs.end()) {
      throw Error(ErrorCode::invalid_argument, "assignment names unknown parameter '" + name + "'");
    }
    if (!in_domain(spec->second.domain, value)) {
      throw Error(ErrorCode::out_of_domain, name + " = " + format_value(value));
    }
  }

  Scenario concrete;
  concrete.kind = ScenarioKind::concrete;
  concrete.tags = logical.tags;
  for (const auto & [name, spec] : logical.specs) {
    concrete.values.emplace(name, ConcreteParam{spec.unit, assignment.at(name), spec.category});
  }
  if (id.empty()) {
    std::uint64_t hash = fnv1a(logical.id);
    for (const auto & [name, value] : assignment) {
      hash = fnv1a(name + "=" + format_value(value) + ";", hash);
    }
    char suffix[24];
    std::snprintf(suffix, sizeof(suffix), ".c%016llx", static_cast<unsigned long long>(hash));
    id = logical.id + suffix;
  }
  concrete.id = std::move(id);
  concrete.provenance["parent"] = logical.id;
  concrete.provenance["source"] = "concretize";
  return concrete;
}

bool contains(const Scenario & logical, const Scenario & concrete)
{
  if (logical.kind != ScenarioKind::logical || concrete.kind != ScenarioKind::concrete) {
    throw Error(ErrorCode::kind_mismatch, "contains expects (logical, concrete)");
  }
  if (logical.specs.size() != concrete.values.size()) {
    return false;
  }
  for (const auto & [name, spec] : logical.specs) {
    const auto value = concrete.values.find(name);
    if (value == concrete.values.end() || !in_domain(spec.domain, value->second.value)) {
      return false;
    }
  }
  return true;
}

}  // namespace scenlib::ontology
