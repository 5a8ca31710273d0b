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

#ifndef SCENLIB__ONTOLOGY_HPP_
#define SCENLIB__ONTOLOGY_HPP_

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace scenlib::ontology
{

/// Leaf categories of the scenario-element taxonomy. The test vehicle itself
/// is part of the scenario (ego.*), the rest describes the environment.
enum class ElementCategory {
  ego_basic,
  ego_target,
  ego_behavior,
  env_weather_light,
  env_static_road,
  env_dynamic_road,
  env_participants,
};

inline constexpr std::array<ElementCategory, 7> kAllCategories = {
  ElementCategory::ego_basic,         ElementCategory::ego_target,
  ElementCategory::ego_behavior,      ElementCategory::env_weather_light,
  ElementCategory::env_static_road,   ElementCategory::env_dynamic_road,
  ElementCategory::env_participants,
};

/// Dotted path, e.g. "env.static_road".
std::string_view to_path(ElementCategory category);
std::optional<ElementCategory> category_from_path(std::string_view path);

/// Closed interval [lo, hi].
struct ContinuousDomain
{
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const ContinuousDomain &) const = default;
};

struct DiscreteDomain
{
  std::vector<std::string> levels;

  bool operator==(const DiscreteDomain &) const = default;
};

using Domain = std::variant<ContinuousDomain, DiscreteDomain>;

struct ParameterSpec
{
  std::string name;
  ElementCategory category = ElementCategory::ego_basic;
  std::string unit;
  Domain domain;

  bool is_continuous() const { return std::holds_alternative<ContinuousDomain>(domain); }
  bool operator==(const ParameterSpec &) const = default;
};

using ParamValue = std::variant<double, std::string>;

/// One assigned parameter of a concrete scenario.
struct ConcreteParam
{
  std::string unit;
  ParamValue value;
  std::optional<ElementCategory> category;

  bool operator==(const ConcreteParam &) const = default;
};

enum class ScenarioKind { functional, logical, concrete };

std::string_view to_string(ScenarioKind kind);
std::optional<ScenarioKind> kind_from_string(std::string_view text);

/// A scenario at one of the three abstraction levels. Logical scenarios fill
/// `specs`, concrete ones fill `values`; functional scenarios carry tags only.
struct Scenario
{
  std::string id;
  ScenarioKind kind = ScenarioKind::functional;
  std::set<std::string> tags;
  std::map<std::string, ParameterSpec> specs;
  std::map<std::string, ConcreteParam> values;
  std::map<std::string, std::string> provenance;

  bool operator==(const Scenario &) const = default;
};

struct Violation
{
  std::string parameter;  // empty for scenario-level violations
  std::string reason;

  bool operator==(const Violation &) const = default;
};

using ValidationReport = std::vector<Violation>;

/// Whether `value` lies in `domain` (closed intervals, listed levels).
bool in_domain(const Domain & domain, const ParamValue & value);

/// Lists every invariant violation of `scenario`. When `parent` is given the
/// concrete values are also checked against the parent's logical domains.
ValidationReport validate_scenario(const Scenario & scenario, const Scenario * parent = nullptr);

/// Builds a concrete scenario from a logical one. Throws MissingParameter,
/// OutOfDomain, KindMismatch. When `id` is empty an id is derived from the
/// parent id and a hash of the assignment.
Scenario concretize(
  const Scenario & logical, const std::map<std::string, ParamValue> & assignment,
  std::string id = {});

/// True iff the parameter name sets match and every value lies in its domain.
/// Throws KindMismatch when the arguments are not (logical, concrete).
bool contains(const Scenario & logical, const Scenario & concrete);

std::string format_value(const ParamValue & value);

}  // namespace scenlib::ontology

#endif  // SCENLIB__ONTOLOGY_HPP_
