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

#ifndef SCENLIB__STORE_HPP_
#define SCENLIB__STORE_HPP_

#include "scenlib/ontology.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace scenlib::store
{

struct RangePredicate
{
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
};

/// Conjunction of tag filters, numeric range predicates and a kind filter.
class Query
{
public:
  Query & with_tag(std::string tag);
  /// Throws InvalidArgument when lo > hi or either bound is NaN.
  Query & with_range(std::string name, double lo, double hi);
  Query & with_kind(ontology::ScenarioKind kind);

  const std::set<std::string> & tags() const { return tags_; }
  const std::vector<RangePredicate> & ranges() const { return ranges_; }
  const std::optional<ontology::ScenarioKind> & kind() const { return kind_; }

private:
  std::set<std::string> tags_;
  std::vector<RangePredicate> ranges_;
  std::optional<ontology::ScenarioKind> kind_;
};

/// Numeric summary of one parameter, as kept in the index. Concrete values
/// have lo == hi.
struct ParamSummary
{
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const ParamSummary &) const = default;
};

struct IndexEntry
{
  ontology::ScenarioKind kind = ontology::ScenarioKind::functional;
  std::set<std::string> tags;
  std::map<std::string, ParamSummary> params;
  std::string file;

  bool operator==(const IndexEntry &) const = default;
};

IndexEntry summarize(const ontology::Scenario & scenario);

/// Query semantics shared by Library::search and any brute-force oracle:
/// all tags present, kind equal, and for each range the parameter exists
/// with a numeric summary overlapping [lo, hi].
bool matches(const Query & query, const IndexEntry & entry);

/// Flat-file library rooted at a directory holding `index.json` and
/// `scenarios/<id>.json`. Single writer, many readers.
class Library
{
public:
  /// Opens (and creates when missing) the library at `root`.
  explicit Library(std::filesystem::path root);

  /// Library rooted at $SCENLIB_HOME. Throws InvalidArgument when unset.
  static Library open_default();

  /// Throws ValidationFailed (listing violations), DuplicateId, StorageFailure.
  std::string put(const ontology::Scenario & scenario);
  /// Throws NotFound, CorruptEntry.
  ontology::Scenario get(const std::string & id) const;
  /// Matching ids in ascending order.
  std::vector<std::string> search(const Query & query) const;

  std::vector<std::string> ids() const;
  std::uint64_t version() const { return version_; }
  const std::map<std::string, IndexEntry> & entries() const { return entries_; }
  const std::filesystem::path & root() const { return root_; }

  /// Re-reads the index from disk.
  void refresh();

  /// Checks that every indexed file exists and parses; returns problems found.
  std::vector<std::string> verify() const;

  /// Test hook called at named commit points ("before_index_rename"). A hook
  /// that throws aborts the commit.
  void set_fault_hook(std::function<void(const std::string &)> hook) { fault_hook_ = std::move(hook); }

private:
  std::filesystem::path index_path() const;
  void write_index(const std::map<std::string, IndexEntry> & entries, std::uint64_t version);

  std::filesystem::path root_;
  std::map<std::string, IndexEntry> entries_;
  std::uint64_t version_ = 0;
  std::function<void(const std::string &)> fault_hook_;
};

/// Ids are used as file names: [A-Za-z0-9._-], not starting with '.'.
bool is_valid_id(const std::string & id);

}  // namespace scenlib::store

#endif  // SCENLIB__STORE_HPP_
