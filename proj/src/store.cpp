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

#include "scenlib/store.hpp"

#include "scenlib/error.hpp"
#include "scenlib/serialization.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

namespace scenlib::store
{

namespace fs = std::filesystem;
using serialization::json;

Query & Query::with_tag(std::string tag)
{
  tags_.insert(std::move(tag));
  return *this;
}

Query & Query::with_range(std::string name, double lo, double hi)
{
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    throw Error(ErrorCode::invalid_argument, "range for '" + name + "' needs lo <= hi");
  }
  ranges_.push_back({std::move(name), lo, hi});
  return *this;
}

Query & Query::with_kind(ontology::ScenarioKind kind)
{
  kind_ = kind;
  return *this;
}

IndexEntry summarize(const ontology::Scenario & scenario)
{
  IndexEntry entry;
  entry.kind = scenario.kind;
  entry.tags = scenario.tags;
  entry.file = "scenarios/" + scenario.id + ".json";
  for (const auto & [name, spec] : scenario.specs) {
    if (const auto * interval = std::get_if<ontology::ContinuousDomain>(&spec.domain)) {
      entry.params[name] = {interval->lo, interval->hi};
    }
  }
  for (const auto & [name, param] : scenario.values) {
    if (const auto * number = std::get_if<double>(&param.value)) {
      entry.params[name] = {*number, *number};
    }
  }
  return entry;
}

bool matches(const Query & query, const IndexEntry & entry)
{
  if (query.kind() && *query.kind() != entry.kind) return false;
  for (const auto & tag : query.tags()) {
    if (!entry.tags.count(tag)) return false;
  }
  for (const auto & range : query.ranges()) {
    const auto it = entry.params.find(range.name);
    if (it == entry.params.end()) return false;
    if (it->second.hi < range.lo || it->second.lo > range.hi) return false;
  }
  return true;
}

bool is_valid_id(const std::string & id)
{
  if (id.empty() || id.front() == '.' || id.size() > 200) return false;
  for (const char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '.' || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

namespace
{

json entry_to_json(const IndexEntry & entry)
{
  json params = json::object();
  for (const auto & [name, summary] : entry.params) params[name] = {summary.lo, summary.hi};
  return {
    {"kind", std::string(ontology::to_string(entry.kind))},
    {"tags", entry.tags},
    {"params", std::move(params)},
    {"file", entry.file},
  };
}

IndexEntry entry_from_json(const json & doc)
{
  IndexEntry entry;
  const auto kind = ontology::kind_from_string(doc.at("kind").get<std::string>());
  if (!kind) throw std::invalid_argument("bad kind");
  entry.kind = *kind;
  entry.tags = doc.at("tags").get<std::set<std::string>>();
  for (const auto & [name, pair] : doc.at("params").items()) {
    entry.params[name] = {pair.at(0).get<double>(), pair.at(1).get<double>()};
  }
  entry.file = doc.at("file").get<std::string>();
  return entry;
}

void write_file(const fs::path & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.flush();
  if (!out) {
    throw Error(ErrorCode::storage_failure, "cannot write '" + path.string() + "'");
  }
}

void rename_into_place(const fs::path & from, const fs::path & to)
{
  std::error_code ec;
  fs::rename(from, to, ec);
  if (ec) {
    throw Error(
      ErrorCode::storage_failure, "cannot rename '" + from.string() + "': " + ec.message());
  }
}

}  // namespace

Library::Library(fs::path root) : root_(std::move(root))
{
  std::error_code ec;
  fs::create_directories(root_ / "scenarios", ec);
  if (ec) {
    throw Error(ErrorCode::storage_failure, "cannot create '" + root_.string() + "': " + ec.message());
  }
  refresh();
}

Library Library::open_default()
{
  const char * home = std::getenv("SCENLIB_HOME");
  if (!home || !*home) {
    throw Error(ErrorCode::invalid_argument, "SCENLIB_HOME is not set");
  }
  return Library(home);
}

fs::path Library::index_path() const { return root_ / "index.json"; }

void Library::refresh()
{
  entries_.clear();
  version_ = 0;
  if (!fs::exists(index_path())) return;
  try {
    const json doc = json::parse(serialization::read_text_file(index_path()));
    version_ = doc.at("version").get<std::uint64_t>();
    for (const auto & [id, entry] : doc.at("entries").items()) {
      entries_.emplace(id, entry_from_json(entry));
    }
  } catch (const Error &) {
    throw;
  } catch (const std::exception & e) {
    throw Error(ErrorCode::corrupt_entry, index_path().string() + ": " + e.what());
  }
}

void Library::write_index(const std::map<std::string, IndexEntry> & entries, std::uint64_t version)
{
  json doc_entries = json::object();
  for (const auto & [id, entry] : entries) doc_entries[id] = entry_to_json(entry);
  const json doc = {{"version", version}, {"entries", std::move(doc_entries)}};
  const fs::path tmp = root_ / "index.json.tmp";
  write_file(tmp, serialization::dump(doc));
  if (fault_hook_) fault_hook_("before_index_rename");
  rename_into_place(tmp, index_path());
}

std::string Library::put(const ontology::Scenario & scenario)
{
  const auto report = ontology::validate_scenario(scenario);
  if (!report.empty()) {
    std::string message = "scenario '" + scenario.id + "' is invalid:";
    for (const auto & v : report) {
      message += " [" + (v.parameter.empty() ? std::string("-") : v.parameter) + "] " + v.reason + ";";
    }
    throw Error(ErrorCode::validation_failed, message);
  }
  if (!is_valid_id(scenario.id)) {
    throw Error(ErrorCode::invalid_argument, "id '" + scenario.id + "' is not file-name safe");
  }
  if (entries_.count(scenario.id)) {
    throw Error(ErrorCode::duplicate_id, scenario.id);
  }
  const IndexEntry entry = summarize(scenario);
  const fs::path target = root_ / entry.file;
  const fs::path tmp = target.string() + ".tmp";
  write_file(tmp, serialization::dump(serialization::scenario_to_json(scenario)));
  rename_into_place(tmp, target);

  auto next = entries_;
  next.emplace(scenario.id, entry);
  write_index(next, version_ + 1);
  entries_ = std::move(next);
  ++version_;
  return scenario.id;
}

ontology::Scenario Library::get(const std::string & id) const
{
  const auto it = entries_.find(id);
  if (it == entries_.end()) {
    throw Error(ErrorCode::not_found, id);
  }
  const fs::path path = root_ / it->second.file;
  if (!fs::exists(path)) {
    throw Error(ErrorCode::corrupt_entry, path.string() + ": indexed file is missing");
  }
  try {
    return serialization::scenario_from_json(json::parse(serialization::read_text_file(path)));
  } catch (const std::exception & e) {
    throw Error(ErrorCode::corrupt_entry, path.string() + ": " + e.what());
  }
}

std::vector<std::string> Library::search(const Query & query) const
{
  std::vector<std::string> out;
  for (const auto & [id, entry] : entries_) {
    if (matches(query, entry)) out.push_back(id);
  }
  return out;
}

std::vector<std::string> Library::ids() const
{
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto & [id, entry] : entries_) out.push_back(id);
  return out;
}

std::vector<std::string> Library::verify() const
{
  std::vector<std::string> problems;
  for (const auto & [id, entry] : entries_) {
    try {
      const auto s = get(id);
      if (s.id != id) problems.push_back(id + ": stored id is '" + s.id + "'");
    } catch (const Error & e) {
      problems.push_back(e.what());
    }
  }
  return problems;
}

}  // namespace scenlib::store
