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

#include "scenlib/random.hpp"
#include "scenlib/serialization.hpp"
#include "scenlib/store.hpp"
#include "support/helpers.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

namespace
{

using namespace scenlib::store;
using scenlib::ErrorCode;
using scenlib::ontology::Scenario;
using scenlib::ontology::ScenarioKind;
using scenlib::test::continuous_spec;
using scenlib::test::discrete_spec;
using scenlib::test::logical_scenario;
using scenlib::test::TempDir;

Scenario speed_logical()
{
  auto s = logical_scenario("base", {continuous_spec("speed", 10.0, 30.0), discrete_spec("road", {"dry", "wet"})});
  s.tags = {"highway"};
  return s;
}

Scenario concrete(const std::string & id, double speed, const std::string & road = "dry")
{
  return scenlib::ontology::concretize(speed_logical(), {{"speed", speed}, {"road", road}}, id);
}

TEST(Store, PutThenGetRoundTrip)
{
  TempDir dir;
  Library lib(dir.path());
  const auto s = concrete("c1", 17.25);
  EXPECT_EQ(lib.put(s), "c1");
  EXPECT_EQ(lib.get("c1"), s);
  EXPECT_EQ(lib.get("c1").values, s.values);
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "index.json"));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "scenarios" / "c1.json"));
  Library reopened(dir.path());
  EXPECT_EQ(reopened.get("c1"), s);
  EXPECT_EQ(reopened.version(), lib.version());
  EXPECT_TRUE(reopened.verify().empty());
}

TEST(Store, DuplicateIdRejected)
{
  TempDir dir;
  Library lib(dir.path());
  lib.put(concrete("c1", 15.0));
  EXPECT_SCENLIB_ERROR(lib.put(concrete("c1", 16.0)), ErrorCode::duplicate_id);
}

TEST(Store, InvalidScenarioRejectedWithReport)
{
  TempDir dir;
  Library lib(dir.path());
  auto bad = logical_scenario("inv", {continuous_spec("speed", 30.0, 10.0)});
  std::string message;
  const auto code = scenlib::test::error_code_of([&] { lib.put(bad); }, &message);
  ASSERT_TRUE(code);
  EXPECT_EQ(*code, ErrorCode::validation_failed);
  EXPECT_NE(message.find("speed"), std::string::npos);
  EXPECT_NE(message.find("lo < hi"), std::string::npos);
  EXPECT_TRUE(lib.ids().empty());

  EXPECT_SCENLIB_ERROR(lib.put(concrete("../escape", 15.0)), ErrorCode::invalid_argument);
  EXPECT_FALSE(is_valid_id(".hidden"));
  EXPECT_TRUE(is_valid_id("cut-in.r0001_a"));
}

TEST(Store, UnknownIdNotFound)
{
  TempDir dir;
  Library lib(dir.path());
  EXPECT_SCENLIB_ERROR(lib.get("nope"), ErrorCode::not_found);
}

TEST(Store, CorruptFileNamesPath)
{
  TempDir dir;
  Library lib(dir.path());
  lib.put(concrete("c1", 15.0));
  const auto file = dir.path() / "scenarios" / "c1.json";
  std::ofstream(file) << "{\"id\": \"c1\", \"kind\": 7}";
  std::string message;
  const auto code = scenlib::test::error_code_of([&] { lib.get("c1"); }, &message);
  ASSERT_TRUE(code);
  EXPECT_EQ(*code, ErrorCode::corrupt_entry);
  EXPECT_NE(message.find(file.string()), std::string::npos);
  EXPECT_EQ(lib.verify().size(), 1u);
}

TEST(Store, FaultBeforeIndexRenameKeepsPreviousIndex)
{
  TempDir dir;
  Library lib(dir.path());
  lib.put(concrete("c1", 15.0));
  const auto version = lib.version();
  lib.set_fault_hook([](const std::string & point) {
    if (point == "before_index_rename") throw std::runtime_error("simulated crash");
  });
  EXPECT_THROW(lib.put(concrete("c2", 20.0)), std::runtime_error);
  EXPECT_EQ(lib.ids(), std::vector<std::string>{"c1"});
  EXPECT_EQ(lib.version(), version);

  Library reader(dir.path());
  EXPECT_EQ(reader.ids(), std::vector<std::string>{"c1"});
  EXPECT_EQ(reader.version(), version);
  EXPECT_NO_THROW(reader.get("c1"));
  EXPECT_TRUE(reader.verify().empty());

  lib.set_fault_hook({});
  EXPECT_EQ(lib.put(concrete("c2", 20.0)), "c2");
  EXPECT_EQ(Library(dir.path()).ids(), (std::vector<std::string>{"c1", "c2"}));
}

TEST(Store, VersionStrictlyIncreases)
{
  TempDir dir;
  Library lib(dir.path());
  auto previous = lib.version();
  for (int i = 0; i < 20; ++i) {
    lib.put(concrete("c" + std::to_string(i), 10.0 + i));
    EXPECT_GT(lib.version(), previous);
    previous = lib.version();
  }
}

TEST(Store, OpenDefaultUsesEnvironment)
{
  TempDir dir;
  ::setenv("SCENLIB_HOME", dir.path().c_str(), 1);
  auto lib = Library::open_default();
  lib.put(concrete("env", 12.0));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "scenarios" / "env.json"));
  ::unsetenv("SCENLIB_HOME");
  EXPECT_SCENLIB_ERROR(Library::open_default(), ErrorCode::invalid_argument);
}

TEST(Query, Examples)
{
  TempDir dir;
  Library lib(dir.path());
  for (int i = 0; i < 10; ++i) lib.put(concrete("c" + std::to_string(i), 5.0 * i > 30.0 ? 30.0 : 10.0 + 2.0 * i));
  EXPECT_EQ(lib.search(Query{}), lib.ids());
  EXPECT_SCENLIB_ERROR(Query{}.with_range("speed", 30.0, 10.0), ErrorCode::invalid_argument);
  EXPECT_SCENLIB_ERROR(Query{}.with_range("speed", std::nan(""), 10.0), ErrorCode::invalid_argument);
  const auto ids = lib.search(Query{}.with_range("speed", 12.0, 16.0));
  EXPECT_EQ(ids, (std::vector<std::string>{"c1", "c2", "c3"}));
}

// Oracle: load every stored scenario and filter it directly.
bool oracle_match(const Scenario & s, const Query & q)
{
  for (const auto & tag : q.tags()) {
    if (!s.tags.count(tag)) return false;
  }
  if (q.kind() && *q.kind() != s.kind) return false;
  for (const auto & r : q.ranges()) {
    bool ok = false;
    if (const auto spec = s.specs.find(r.name); spec != s.specs.end()) {
      if (const auto * d = std::get_if<scenlib::ontology::ContinuousDomain>(&spec->second.domain)) {
        ok = d->lo <= r.hi && r.lo <= d->hi;
      }
    }
    if (const auto value = s.values.find(r.name); value != s.values.end()) {
      if (const auto * v = std::get_if<double>(&value->second.value)) ok = r.lo <= *v && *v <= r.hi;
    }
    if (!ok) return false;
  }
  return true;
}

TEST(QueryProperty, SearchEqualsLinearScan)
{
  TempDir dir;
  Library lib(dir.path());
  scenlib::Rng rng(211);
  const std::vector<std::string> tag_pool = {"highway", "urban", "night", "rain", "aeb"};
  for (int i = 0; i < 120; ++i) {
    Scenario s;
    const double u = rng.uniform();
    if (u < 0.6) {
      s = concrete("s" + std::to_string(1000 + i), rng.uniform(10.0, 30.0), rng.uniform() < 0.5 ? "dry" : "wet");
    } else if (u < 0.9) {
      const double lo = rng.uniform(0.0, 40.0);
      s = logical_scenario("s" + std::to_string(1000 + i),
                           {continuous_spec("speed", lo, lo + rng.uniform(1.0, 20.0)),
                            continuous_spec("gap", 1.0, 1.0 + rng.uniform(1.0, 90.0), "m")});
    } else {
      s.id = "s" + std::to_string(1000 + i);
      s.kind = ScenarioKind::functional;
    }
    s.tags.clear();
    for (const auto & tag : tag_pool) {
      if (rng.uniform() < 0.4) s.tags.insert(tag);
    }
    if (s.tags.empty()) s.tags.insert("misc");
    lib.put(s);
  }
  std::vector<Scenario> all;
  for (const auto & id : lib.ids()) all.push_back(lib.get(id));

  for (int q = 0; q < 300; ++q) {
    Query query;
    for (const auto & tag : tag_pool) {
      if (rng.uniform() < 0.15) query.with_tag(tag);
    }
    if (rng.uniform() < 0.3) {
      query.with_kind(static_cast<ScenarioKind>(rng.below(3)));
    }
    const auto ranges = rng.below(3);
    for (std::size_t r = 0; r < ranges; ++r) {
      const double lo = rng.uniform(0.0, 60.0);
      query.with_range(rng.uniform() < 0.7 ? "speed" : "gap", lo, lo + rng.uniform(0.0, 20.0));
    }
    std::vector<std::string> expected;
    for (const auto & s : all) {
      if (oracle_match(s, query)) expected.push_back(s.id);
    }
    EXPECT_EQ(lib.search(query), expected);
  }
}

}  // namespace
