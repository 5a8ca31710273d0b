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

#ifndef SCENLIB_TESTS__HELPERS_HPP_
#define SCENLIB_TESTS__HELPERS_HPP_

#include "scenlib/error.hpp"
#include "scenlib/ontology.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <unistd.h>

namespace scenlib::test
{

/// Runs `fn` and returns the code of the scenlib::Error it throws.
inline std::optional<ErrorCode> error_code_of(const std::function<void()> & fn, std::string * message = nullptr)
{
  try {
    fn();
  } catch (const Error & e) {
    if (message != nullptr) *message = e.what();
    return e.code();
  }
  return std::nullopt;
}

#define EXPECT_SCENLIB_ERROR(statement, expected_code)                                   \
  do {                                                                                   \
    const auto scenlib_code_ = ::scenlib::test::error_code_of([&] { (void)(statement); }); \
    ASSERT_TRUE(scenlib_code_.has_value()) << "no scenlib::Error thrown";                \
    EXPECT_EQ(*scenlib_code_, expected_code);                                            \
  } while (false)

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir
{
public:
  TempDir()
  {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("scenlib_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir &) = delete;
  TempDir & operator=(const TempDir &) = delete;

  const std::filesystem::path & path() const { return path_; }

private:
  std::filesystem::path path_;
};

inline ontology::ParameterSpec continuous_spec(
  const std::string & name, double lo, double hi, const std::string & unit = "m/s",
  ontology::ElementCategory category = ontology::ElementCategory::ego_basic)
{
  return {name, category, unit, ontology::ContinuousDomain{lo, hi}};
}

inline ontology::ParameterSpec discrete_spec(
  const std::string & name, std::vector<std::string> levels,
  ontology::ElementCategory category = ontology::ElementCategory::env_static_road)
{
  return {name, category, "", ontology::DiscreteDomain{std::move(levels)}};
}

inline ontology::Scenario logical_scenario(const std::string & id, std::vector<ontology::ParameterSpec> specs)
{
  ontology::Scenario s;
  s.id = id;
  s.kind = ontology::ScenarioKind::logical;
  s.tags = {"test"};
  for (auto & spec : specs) s.specs.emplace(spec.name, std::move(spec));
  return s;
}

inline std::filesystem::path data_dir() { return SCENLIB_DATA_DIR; }

}  // namespace scenlib::test

#endif  // SCENLIB_TESTS__HELPERS_HPP_
