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

#ifndef SCENLIB__DIAGNOSTICS_HPP_
#define SCENLIB__DIAGNOSTICS_HPP_

#include <functional>
#include <string>
#include <vector>

namespace scenlib
{

using WarningSink = std::function<void(const std::string &)>;

/// Emit a non-fatal warning. Goes to stderr unless a sink is installed.
void warn(const std::string & message);

/// Replace the active warning sink, returning the previous one.
WarningSink set_warning_sink(WarningSink sink);

/// Collects warnings for the lifetime of the object (tests, CLI summaries).
class WarningCapture
{
public:
  WarningCapture();
  ~WarningCapture();
  WarningCapture(const WarningCapture &) = delete;
  WarningCapture & operator=(const WarningCapture &) = delete;

  const std::vector<std::string> & messages() const { return messages_; }

private:
  std::vector<std::string> messages_;
  WarningSink previous_;
};

}  // namespace scenlib

#endif  // SCENLIB__DIAGNOSTICS_HPP_
