// Copyright 2026 The ksbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace ksbell::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsageError = 2 };

struct Check {
  std::string name;
  bool passed = false;
  nlohmann::ordered_json measured;
  nlohmann::ordered_json expected;
  std::optional<double> tolerance;  // nullopt: exact
};

struct RunReport {
  std::string command;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::optional<std::uint64_t> seed;
  /// Command-specific results (scalars or flat arrays).
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::vector<Check> checks;
  double wall_time_ms = 0;

  bool passed() const;
  void add(std::string name, bool passed, nlohmann::ordered_json measured,
           nlohmann::ordered_json expected, std::optional<double> tolerance = std::nullopt);
};

/// Single flat object. Wall time is included only when `with_timing` is set
/// so that identical invocations produce identical bytes.
std::string render_json(const RunReport& report, bool with_timing);
std::string render_text(const RunReport& report);

/// Runs one command line (argv[0] is the program name).
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace ksbell::cli
