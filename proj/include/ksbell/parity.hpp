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

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ksbell/context.hpp"

namespace ksbell {

/// One parity constraint: the XOR of the listed variable bits equals `rhs`.
/// A variable bit b stands for the value (-1)^b.
struct ParityRow {
  std::vector<std::size_t> variables;  // sorted, distinct
  bool rhs = false;

  friend bool operator==(const ParityRow&, const ParityRow&) = default;
};

struct ParitySystem {
  std::vector<std::string> variables;
  std::vector<ParityRow> rows;

  /// Throws std::out_of_range if any row mentions an unknown variable.
  void check_indices() const;
};

/// Builds a row from a multiset of variable indices; repeated indices cancel
/// in pairs.
ParityRow make_row(std::vector<std::size_t> variables, bool rhs);

/// Values for every variable, in variable order.
struct Assignment {
  std::vector<Outcome> values;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Row indices (0-based, ascending) whose XOR has empty support and rhs 1.
struct Certificate {
  std::vector<std::size_t> rows;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

using SolveResult = std::variant<Assignment, Certificate>;

inline bool is_satisfiable(const SolveResult& r) {
  return std::holds_alternative<Assignment>(r);
}

/// One row per context; the variables are the system's catalog entries and
/// rhs is set exactly when the context's expected sign is -1.
ParitySystem build_parity_system(const ContextSystem& system);

/// Gauss-Jordan elimination over GF(2). Rows are consumed in input order and
/// each new pivot is the lowest remaining variable of the reduced row. A
/// consistent system yields the assignment with every free variable at +1; an
/// inconsistent one yields the set of input rows that combined into the first
/// 0 = 1 row encountered.
SolveResult solve(const ParitySystem& system);

inline constexpr std::size_t kMaxBruteForceVariables = 24;

/// Exhaustive search in lexicographic order (variable 0 most significant,
/// +1 before -1). Returns the first satisfying assignment, or nullopt. The
/// search space is split across `workers` threads; the answer does not
/// depend on the split.
std::optional<Assignment> brute_force(const ParitySystem& system, unsigned workers = 1);

bool check_certificate(const ParitySystem& system, const Certificate& certificate);
bool check_assignment(const ParitySystem& system, const Assignment& assignment);

}  // namespace ksbell
