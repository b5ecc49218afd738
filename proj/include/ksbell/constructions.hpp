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
#include <vector>

#include "ksbell/context.hpp"
#include "ksbell/parity.hpp"
#include "ksbell/pauli.hpp"

namespace ksbell {

/// The two-qubit 3x3 square. Contexts are the rows (X1, X2, X1X2),
/// (Z2, Z1, Z1Z2), (X1Z2, Z1X2, Y1Y2) followed by the three columns; only the
/// third column multiplies to -I. Throws std::logic_error if the result does
/// not validate.
ContextSystem mermin_square();

inline constexpr std::size_t kMinCyclicQubits = 3;
inline constexpr std::size_t kMaxCyclicQubits = 13;

/// The n+2 commuting sets over n qubits (n odd, 3..13):
///   1.     X_i Z_{i+1} X_{i+2} for i = 1..n (cyclic), then Z_1...Z_n; sign -1
///   2..n+1 X_i, Z_{i+1}, X_{i+2}, X_i Z_{i+1} X_{i+2};                 sign +1
///   n+2    Z_1, ..., Z_n, Z_1...Z_n;                                    sign +1
/// Throws std::invalid_argument for even or out-of-range n.
ContextSystem generalized_sets(std::size_t n);

/// X_i Z_{i+1} X_{i+2} with 1-based cyclic indices.
PauliOperator cyclic_triple(std::size_t n, std::size_t i);

enum class GhzGrouping { kTripartite, kBipartite };

struct SignedObservable {
  PauliOperator observable;
  Outcome eigenvalue;
};

/// O1 = X1 Y2 Y3 (+1), O2 = Y1 X2 Y3 (+1), O3 = Y1 Y2 X3 (+1),
/// O4 = X1 X2 X3 (-1).
std::vector<SignedObservable> ghz_observables();

/// Realist value equations for the four GHZ observables. Tripartite: one
/// variable per single-particle component. Bipartite: qubit 1 components for
/// Alice and the four two-particle products held by Bob.
ParitySystem ghz_contexts(GhzGrouping grouping);

struct ContextCheck {
  bool commuting = false;
  /// Sign of the ordered product, or nullopt if it is not +-I.
  std::optional<Outcome> product_sign;
  Outcome expected_sign;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

struct ValidationReport {
  std::vector<ContextCheck> contexts;
  std::vector<std::size_t> occurrences;  // per catalog entry
  /// Failures of non-Hermitian observables, not tied to one context.
  std::vector<std::string> catalog_failures;

  bool passed() const;
  std::size_t failed_contexts() const;
};

/// Checks pairwise commutation, Hermiticity and the product sign of each
/// context. Never throws on a bad system; the report carries the failures.
ValidationReport validate(const ContextSystem& system);

}  // namespace ksbell
