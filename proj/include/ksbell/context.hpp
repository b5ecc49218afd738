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
#include <vector>

#include "ksbell/pauli.hpp"

namespace ksbell {

/// A set of observables measured together, with the sign their ordered
/// product is expected to carry (product == expected_sign * I).
struct Context {
  std::vector<PauliOperator> observables;
  Outcome expected_sign = Outcome::plus();

  friend bool operator==(const Context&, const Context&) = default;
};

struct CatalogEntry {
  PauliOperator observable;
  std::size_t occurrences = 0;

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

/// A family of contexts over a fixed qubit count together with the catalog of
/// distinct observables they mention. Observables are identified by their
/// full canonical form, phase included. Catalog order is first appearance.
class ContextSystem {
 public:
  explicit ContextSystem(std::size_t num_qubits, std::vector<Context> contexts = {});

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<Context>& contexts() const { return contexts_; }
  const std::vector<CatalogEntry>& catalog() const { return catalog_; }

  /// Catalog indices of the observables of context `c`, in context order.
  const std::vector<std::size_t>& members(std::size_t c) const { return members_.at(c); }
  /// Catalog index of `op`, or catalog().size() when absent.
  std::size_t find(const PauliOperator& op) const;
  /// Indices of the contexts that mention catalog entry `observable`.
  std::vector<std::size_t> contexts_containing(std::size_t observable) const;

  friend bool operator==(const ContextSystem& a, const ContextSystem& b) {
    return a.num_qubits_ == b.num_qubits_ && a.contexts_ == b.contexts_;
  }

 private:
  std::size_t num_qubits_;
  std::vector<Context> contexts_;
  std::vector<CatalogEntry> catalog_;
  std::vector<std::vector<std::size_t>> members_;
};

/// Ordered product of the context's observables.
PauliOperator context_product(const Context& context, std::size_t num_qubits);

}  // namespace ksbell
