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

#include "ksbell/context.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

namespace ksbell {

ContextSystem::ContextSystem(std::size_t num_qubits, std::vector<Context> contexts)
    : num_qubits_(num_qubits), contexts_(std::move(contexts)) {
  if (num_qubits_ == 0) {
    throw std::invalid_argument("a context system needs at least one qubit");
  }
  std::map<PauliOperator, std::size_t> index;
  members_.reserve(contexts_.size());
  for (std::size_t c = 0; c < contexts_.size(); ++c) {
    if (contexts_[c].observables.empty()) {
      throw std::invalid_argument(fmt::format("context {} is empty", c + 1));
    }
    std::vector<std::size_t> ids;
    for (const PauliOperator& op : contexts_[c].observables) {
      if (op.num_qubits() != num_qubits_) {
        throw std::invalid_argument(fmt::format(
            "context {} holds a {}-qubit observable in a {}-qubit system", c + 1,
            op.num_qubits(), num_qubits_));
      }
      auto [it, inserted] = index.try_emplace(op, catalog_.size());
      if (inserted) catalog_.push_back({op, 0});
      ++catalog_[it->second].occurrences;
      ids.push_back(it->second);
    }
    members_.push_back(std::move(ids));
  }
}

std::size_t ContextSystem::find(const PauliOperator& op) const {
  for (std::size_t i = 0; i < catalog_.size(); ++i) {
    if (catalog_[i].observable == op) return i;
  }
  return catalog_.size();
}

std::vector<std::size_t> ContextSystem::contexts_containing(std::size_t observable) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < members_.size(); ++c) {
    if (std::ranges::find(members_[c], observable) != members_[c].end()) out.push_back(c);
  }
  return out;
}

PauliOperator context_product(const Context& context, std::size_t num_qubits) {
  PauliOperator product(num_qubits);
  for (const PauliOperator& op : context.observables) product = product * op;
  return product;
}

}  // namespace ksbell
