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

// Reader and writer for `.obs` files:
//
//   # comment
//   qubits 2
//   set X1, X2, X1 X2 = +1
//   set X1 X2, Z1 Z2, Y1 Y2 = -1
//
// Each `set` line is one context. Observables are comma separated and use
// the Pauli token syntax of parse_pauli. The sign suffix defaults to +1.

#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ksbell/context.hpp"

namespace ksbell {

class DslError : public std::runtime_error {
 public:
  DslError(std::size_t line, std::size_t column, const std::string& message);

  /// 1-based.
  std::size_t line() const { return line_; }
  /// 1-based byte column.
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses a document. No validation of commutation or signs is done here.
ContextSystem parse_document(std::string_view text);

std::string serialize(const ContextSystem& system);

ContextSystem load_document(const std::filesystem::path& path);

}  // namespace ksbell
