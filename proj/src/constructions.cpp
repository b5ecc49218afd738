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

#include "ksbell/constructions.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace ksbell {

namespace {

// Built-in systems must validate and use every observable exactly twice.
void self_check(const ContextSystem& system, const char* name) {
  const ValidationReport report = validate(system);
  if (!report.passed()) {
    throw std::logic_error(fmt::format("{} failed validation", name));
  }
  for (std::size_t count : report.occurrences) {
    if (count != 2) {
      throw std::logic_error(fmt::format("{}: observable used {} times", name, count));
    }
  }
}

PauliOperator op(std::string_view text, std::size_t n) { return parse_pauli(text, n); }

}  // namespace

ContextSystem mermin_square() {
  const std::size_t n = 2;
  const PauliOperator grid[3][3] = {
      {op("X1", n), op("X2", n), op("X1 X2", n)},
      {op("Z2", n), op("Z1", n), op("Z1 Z2", n)},
      {op("X1 Z2", n), op("Z1 X2", n), op("Y1 Y2", n)},
  };
  std::vector<Context> contexts;
  for (int r = 0; r < 3; ++r) {
    contexts.push_back({{grid[r][0], grid[r][1], grid[r][2]}, Outcome::plus()});
  }
  for (int c = 0; c < 3; ++c) {
    contexts.push_back({{grid[0][c], grid[1][c], grid[2][c]},
                        c == 2 ? Outcome::minus() : Outcome::plus()});
  }
  ContextSystem system(n, std::move(contexts));
  self_check(system, "Mermin square");
  return system;
}

PauliOperator cyclic_triple(std::size_t n, std::size_t i) {
  auto wrap = [n](std::size_t k) { return (k - 1) % n; };  // 1-based -> 0-based
  return PauliOperator(n)
      .with_letter(wrap(i), PauliLetter::X)
      .with_letter(wrap(i + 1), PauliLetter::Z)
      .with_letter(wrap(i + 2), PauliLetter::X);
}

ContextSystem generalized_sets(std::size_t n) {
  if (n % 2 == 0 || n < kMinCyclicQubits || n > kMaxCyclicQubits) {
    throw std::invalid_argument(fmt::format(
        "the cyclic family needs odd n in {}..{}, got {}", kMinCyclicQubits,
        kMaxCyclicQubits, n));
  }
  PauliOperator all_z(n);
  for (std::size_t q = 0; q < n; ++q) all_z = all_z.with_letter(q, PauliLetter::Z);

  std::vector<Context> contexts;
  Context first{{}, Outcome::minus()};
  for (std::size_t i = 1; i <= n; ++i) first.observables.push_back(cyclic_triple(n, i));
  first.observables.push_back(all_z);
  contexts.push_back(std::move(first));

  for (std::size_t i = 1; i <= n; ++i) {
    const PauliOperator triple = cyclic_triple(n, i);
    Context line{{}, Outcome::plus()};
    for (std::size_t offset = 0; offset < 3; ++offset) {
      const std::size_t q = (i - 1 + offset) % n;
      line.observables.push_back(PauliOperator::single(n, q, triple.letter(q)));
    }
    line.observables.push_back(triple);
    contexts.push_back(std::move(line));
  }

  Context last{{}, Outcome::plus()};
  for (std::size_t q = 0; q < n; ++q) {
    last.observables.push_back(PauliOperator::single(n, q, PauliLetter::Z));
  }
  last.observables.push_back(all_z);
  contexts.push_back(std::move(last));

  ContextSystem system(n, std::move(contexts));
  self_check(system, "cyclic family");
  return system;
}

std::vector<SignedObservable> ghz_observables() {
  return {
      {op("X1 Y2 Y3", 3), Outcome::plus()},
      {op("Y1 X2 Y3", 3), Outcome::plus()},
      {op("Y1 Y2 X3", 3), Outcome::plus()},
      {op("X1 X2 X3", 3), Outcome::minus()},
  };
}

ParitySystem ghz_contexts(GhzGrouping grouping) {
  ParitySystem ps;
  const auto observables = ghz_observables();
  if (grouping == GhzGrouping::kTripartite) {
    ps.variables = {"X1", "Y1", "X2", "Y2", "X3", "Y3"};
    auto var = [](std::size_t qubit, PauliLetter l) {
      return 2 * qubit + (l == PauliLetter::Y ? 1 : 0);
    };
    for (const auto& [o, sign] : observables) {
      std::vector<std::size_t> vars;
      for (std::size_t q = 0; q < 3; ++q) vars.push_back(var(q, o.letter(q)));
      ps.rows.push_back(make_row(std::move(vars), sign.bit()));
    }
    return ps;
  }

  // Alice holds qubit 1; Bob holds qubits 2 and 3 and only their products
  // are his elements of reality.
  ps.variables = {"X1", "Y1"};
  for (const auto& [o, sign] : observables) {
    const std::size_t alice = o.letter(0) == PauliLetter::Y ? 1 : 0;
    const std::string bob = fmt::format("{}2 {}3", letter_char(o.letter(1)),
                                        letter_char(o.letter(2)));
    std::size_t bob_var = ps.variables.size();
    for (std::size_t v = 2; v < ps.variables.size(); ++v) {
      if (ps.variables[v] == bob) bob_var = v;
    }
    if (bob_var == ps.variables.size()) ps.variables.push_back(bob);
    ps.rows.push_back(make_row({alice, bob_var}, sign.bit()));
  }
  return ps;
}

bool ValidationReport::passed() const {
  return catalog_failures.empty() && failed_contexts() == 0;
}

std::size_t ValidationReport::failed_contexts() const {
  std::size_t failed = 0;
  for (const ContextCheck& c : contexts) failed += c.passed() ? 0 : 1;
  return failed;
}

ValidationReport validate(const ContextSystem& system) {
  ValidationReport report;
  for (const CatalogEntry& e : system.catalog()) {
    report.occurrences.push_back(e.occurrences);
    if (!e.observable.is_hermitian()) {
      report.catalog_failures.push_back(
          fmt::format("observable '{}' is not Hermitian", format_pauli(e.observable)));
    }
  }
  for (std::size_t c = 0; c < system.contexts().size(); ++c) {
    const Context& ctx = system.contexts()[c];
    ContextCheck check{true, std::nullopt, ctx.expected_sign, {}};
    for (std::size_t i = 0; i < ctx.observables.size(); ++i) {
      for (std::size_t j = i + 1; j < ctx.observables.size(); ++j) {
        if (!commutes(ctx.observables[i], ctx.observables[j])) {
          check.commuting = false;
          check.failures.push_back(fmt::format(
              "'{}' and '{}' anticommute", format_pauli(ctx.observables[i]),
              format_pauli(ctx.observables[j])));
        }
      }
    }
    const PauliOperator product = context_product(ctx, system.num_qubits());
    if (product.is_scalar() && product.is_hermitian()) {
      check.product_sign = product.phase_exponent() == 0 ? Outcome::plus() : Outcome::minus();
      if (*check.product_sign != ctx.expected_sign) {
        check.failures.push_back(fmt::format("product sign {:+d}, expected {:+d}",
                                             check.product_sign->value(),
                                             ctx.expected_sign.value()));
      }
    } else {
      check.failures.push_back(
          fmt::format("product is '{}', not +-I", format_pauli(product)));
    }
    report.contexts.push_back(std::move(check));
  }
  return report;
}

}  // namespace ksbell
