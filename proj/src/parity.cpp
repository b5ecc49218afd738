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

#include "ksbell/parity.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "ksbell/pauli.hpp"

namespace ksbell {

namespace {

class BitRow {
 public:
  explicit BitRow(std::size_t bits) : words_((bits + 63) / 64, 0) {}

  bool test(std::size_t k) const { return (words_[k / 64] >> (k % 64)) & 1u; }
  void flip(std::size_t k) { words_[k / 64] ^= std::uint64_t{1} << (k % 64); }
  BitRow& operator^=(const BitRow& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }
  /// Lowest set bit, or npos.
  std::size_t first() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) return w * 64 + std::countr_zero(words_[w]);
    }
    return npos;
  }
  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (std::uint64_t v = words_[w]; v != 0; v &= v - 1) {
        out.push_back(w * 64 + std::countr_zero(v));
      }
    }
    return out;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::uint64_t> words_;
};

struct WorkRow {
  BitRow vars;
  bool rhs;
  BitRow origin;  // which input rows were XORed in
  std::size_t pivot = BitRow::npos;
};

}  // namespace

void ParitySystem::check_indices() const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t v : rows[r].variables) {
      if (v >= variables.size()) {
        throw std::out_of_range(fmt::format(
            "row {} references variable {} but only {} exist", r, v, variables.size()));
      }
    }
  }
}

ParityRow make_row(std::vector<std::size_t> variables, bool rhs) {
  std::ranges::sort(variables);
  ParityRow row{{}, rhs};
  for (std::size_t i = 0; i < variables.size();) {
    std::size_t j = i;
    while (j < variables.size() && variables[j] == variables[i]) ++j;
    if ((j - i) % 2 == 1) row.variables.push_back(variables[i]);
    i = j;
  }
  return row;
}

ParitySystem build_parity_system(const ContextSystem& system) {
  ParitySystem ps;
  ps.variables.reserve(system.catalog().size());
  for (const CatalogEntry& e : system.catalog()) {
    ps.variables.push_back(format_pauli(e.observable));
  }
  for (std::size_t c = 0; c < system.contexts().size(); ++c) {
    ps.rows.push_back(make_row(system.members(c), system.contexts()[c].expected_sign.bit()));
  }
  return ps;
}

SolveResult solve(const ParitySystem& system) {
  system.check_indices();
  const std::size_t nvars = system.variables.size();
  const std::size_t nrows = system.rows.size();

  std::vector<WorkRow> pivots;
  for (std::size_t r = 0; r < nrows; ++r) {
    WorkRow row{BitRow(nvars), system.rows[r].rhs, BitRow(nrows)};
    for (std::size_t v : system.rows[r].variables) row.vars.flip(v);
    row.origin.flip(r);

    // Pivot rows are kept fully reduced, so one pass clears every pivot column.
    for (const WorkRow& p : pivots) {
      if (row.vars.test(p.pivot)) {
        row.vars ^= p.vars;
        row.rhs ^= p.rhs;
        row.origin ^= p.origin;
      }
    }
    row.pivot = row.vars.first();
    if (row.pivot == BitRow::npos) {
      if (row.rhs) return Certificate{row.origin.ones()};
      continue;
    }
    for (WorkRow& p : pivots) {
      if (p.vars.test(row.pivot)) {
        p.vars ^= row.vars;
        p.rhs ^= row.rhs;
        p.origin ^= row.origin;
      }
    }
    pivots.push_back(std::move(row));
  }

  // Free variables are 0; each pivot variable then equals its row's rhs.
  Assignment out{std::vector<Outcome>(nvars, Outcome::plus())};
  for (const WorkRow& p : pivots) out.values[p.pivot] = Outcome::from_bit(p.rhs);
  return out;
}

std::optional<Assignment> brute_force(const ParitySystem& system, unsigned workers) {
  system.check_indices();
  const std::size_t nvars = system.variables.size();
  if (nvars > kMaxBruteForceVariables) {
    throw std::invalid_argument(fmt::format(
        "brute force limited to {} variables, system has {}", kMaxBruteForceVariables,
        nvars));
  }
  // Variable v lives at bit (nvars - 1 - v) so counting upward is lexicographic.
  std::vector<std::uint32_t> masks;
  std::vector<bool> rhs;
  for (const ParityRow& row : system.rows) {
    std::uint32_t m = 0;
    for (std::size_t v : row.variables) m |= std::uint32_t{1} << (nvars - 1 - v);
    masks.push_back(m);
    rhs.push_back(row.rhs);
  }
  auto satisfies = [&](std::uint32_t bits) {
    for (std::size_t r = 0; r < masks.size(); ++r) {
      if (bool(std::popcount(bits & masks[r]) & 1) != rhs[r]) return false;
    }
    return true;
  };

  const std::uint64_t space = std::uint64_t{1} << nvars;
  workers = std::max(1u, workers);
  const std::uint64_t chunk = (space + workers - 1) / workers;
  std::vector<std::optional<std::uint32_t>> found(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::uint64_t lo = w * chunk;
        const std::uint64_t hi = std::min(space, lo + chunk);
        for (std::uint64_t k = lo; k < hi; ++k) {
          if (satisfies(static_cast<std::uint32_t>(k))) {
            found[w] = static_cast<std::uint32_t>(k);
            return;
          }
        }
      });
    }
  }
  for (const auto& hit : found) {
    if (!hit) continue;
    Assignment a;
    for (std::size_t v = 0; v < nvars; ++v) {
      a.values.push_back(Outcome::from_bit((*hit >> (nvars - 1 - v)) & 1u));
    }
    return a;
  }
  return std::nullopt;
}

bool check_certificate(const ParitySystem& system, const Certificate& certificate) {
  if (certificate.rows.empty()) return false;
  std::vector<bool> seen(system.rows.size(), false);
  std::vector<bool> support(system.variables.size(), false);
  bool rhs = false;
  for (std::size_t r : certificate.rows) {
    if (r >= system.rows.size()) {
      throw std::out_of_range(fmt::format("certificate row {} out of range", r));
    }
    if (seen[r]) return false;
    seen[r] = true;
    for (std::size_t v : system.rows[r].variables) {
      if (v >= support.size()) throw std::out_of_range("row variable out of range");
      support[v] = !support[v];
    }
    rhs ^= system.rows[r].rhs;
  }
  return rhs && std::ranges::none_of(support, [](bool b) { return b; });
}

bool check_assignment(const ParitySystem& system, const Assignment& assignment) {
  if (assignment.values.size() != system.variables.size()) {
    throw std::invalid_argument(fmt::format("assignment has {} values for {} variables",
                                            assignment.values.size(),
                                            system.variables.size()));
  }
  for (const ParityRow& row : system.rows) {
    bool parity = false;
    for (std::size_t v : row.variables) {
      if (v >= assignment.values.size()) throw std::out_of_range("row variable out of range");
      parity ^= assignment.values[v].bit();
    }
    if (parity != row.rhs) return false;
  }
  return true;
}

}  // namespace ksbell
