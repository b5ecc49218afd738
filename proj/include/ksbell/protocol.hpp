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

// Two-observer rounds on n shared Bell pairs. Alice measures a full context
// on her block; Bob measures one observable of that context on his block,
// either by itself or together with the rest of another context containing
// it. Recorded outcomes then pass through a flip/erasure channel.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ksbell/context.hpp"
#include "ksbell/rng.hpp"
#include "ksbell/state.hpp"

namespace ksbell {

enum class BobMode { kAlone, kInContext };

enum class NoiseSides { kBoth, kAliceOnly, kBobOnly };

/// Every recorded outcome on an affected side flips with probability
/// `flip_probability` and is independently lost with probability
/// 1 - `efficiency`.
struct NoiseModel {
  double flip_probability = 0.0;
  double efficiency = 1.0;
  NoiseSides sides = NoiseSides::kBoth;

  /// Throws std::invalid_argument unless 0 <= p <= 1 and 0 < efficiency <= 1.
  void check() const;
  bool ideal() const { return flip_probability == 0.0 && efficiency == 1.0; }
  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

/// nullopt marks an inconclusive (undetected) outcome.
using Recorded = std::optional<Outcome>;

struct RoundRecord {
  std::size_t alice_context = 0;
  std::size_t shared_observable = 0;  // catalog index
  BobMode bob_mode = BobMode::kAlone;
  std::size_t bob_context = 0;  // only meaningful for kInContext
  std::vector<Recorded> alice_outcomes;
  std::vector<Recorded> bob_outcomes;
  std::size_t alice_slot = 0;  // position of the shared observable
  std::size_t bob_slot = 0;
  NoiseModel noise;

  Recorded alice_shared() const { return alice_outcomes[alice_slot]; }
  Recorded bob_shared() const { return bob_outcomes[bob_slot]; }
};

/// The context Bob uses in kInContext mode: the lowest-indexed context other
/// than `alice_context` that contains `observable`, falling back to
/// `alice_context` when the observable appears nowhere else.
std::size_t partner_context(const ContextSystem& system, std::size_t alice_context,
                            std::size_t observable);

/// One round on bell_product_state(system.num_qubits()).
RoundRecord run_round(const ContextSystem& system, std::size_t alice_context,
                      std::size_t shared_observable, BobMode bob_mode,
                      const NoiseModel& noise, CounterRng& rng);

struct ScheduleEntry {
  std::size_t context;
  std::size_t observable;  // catalog index, must belong to `context`
  BobMode bob_mode;
};

/// Every (context, member) pair in order, each once with Bob alone and once
/// with Bob in context.
std::vector<ScheduleEntry> default_schedule(const ContextSystem& system);

struct ExperimentConfig {
  std::size_t shots = 0;
  std::vector<ScheduleEntry> schedule;  // empty: default_schedule
  NoiseModel noise;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct ModeStats {
  std::uint64_t rounds = 0;
  std::uint64_t conclusive = 0;  // both shared outcomes recorded
  std::uint64_t equal = 0;
  /// Joint counts of the shared outcomes (Alice, Bob) over conclusive
  /// rounds, indexed [++, +-, -+, --].
  std::array<std::uint64_t, 4> joint{};

  ModeStats& operator+=(const ModeStats& o);
  friend bool operator==(const ModeStats&, const ModeStats&) = default;
};

struct ProductStats {
  std::uint64_t checked = 0;  // fully conclusive context measurements
  std::uint64_t passed = 0;

  ProductStats& operator+=(const ProductStats& o);
  std::optional<double> rate() const;
  friend bool operator==(const ProductStats&, const ProductStats&) = default;
};

struct ExperimentSummary {
  std::size_t shots = 0;
  std::uint64_t seed = 0;
  NoiseModel noise;
  ModeStats alone;
  ModeStats in_context;
  ProductStats products;
  std::vector<ProductStats> per_context;

  ModeStats combined() const;
  /// Fraction of rounds where both shared outcomes were recorded.
  std::optional<double> conclusive_fraction() const;
  /// Agreement of the shared outcomes over doubly conclusive rounds.
  std::optional<double> equality_rate() const;
  std::optional<double> equality_rate(BobMode mode) const;

  friend bool operator==(const ExperimentSummary&, const ExperimentSummary&) = default;
};

/// Shot s runs schedule[s % schedule.size()] with CounterRng(seed, s), so the
/// summary is identical for any worker count.
ExperimentSummary run_experiment(const ContextSystem& system, const ExperimentConfig& config);

}  // namespace ksbell
