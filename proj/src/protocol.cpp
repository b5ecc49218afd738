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

#include "ksbell/protocol.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace ksbell {

namespace {

// Observables of every context embedded once into each block.
class RoundEngine {
 public:
  explicit RoundEngine(const ContextSystem& system)
      : system_(system),
        layout_{system.num_qubits()},
        psi_(bell_product_state(system.num_qubits())) {
    for (const Context& c : system.contexts()) {
      std::vector<PauliOperator> a, b;
      for (const PauliOperator& op : c.observables) {
        a.push_back(layout_.on_alice(op));
        b.push_back(layout_.on_bob(op));
      }
      alice_.push_back(std::move(a));
      bob_.push_back(std::move(b));
    }
  }

  RoundRecord run(const ScheduleEntry& entry, const NoiseModel& noise, CounterRng& rng) const {
    const auto& members = system_.members(entry.context);
    const auto slot = std::ranges::find(members, entry.observable);

    RoundRecord rec;
    rec.alice_context = entry.context;
    rec.shared_observable = entry.observable;
    rec.bob_mode = entry.bob_mode;
    rec.alice_slot = static_cast<std::size_t>(slot - members.begin());
    rec.noise = noise;

    MeasurementResult alice = measure_context(psi_, alice_[entry.context], rng);
    std::vector<Outcome> bob_raw;
    if (entry.bob_mode == BobMode::kAlone) {
      const PauliOperator& op = bob_[entry.context][rec.alice_slot];
      bob_raw = measure(alice.post_state, op, rng).outcomes;
      rec.bob_slot = 0;
    } else {
      rec.bob_context = partner_context(system_, entry.context, entry.observable);
      const auto& bob_members = system_.members(rec.bob_context);
      rec.bob_slot = static_cast<std::size_t>(
          std::ranges::find(bob_members, entry.observable) - bob_members.begin());
      bob_raw = measure_context(alice.post_state, bob_[rec.bob_context], rng).outcomes;
    }

    const bool noisy_alice = noise.sides != NoiseSides::kBobOnly;
    const bool noisy_bob = noise.sides != NoiseSides::kAliceOnly;
    rec.alice_outcomes = record(alice.outcomes, noise, noisy_alice, rng);
    rec.bob_outcomes = record(bob_raw, noise, noisy_bob, rng);
    return rec;
  }

 private:
  static std::vector<Recorded> record(const std::vector<Outcome>& raw, const NoiseModel& noise,
                                      bool affected, CounterRng& rng) {
    std::vector<Recorded> out;
    out.reserve(raw.size());
    for (Outcome o : raw) {
      if (!affected) {
        out.emplace_back(o);
        continue;
      }
      const bool flip = rng.bernoulli(noise.flip_probability);
      const bool lost = !rng.bernoulli(noise.efficiency);
      if (lost) {
        out.emplace_back(std::nullopt);
      } else {
        out.emplace_back(flip ? -o : o);
      }
    }
    return out;
  }

  const ContextSystem& system_;
  QubitLayout layout_;
  StateVector psi_;
  std::vector<std::vector<PauliOperator>> alice_;
  std::vector<std::vector<PauliOperator>> bob_;
};

void check_ids(const ContextSystem& system, std::size_t context, std::size_t observable) {
  if (context >= system.contexts().size()) {
    throw std::invalid_argument(fmt::format("unknown context id {}", context));
  }
  if (observable >= system.catalog().size()) {
    throw std::invalid_argument(fmt::format("unknown observable id {}", observable));
  }
  if (std::ranges::find(system.members(context), observable) == system.members(context).end()) {
    throw std::invalid_argument(
        fmt::format("observable {} is not in context {}", observable, context));
  }
}

// Product of a recorded context, or nullopt if any entry is inconclusive.
std::optional<Outcome> recorded_product(const std::vector<Recorded>& outcomes) {
  Outcome p = Outcome::plus();
  for (const Recorded& r : outcomes) {
    if (!r) return std::nullopt;
    p = p * *r;
  }
  return p;
}

struct Tally {
  ModeStats alone;
  ModeStats in_context;
  ProductStats products;
  std::vector<ProductStats> per_context;

  void add(const ContextSystem& system, const RoundRecord& rec) {
    ModeStats& mode = rec.bob_mode == BobMode::kAlone ? alone : in_context;
    ++mode.rounds;
    const Recorded a = rec.alice_shared();
    const Recorded b = rec.bob_shared();
    if (a && b) {
      ++mode.conclusive;
      if (*a == *b) ++mode.equal;
      ++mode.joint[2 * std::size_t(a->bit()) + std::size_t(b->bit())];
    }
    check_product(system, rec.alice_context, rec.alice_outcomes);
    if (rec.bob_mode == BobMode::kInContext) {
      check_product(system, rec.bob_context, rec.bob_outcomes);
    }
  }

  void check_product(const ContextSystem& system, std::size_t context,
                     const std::vector<Recorded>& outcomes) {
    const auto product = recorded_product(outcomes);
    if (!product) return;
    const bool ok = *product == system.contexts()[context].expected_sign;
    ++products.checked;
    ++per_context[context].checked;
    products.passed += ok;
    per_context[context].passed += ok;
  }

  Tally& operator+=(const Tally& o) {
    alone += o.alone;
    in_context += o.in_context;
    products += o.products;
    for (std::size_t c = 0; c < per_context.size(); ++c) per_context[c] += o.per_context[c];
    return *this;
  }
};

}  // namespace

void NoiseModel::check() const {
  if (!(flip_probability >= 0.0 && flip_probability <= 1.0)) {
    throw std::invalid_argument(
        fmt::format("flip probability must lie in [0, 1], got {}", flip_probability));
  }
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw std::invalid_argument(
        fmt::format("efficiency must lie in (0, 1], got {}", efficiency));
  }
}

std::size_t partner_context(const ContextSystem& system, std::size_t alice_context,
                            std::size_t observable) {
  check_ids(system, alice_context, observable);
  for (std::size_t c : system.contexts_containing(observable)) {
    if (c != alice_context) return c;
  }
  return alice_context;
}

RoundRecord run_round(const ContextSystem& system, std::size_t alice_context,
                      std::size_t shared_observable, BobMode bob_mode,
                      const NoiseModel& noise, CounterRng& rng) {
  noise.check();
  check_ids(system, alice_context, shared_observable);
  return RoundEngine(system).run({alice_context, shared_observable, bob_mode}, noise, rng);
}

std::vector<ScheduleEntry> default_schedule(const ContextSystem& system) {
  std::vector<ScheduleEntry> schedule;
  for (std::size_t c = 0; c < system.contexts().size(); ++c) {
    for (std::size_t id : system.members(c)) {
      schedule.push_back({c, id, BobMode::kAlone});
      schedule.push_back({c, id, BobMode::kInContext});
    }
  }
  return schedule;
}

ModeStats& ModeStats::operator+=(const ModeStats& o) {
  rounds += o.rounds;
  conclusive += o.conclusive;
  equal += o.equal;
  for (std::size_t k = 0; k < joint.size(); ++k) joint[k] += o.joint[k];
  return *this;
}

ProductStats& ProductStats::operator+=(const ProductStats& o) {
  checked += o.checked;
  passed += o.passed;
  return *this;
}

std::optional<double> ProductStats::rate() const {
  if (checked == 0) return std::nullopt;
  return static_cast<double>(passed) / static_cast<double>(checked);
}

ModeStats ExperimentSummary::combined() const {
  ModeStats all = alone;
  all += in_context;
  return all;
}

std::optional<double> ExperimentSummary::conclusive_fraction() const {
  const ModeStats all = combined();
  if (all.rounds == 0) return std::nullopt;
  return static_cast<double>(all.conclusive) / static_cast<double>(all.rounds);
}

std::optional<double> ExperimentSummary::equality_rate() const {
  const ModeStats all = combined();
  if (all.conclusive == 0) return std::nullopt;
  return static_cast<double>(all.equal) / static_cast<double>(all.conclusive);
}

std::optional<double> ExperimentSummary::equality_rate(BobMode mode) const {
  const ModeStats& m = mode == BobMode::kAlone ? alone : in_context;
  if (m.conclusive == 0) return std::nullopt;
  return static_cast<double>(m.equal) / static_cast<double>(m.conclusive);
}

ExperimentSummary run_experiment(const ContextSystem& system, const ExperimentConfig& config) {
  config.noise.check();
  const std::vector<ScheduleEntry> schedule =
      config.schedule.empty() ? default_schedule(system) : config.schedule;
  for (const ScheduleEntry& e : schedule) check_ids(system, e.context, e.observable);

  ExperimentSummary summary;
  summary.shots = config.shots;
  summary.seed = config.seed;
  summary.noise = config.noise;
  summary.per_context.resize(system.contexts().size());
  if (config.shots == 0 || schedule.empty()) return summary;

  const RoundEngine engine(system);
  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::size_t>(config.workers, 1, config.shots));
  const std::size_t chunk = (config.shots + workers - 1) / workers;
  std::vector<Tally> partial(workers, Tally{{}, {}, {}, summary.per_context});
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(config.shots, lo + chunk);
        for (std::size_t s = lo; s < hi; ++s) {
          CounterRng rng(config.seed, s);
          partial[w].add(system, engine.run(schedule[s % schedule.size()], config.noise, rng));
        }
      });
    }
  }
  Tally total{{}, {}, {}, summary.per_context};
  for (const Tally& t : partial) total += t;
  summary.alone = total.alone;
  summary.in_context = total.in_context;
  summary.products = total.products;
  summary.per_context = std::move(total.per_context);
  return summary;
}

}  // namespace ksbell
