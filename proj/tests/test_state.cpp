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

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "ksbell/constructions.hpp"
#include "ksbell/state.hpp"
#include "ksbell/stats.hpp"
#include "oracle.hpp"

namespace ksbell {
namespace {

Eigen::VectorXcd as_vector(const StateVector& s) {
  Eigen::VectorXcd v(s.dimension());
  for (std::size_t k = 0; k < s.dimension(); ++k) v[k] = s[k];
  return v;
}

StateVector random_state(std::size_t m, std::uint64_t seed) {
  CounterRng rng(seed, 999);
  std::vector<Amplitude> a(std::size_t{1} << m);
  for (auto& x : a) x = {rng.uniform() - 0.5, rng.uniform() - 0.5};
  return StateVector::normalized(m, a);
}

// Pair-by-pair product of a two-qubit amplitude table, placed in the block
// layout: Alice's bits are the high half of the index, Bob's the low half.
std::vector<Amplitude> block_product(std::size_t n, const std::array<Amplitude, 4>& pair) {
  std::vector<Amplitude> out(std::size_t{1} << (2 * n));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t alice = i >> n;
    const std::size_t bob = i & ((std::size_t{1} << n) - 1);
    Amplitude amp = 1;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t shift = n - 1 - k;
      const std::size_t a = (alice >> shift) & 1;
      const std::size_t b = (bob >> shift) & 1;
      amp *= pair[2 * a + b];
    }
    out[i] = amp;
  }
  return out;
}

TEST(BellProductState, SinglePair) {
  const StateVector s = bell_product_state(1);
  const double r = 1 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(s[0] - r), 0, 1e-15);
  EXPECT_EQ(s[1], Amplitude(0));
  EXPECT_EQ(s[2], Amplitude(0));
  EXPECT_NEAR(std::abs(s[3] - r), 0, 1e-15);
}

TEST(BellProductState, TwoPairsMatchExpandedForm) {
  const StateVector s = bell_product_state(2);
  for (std::size_t i = 0; i < 16; ++i) {
    const bool on = i == 0b0000 || i == 0b0101 || i == 0b1010 || i == 0b1111;
    EXPECT_NEAR(std::abs(s[i] - Amplitude(on ? 0.5 : 0.0)), 0, 1e-15) << i;
  }
}

TEST(BellProductState, MatchesBlockProductOracle) {
  const double r = 1 / std::sqrt(2.0);
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto want = block_product(n, {r, 0, 0, r});
    const StateVector s = bell_product_state(n);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < want.size(); ++i) {
      EXPECT_NEAR(std::abs(s[i] - want[i]), 0, 1e-14);
      if (std::abs(s[i]) > 0) {
        ++nonzero;
        EXPECT_NEAR(std::abs(s[i]), std::pow(2.0, -double(n) / 2), 1e-15);
      }
    }
    EXPECT_EQ(nonzero, std::size_t{1} << n);
  }
}

TEST(SingletProductState, MatchesBlockProductOracle) {
  const double r = 1 / std::sqrt(2.0);
  const StateVector one = singlet_product_state(1);
  EXPECT_NEAR(std::abs(one[1] - r), 0, 1e-15);
  EXPECT_NEAR(std::abs(one[2] + r), 0, 1e-15);
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto want = block_product(n, {0, r, -r, 0});
    const StateVector s = singlet_product_state(n);
    EXPECT_NEAR(s.squared_norm(), 1, 1e-12);
    for (std::size_t i = 0; i < want.size(); ++i) {
      EXPECT_NEAR(std::abs(s[i] - want[i]), 0, 1e-14) << "n=" << n << " i=" << i;
    }
  }
}

TEST(SingletProductState, TwoPairSignsAreFlipParity) {
  const StateVector s = singlet_product_state(2);
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < 16; ++i) {
    if (std::abs(s[i]) < 1e-15) continue;
    ++nonzero;
    const std::size_t alice = i >> 2;
    const int sign = std::popcount(alice) % 2 == 0 ? 1 : -1;
    EXPECT_NEAR(std::abs(s[i] - Amplitude(0.5 * sign)), 0, 1e-15);
  }
  EXPECT_EQ(nonzero, 4u);
}

TEST(StateConstructors, PairRange) {
  EXPECT_THROW(bell_product_state(0), std::invalid_argument);
  EXPECT_THROW(bell_product_state(kMaxPairs + 1), std::invalid_argument);
  EXPECT_THROW(singlet_product_state(0), std::invalid_argument);
}

TEST(GhzState, EigenvaluesOfTheFourObservables) {
  const StateVector g = ghz_state();
  EXPECT_NEAR(g.squared_norm(), 1, 1e-12);
  const Eigen::VectorXcd psi = as_vector(g);
  for (const auto& o : ghz_observables()) {
    const Eigen::VectorXcd image = oracle::kron_dense(o.observable) * psi;
    EXPECT_LT((image - double(o.eigenvalue.value()) * psi).norm(), 1e-12)
        << format_pauli(o.observable);
    EXPECT_NEAR(expectation(g, o.observable), o.eigenvalue.value(), 1e-12);
  }
}

TEST(Expectation, Examples) {
  EXPECT_NEAR(expectation(bell_product_state(1), parse_pauli("X1 X2", 2)), 1, 1e-12);
  EXPECT_NEAR(expectation(singlet_product_state(1), parse_pauli("Z1", 2)), 0, 1e-12);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EXPECT_NEAR(expectation(random_state(3, seed), PauliOperator(3)), 1, 1e-12);
  }
}

TEST(Expectation, PauliAndDenseAgree) {
  std::mt19937_64 gen(1);
  for (int t = 0; t < 100; ++t) {
    const StateVector s = random_state(3, t);
    PauliOperator p = oracle::random_pauli(gen, 3);
    p = p.with_phase(p.phase_exponent() & 2);
    const Eigen::VectorXcd v = as_vector(s);
    const double want = (v.adjoint() * oracle::kron_dense(p) * v)(0, 0).real();
    EXPECT_NEAR(expectation(s, p), want, 1e-12);
    EXPECT_NEAR(expectation(s, oracle::kron_dense(p)), want, 1e-12);
  }
}

TEST(Expectation, Errors) {
  const StateVector s = bell_product_state(1);
  EXPECT_THROW(expectation(s, parse_pauli("i Z1", 2)), std::invalid_argument);
  EXPECT_THROW(expectation(s, parse_pauli("Z1", 3)), std::invalid_argument);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 1) = 1;
  EXPECT_THROW(expectation(s, m), std::invalid_argument);
  EXPECT_THROW(expectation(s, Eigen::MatrixXcd::Identity(2, 2)), std::invalid_argument);
}

TEST(Eigenrelation, BuiltInSystems) {
  const ContextSystem square = mermin_square();
  for (const auto& e : square.catalog()) {
    EXPECT_TRUE(eigenrelation_check(2, e.observable)) << format_pauli(e.observable);
  }
  for (std::size_t n = 3; n <= 7; n += 2) {
    const ContextSystem family = generalized_sets(n);
    for (const auto& e : family.catalog()) {
      EXPECT_LT(eigenrelation_residual(n, e.observable), 1e-12) << format_pauli(e.observable);
    }
  }
}

TEST(Eigenrelation, YPicksUpASign) {
  EXPECT_FALSE(eigenrelation_check(1, parse_pauli("Y1", 1)));
  // Y (x) Y maps the Bell state to minus itself.
  EXPECT_NEAR(eigenrelation_residual(1, parse_pauli("Y1", 1)), 2, 1e-12);
  EXPECT_THROW(eigenrelation_check(2, parse_pauli("Z1", 3)), std::invalid_argument);
}

TEST(StateVector, Validation) {
  EXPECT_THROW(StateVector(1, {1, 0, 0}), std::invalid_argument);
  EXPECT_THROW(StateVector(1, {1, 1}), std::invalid_argument);
  EXPECT_THROW(StateVector(0, {1}), std::invalid_argument);
  EXPECT_THROW(StateVector::normalized(1, {0, 0}), std::runtime_error);
  EXPECT_NO_THROW(StateVector(1, {0, 1}));
}

TEST(StateVector, ApplyMatchesDenseOracle) {
  std::mt19937_64 gen(8);
  for (int t = 0; t < 100; ++t) {
    const StateVector s = random_state(4, 100 + t);
    const PauliOperator p = oracle::random_pauli(gen, 4);
    const Eigen::VectorXcd want = oracle::kron_dense(p) * as_vector(s);
    EXPECT_LT((as_vector(s.apply(p)) - want).norm(), 1e-12);
  }
}

TEST(MeasureContext, MerminProductsOnEveryShot) {
  const ContextSystem sq = mermin_square();
  for (std::uint64_t shot = 0; shot < 500; ++shot) {
    const StateVector s = random_state(2, shot);
    CounterRng rng(5, shot);
    for (const auto& ctx : sq.contexts()) {
      const MeasurementResult r = measure_context(s, ctx.observables, rng);
      int prod = 1;
      for (Outcome o : r.outcomes) prod *= o.value();
      ASSERT_EQ(prod, ctx.expected_sign.value());
      EXPECT_NEAR(r.post_state.squared_norm(), 1, 1e-12);
    }
  }
}

TEST(MeasureContext, PostStateIsEigenstate) {
  const StateVector s = random_state(2, 3);
  CounterRng rng(1, 1);
  const ContextSystem square = mermin_square();
  const auto& row = square.contexts()[0].observables;
  const MeasurementResult r = measure_context(s, row, rng);
  for (std::size_t k = 0; k < row.size(); ++k) {
    EXPECT_NEAR(expectation(r.post_state, row[k]), r.outcomes[k].value(), 1e-12);
  }
}

TEST(MeasureContext, Errors) {
  const StateVector s = bell_product_state(1);
  CounterRng rng(0, 0);
  const std::vector<PauliOperator> bad{parse_pauli("X1", 2), parse_pauli("Z1", 2)};
  EXPECT_THROW(measure_context(s, bad, rng), std::invalid_argument);
  EXPECT_THROW(measure(s, parse_pauli("i X1", 2), rng), std::invalid_argument);
  EXPECT_THROW(measure(s, parse_pauli("X1", 3), rng), std::invalid_argument);
}

TEST(Measure, SampledMeanWithinFourSigma) {
  const std::size_t shots = 10000;
  for (const char* text : {"X1 Z2", "Y1", "Z1 Z2 X3"}) {
    const StateVector s = random_state(3, 77);
    const PauliOperator op = parse_pauli(text, 3);
    const double mean = expectation(s, op);
    long sum = 0;
    for (std::size_t shot = 0; shot < shots; ++shot) {
      CounterRng rng(11, shot);
      sum += measure(s, op, rng).outcomes[0].value();
    }
    // Outcome +-1 with mean m has variance 1 - m^2.
    const double sigma = std::sqrt((1 - mean * mean) / shots);
    EXPECT_NEAR(double(sum) / shots, mean, 4 * sigma + 1e-12) << text;
  }
}

// Joint distribution of a context's outcomes does not depend on the order the
// commuting observables are measured in.
TEST(MeasureContext, ReorderingLeavesJointDistributionUnchanged) {
  const StateVector s = random_state(2, 21);
  const ContextSystem square = mermin_square();
  const auto& row = square.contexts()[2].observables;  // X1 Z2, Z1 X2, Y1 Y2
  const std::vector<PauliOperator> reordered{row[2], row[0], row[1]};
  const std::size_t shots = 10000;
  std::array<std::uint64_t, 4> first{}, second{};
  for (std::size_t shot = 0; shot < shots; ++shot) {
    CounterRng ra(31, shot);
    const auto a = measure_context(s, row, ra).outcomes;
    ++first[2 * a[0].bit() + a[1].bit()];
    CounterRng rb(32, shot);
    const auto b = measure_context(s, reordered, rb).outcomes;
    ++second[2 * b[1].bit() + b[2].bit()];
  }
  const ChiSquareResult chi = chi_square_homogeneity(first, second);
  EXPECT_GT(chi.p_value, 0.001) << chi.statistic;
  for (std::size_t k = 0; k < 4; ++k) {
    const double p = (first[k] + second[k]) / (2.0 * shots);
    const double sigma = std::sqrt(2 * shots * p * (1 - p));
    EXPECT_LE(std::abs(double(first[k]) - double(second[k])), 3 * sigma + 1) << k;
  }
}

TEST(QubitLayout, Blocks) {
  const QubitLayout l{3};
  EXPECT_EQ(l.total_qubits(), 6u);
  EXPECT_EQ(l.alice_map(), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(l.bob_map(), (std::vector<std::size_t>{4, 5, 6}));
  EXPECT_EQ(l.on_bob(parse_pauli("X1 Z3", 3)), parse_pauli("X4 Z6", 6));
  EXPECT_EQ(l.on_alice(parse_pauli("X1 Z3", 3)), parse_pauli("X1 Z3", 6));
}

}  // namespace
}  // namespace ksbell
