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

#include <algorithm>
#include <random>

#include "ksbell/constructions.hpp"
#include "oracle.hpp"

namespace ksbell {
namespace {

std::vector<int> expected_signs(const ContextSystem& s) {
  std::vector<int> out;
  for (const auto& c : s.contexts()) out.push_back(c.expected_sign.value());
  return out;
}

// Ordered product through literal Kronecker matrices, compared to +-I.
void expect_dense_products(const ContextSystem& s) {
  const std::size_t dim = std::size_t{1} << s.num_qubits();
  for (std::size_t c = 0; c < s.contexts().size(); ++c) {
    const Context& ctx = s.contexts()[c];
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& o : ctx.observables) prod = prod * oracle::kron_dense(o);
    const Eigen::MatrixXcd want =
        double(ctx.expected_sign.value()) * Eigen::MatrixXcd::Identity(dim, dim);
    EXPECT_EQ(prod, want) << "context " << c + 1;
    for (std::size_t i = 0; i < ctx.observables.size(); ++i) {
      for (std::size_t j = i + 1; j < ctx.observables.size(); ++j) {
        const Eigen::MatrixXcd a = oracle::kron_dense(ctx.observables[i]);
        const Eigen::MatrixXcd b = oracle::kron_dense(ctx.observables[j]);
        EXPECT_EQ(a * b, b * a);
      }
    }
  }
}

TEST(MerminSquare, Structure) {
  const ContextSystem s = mermin_square();
  EXPECT_EQ(s.num_qubits(), 2u);
  EXPECT_EQ(s.contexts().size(), 6u);
  EXPECT_EQ(s.catalog().size(), 9u);
  for (const auto& e : s.catalog()) EXPECT_EQ(e.occurrences, 2u);
  for (const auto& c : s.contexts()) EXPECT_EQ(c.observables.size(), 3u);
  EXPECT_EQ(expected_signs(s), (std::vector<int>{1, 1, 1, 1, 1, -1}));
}

TEST(MerminSquare, ValidatesWithSignsPlusExceptLastColumn) {
  const ValidationReport r = validate(mermin_square());
  ASSERT_TRUE(r.passed());
  std::vector<int> signs;
  for (const auto& c : r.contexts) {
    EXPECT_TRUE(c.commuting);
    ASSERT_TRUE(c.product_sign.has_value());
    signs.push_back(c.product_sign->value());
  }
  EXPECT_EQ(signs, (std::vector<int>{1, 1, 1, 1, 1, -1}));
}

TEST(MerminSquare, DenseOracle) { expect_dense_products(mermin_square()); }

TEST(GeneralizedSets, Structure) {
  for (std::size_t n = 3; n <= 13; n += 2) {
    const ContextSystem s = generalized_sets(n);
    EXPECT_EQ(s.num_qubits(), n);
    EXPECT_EQ(s.contexts().size(), n + 2);
    EXPECT_EQ(s.catalog().size(), 3 * n + 1);
    for (const auto& e : s.catalog()) EXPECT_EQ(e.occurrences, 2u);
    std::vector<int> want(n + 2, 1);
    want[0] = -1;
    EXPECT_EQ(expected_signs(s), want);
    EXPECT_EQ(s.contexts()[0].observables.size(), n + 1);
    EXPECT_TRUE(validate(s).passed()) << "n=" << n;
  }
}

TEST(GeneralizedSets, SevenQubitsHasTwentyTwoObservables) {
  const ValidationReport r = validate(generalized_sets(7));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.occurrences.size(), 22u);
  for (std::size_t k : r.occurrences) EXPECT_EQ(k, 2u);
}

TEST(GeneralizedSets, FirstAndLastContexts) {
  const ContextSystem s = generalized_sets(5);
  const auto& first = s.contexts().front().observables;
  EXPECT_EQ(first[0], parse_pauli("X1 Z2 X3", 5));
  EXPECT_EQ(first[4], parse_pauli("X5 Z1 X2", 5));
  EXPECT_EQ(first[5], parse_pauli("Z1 Z2 Z3 Z4 Z5", 5));
  const auto& last = s.contexts().back().observables;
  ASSERT_EQ(last.size(), 6u);
  for (std::size_t q = 0; q < 5; ++q) {
    EXPECT_EQ(last[q], parse_pauli("Z" + std::to_string(q + 1), 5));
  }
  // Each middle context is one triple with its three single-qubit factors.
  const auto& second = s.contexts()[1].observables;
  EXPECT_EQ(second, (std::vector<PauliOperator>{parse_pauli("X1", 5), parse_pauli("Z2", 5),
                                                parse_pauli("X3", 5),
                                                parse_pauli("X1 Z2 X3", 5)}));
}

TEST(GeneralizedSets, CyclicWrap) {
  EXPECT_EQ(cyclic_triple(7, 6), parse_pauli("X6 Z7 X1", 7));
  EXPECT_EQ(cyclic_triple(7, 7), parse_pauli("X7 Z1 X2", 7));
  EXPECT_EQ(cyclic_triple(3, 1), parse_pauli("X1 Z2 X3", 3));
}

TEST(GeneralizedSets, RejectsEvenAndOutOfRange) {
  for (std::size_t n : {0, 1, 2, 4, 6, 15}) {
    EXPECT_THROW(generalized_sets(n), std::invalid_argument) << n;
  }
}

TEST(GeneralizedSets, DenseOracleUpToSeven) {
  for (std::size_t n = 3; n <= 7; n += 2) expect_dense_products(generalized_sets(n));
}

TEST(Constructions, ProductSignIsOrderIndependent) {
  std::mt19937_64 gen(42);
  std::vector<ContextSystem> systems{mermin_square()};
  for (std::size_t n = 3; n <= 9; n += 2) systems.push_back(generalized_sets(n));
  for (const auto& s : systems) {
    for (const auto& ctx : s.contexts()) {
      for (int k = 0; k < 10; ++k) {
        Context shuffled = ctx;
        std::shuffle(shuffled.observables.begin(), shuffled.observables.end(), gen);
        const PauliOperator p = context_product(shuffled, s.num_qubits());
        EXPECT_TRUE(p.is_scalar());
        EXPECT_EQ(p.phase_exponent(), ctx.expected_sign == Outcome::plus() ? 0 : 2);
      }
    }
  }
}

TEST(Validate, TamperedSignFlagsExactlyOneContext) {
  const ContextSystem base = generalized_sets(5);
  for (std::size_t c = 0; c < base.contexts().size(); ++c) {
    std::vector<Context> contexts = base.contexts();
    contexts[c].expected_sign = -contexts[c].expected_sign;
    const ValidationReport r = validate(ContextSystem(5, contexts));
    EXPECT_FALSE(r.passed());
    EXPECT_EQ(r.failed_contexts(), 1u);
    for (std::size_t k = 0; k < r.contexts.size(); ++k) {
      EXPECT_EQ(r.contexts[k].passed(), k != c);
    }
  }
}

TEST(Validate, NonCommutingContextIsReported) {
  const ContextSystem s(1, {Context{{parse_pauli("X1", 1), parse_pauli("Z1", 1)}, Outcome::plus()}});
  const ValidationReport r = validate(s);
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.contexts[0].commuting);
  EXPECT_FALSE(r.contexts[0].product_sign.has_value());
}

TEST(Validate, NonScalarProductIsReported) {
  const ContextSystem s(2, {Context{{parse_pauli("Z1", 2), parse_pauli("Z2", 2)}, Outcome::plus()}});
  const ValidationReport r = validate(s);
  EXPECT_FALSE(r.passed());
  EXPECT_TRUE(r.contexts[0].commuting);
  EXPECT_FALSE(r.contexts[0].product_sign.has_value());
}

TEST(Validate, NonHermitianObservableIsReported) {
  const ContextSystem s(1, {Context{{parse_pauli("i Z1", 1), parse_pauli("i Z1", 1)},
                                    Outcome::minus()}});
  const ValidationReport r = validate(s);
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.catalog_failures.empty());
}

TEST(Ghz, OperatorProductIsMinusIdentity) {
  const auto obs = ghz_observables();
  ASSERT_EQ(obs.size(), 4u);
  PauliOperator prod(3);
  Eigen::MatrixXcd dense = Eigen::MatrixXcd::Identity(8, 8);
  for (const auto& o : obs) {
    prod = prod * o.observable;
    dense = dense * oracle::kron_dense(o.observable);
  }
  EXPECT_TRUE(prod.is_scalar());
  EXPECT_EQ(prod.phase_exponent(), 2);
  EXPECT_EQ(dense, -Eigen::MatrixXcd::Identity(8, 8));
  EXPECT_EQ(obs[0].observable, parse_pauli("X1 Y2 Y3", 3));
  EXPECT_EQ(obs[3].observable, parse_pauli("X1 X2 X3", 3));
  std::vector<int> signs;
  for (const auto& o : obs) signs.push_back(o.eigenvalue.value());
  EXPECT_EQ(signs, (std::vector<int>{1, 1, 1, -1}));
}

TEST(Ghz, ObservablesPairwiseCommute) {
  const auto obs = ghz_observables();
  for (const auto& a : obs) {
    for (const auto& b : obs) EXPECT_TRUE(commutes(a.observable, b.observable));
  }
}

TEST(Ghz, GroupingShapes) {
  const ParitySystem tri = ghz_contexts(GhzGrouping::kTripartite);
  EXPECT_EQ(tri.variables.size(), 6u);
  ASSERT_EQ(tri.rows.size(), 4u);
  for (const auto& r : tri.rows) EXPECT_EQ(r.variables.size(), 3u);
  const ParitySystem bi = ghz_contexts(GhzGrouping::kBipartite);
  EXPECT_EQ(bi.variables.size(), 6u);
  ASSERT_EQ(bi.rows.size(), 4u);
  for (const auto& r : bi.rows) EXPECT_EQ(r.variables.size(), 2u);
  for (const auto* ps : {&tri, &bi}) {
    EXPECT_EQ(ps->rows[0].rhs, false);
    EXPECT_EQ(ps->rows[1].rhs, false);
    EXPECT_EQ(ps->rows[2].rhs, false);
    EXPECT_EQ(ps->rows[3].rhs, true);
  }
}

TEST(ContextSystem, EmptySystemAllowed) {
  const ContextSystem s(3);
  EXPECT_TRUE(s.contexts().empty());
  EXPECT_TRUE(s.catalog().empty());
  EXPECT_TRUE(validate(s).passed());
}

TEST(ContextSystem, Errors) {
  EXPECT_THROW(ContextSystem(0), std::invalid_argument);
  EXPECT_THROW(ContextSystem(2, {Context{}}), std::invalid_argument);
  EXPECT_THROW(ContextSystem(2, {Context{{parse_pauli("X1", 1)}, Outcome::plus()}}),
               std::invalid_argument);
}

TEST(ContextSystem, CatalogLookup) {
  const ContextSystem s = mermin_square();
  const std::size_t yy = s.find(parse_pauli("Y1 Y2", 2));
  ASSERT_LT(yy, s.catalog().size());
  EXPECT_EQ(s.contexts_containing(yy), (std::vector<std::size_t>{2, 5}));
  EXPECT_EQ(s.find(parse_pauli("Y1", 2)), s.catalog().size());
  EXPECT_EQ(s.find(parse_pauli("- Y1 Y2", 2)), s.catalog().size());
}

}  // namespace
}  // namespace ksbell
