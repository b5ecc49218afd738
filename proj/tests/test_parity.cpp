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

#include <numeric>
#include <random>

#include "ksbell/constructions.hpp"
#include "ksbell/parity.hpp"
#include "oracle.hpp"

namespace ksbell {
namespace {

std::vector<std::size_t> all_rows(const ParitySystem& ps) {
  std::vector<std::size_t> rows(ps.rows.size());
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

std::size_t count_rhs(const ParitySystem& ps) {
  std::size_t k = 0;
  for (const auto& r : ps.rows) k += r.rhs;
  return k;
}

Assignment signs(std::initializer_list<int> v) {
  Assignment a;
  for (int x : v) a.values.push_back(Outcome(x));
  return a;
}

TEST(BuildParitySystem, Mermin) {
  const ParitySystem ps = build_parity_system(mermin_square());
  EXPECT_EQ(ps.variables.size(), 9u);
  EXPECT_EQ(ps.rows.size(), 6u);
  EXPECT_EQ(count_rhs(ps), 1u);
  EXPECT_TRUE(ps.rows.back().rhs);
  EXPECT_EQ(ps.variables.front(), "X1");
}

TEST(BuildParitySystem, GeneralizedFive) {
  const ParitySystem ps = build_parity_system(generalized_sets(5));
  EXPECT_EQ(ps.variables.size(), 16u);
  EXPECT_EQ(ps.rows.size(), 7u);
  EXPECT_EQ(count_rhs(ps), 1u);
  EXPECT_TRUE(ps.rows.front().rhs);
}

TEST(BuildParitySystem, EmptySystem) {
  const ParitySystem ps = build_parity_system(ContextSystem(2));
  EXPECT_TRUE(ps.rows.empty());
  EXPECT_TRUE(is_satisfiable(solve(ps)));
}

TEST(Solve, MerminIsUnsatWithAllRows) {
  const ParitySystem ps = build_parity_system(mermin_square());
  const SolveResult r = solve(ps);
  ASSERT_FALSE(is_satisfiable(r));
  const auto& cert = std::get<Certificate>(r);
  EXPECT_EQ(cert.rows, all_rows(ps));
  EXPECT_TRUE(check_certificate(ps, cert));
  EXPECT_FALSE(brute_force(ps).has_value());
}

TEST(Solve, GeneralizedFamilyIsUnsatWithAllRows) {
  for (std::size_t n = 3; n <= 13; n += 2) {
    const ParitySystem ps = build_parity_system(generalized_sets(n));
    const SolveResult r = solve(ps);
    ASSERT_FALSE(is_satisfiable(r)) << n;
    EXPECT_EQ(std::get<Certificate>(r).rows, all_rows(ps)) << n;
    EXPECT_TRUE(check_certificate(ps, Certificate{all_rows(ps)}));
    if (n <= 7) EXPECT_FALSE(brute_force(ps, 4).has_value()) << n;
  }
}

TEST(Solve, GhzGroupings) {
  const ParitySystem tri = ghz_contexts(GhzGrouping::kTripartite);
  const SolveResult rt = solve(tri);
  ASSERT_FALSE(is_satisfiable(rt));
  EXPECT_TRUE(check_certificate(tri, std::get<Certificate>(rt)));
  EXPECT_FALSE(brute_force(tri).has_value());

  const ParitySystem bi = ghz_contexts(GhzGrouping::kBipartite);
  const SolveResult rb = solve(bi);
  ASSERT_TRUE(is_satisfiable(rb));
  EXPECT_TRUE(check_assignment(bi, std::get<Assignment>(rb)));
  EXPECT_TRUE(brute_force(bi).has_value());
}

TEST(CheckAssignment, BipartiteWitness) {
  const ParitySystem bi = ghz_contexts(GhzGrouping::kBipartite);
  // x1, y1, (Y2 Y3), (X2 Y3), (Y2 X3), (X2 X3)
  EXPECT_TRUE(check_assignment(bi, signs({1, 1, 1, 1, 1, -1})));
  EXPECT_FALSE(check_assignment(bi, signs({1, 1, 1, 1, 1, 1})));
  EXPECT_THROW(check_assignment(bi, signs({1, 1})), std::invalid_argument);
}

TEST(CheckCertificate, Examples) {
  const ParitySystem ps = build_parity_system(mermin_square());
  EXPECT_TRUE(check_certificate(ps, Certificate{all_rows(ps)}));
  EXPECT_FALSE(check_certificate(ps, Certificate{{0, 1}}));
  EXPECT_FALSE(check_certificate(ps, Certificate{}));
  EXPECT_FALSE(check_certificate(ps, Certificate{{0, 0, 1, 2, 3, 4, 5}}));
  EXPECT_THROW(check_certificate(ps, Certificate{{0, 6}}), std::out_of_range);
}

TEST(BruteForce, SingleRow) {
  ParitySystem ps;
  ps.variables = {"v1"};
  ps.rows = {make_row({0}, false)};
  const auto a = brute_force(ps);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(*a, signs({1}));
  EXPECT_EQ(std::get<Assignment>(solve(ps)), signs({1}));
}

TEST(BruteForce, LexicographicallyFirst) {
  ParitySystem ps;
  ps.variables = {"a", "b", "c"};
  ps.rows = {make_row({0, 1}, true), make_row({1, 2}, false)};
  // a=+1 forces b=-1, c=-1.
  EXPECT_EQ(*brute_force(ps), signs({1, -1, -1}));
}

TEST(BruteForce, TooManyVariables) {
  ParitySystem ps;
  for (std::size_t k = 0; k <= kMaxBruteForceVariables; ++k) ps.variables.push_back("v");
  EXPECT_THROW(brute_force(ps), std::invalid_argument);
}

TEST(MakeRow, DuplicatesCancel) {
  EXPECT_EQ(make_row({3, 1, 3, 2}, true).variables, (std::vector<std::size_t>{1, 2}));
  EXPECT_TRUE(make_row({1, 1}, false).variables.empty());
}

TEST(Solve, EmptyRowWithOddRhsIsItsOwnCertificate) {
  ParitySystem ps;
  ps.variables = {"a"};
  ps.rows = {make_row({0}, false), make_row({0, 0}, true)};
  const SolveResult r = solve(ps);
  ASSERT_FALSE(is_satisfiable(r));
  EXPECT_EQ(std::get<Certificate>(r).rows, (std::vector<std::size_t>{1}));
  EXPECT_TRUE(check_certificate(ps, std::get<Certificate>(r)));
  EXPECT_FALSE(brute_force(ps).has_value());
}

TEST(ParitySystem, CheckIndices) {
  ParitySystem ps;
  ps.variables = {"a"};
  ps.rows = {make_row({1}, false)};
  EXPECT_THROW(ps.check_indices(), std::out_of_range);
  EXPECT_THROW(solve(ps), std::out_of_range);
}

// 200 random systems: elimination, brute force and a plain enumeration agree.
TEST(ParityOracle, RandomSystemsAgree) {
  std::mt19937_64 gen(123);
  int sat = 0;
  for (int t = 0; t < 200; ++t) {
    const ParitySystem ps = oracle::random_parity_system(gen, 20);
    const bool want = oracle::satisfiable_by_enumeration(ps);
    const SolveResult r = solve(ps);
    const auto bf = brute_force(ps, 1 + t % 4);
    ASSERT_EQ(is_satisfiable(r), want) << "system " << t;
    ASSERT_EQ(bf.has_value(), want) << "system " << t;
    if (want) {
      ++sat;
      EXPECT_TRUE(check_assignment(ps, std::get<Assignment>(r)));
      EXPECT_TRUE(check_assignment(ps, *bf));
    } else {
      EXPECT_TRUE(check_certificate(ps, std::get<Certificate>(r)));
    }
  }
  // Both outcomes must be exercised for the comparison to mean anything.
  EXPECT_GT(sat, 20);
  EXPECT_LT(sat, 180);
}

TEST(ParityOracle, BruteForceWitnessIndependentOfWorkers) {
  std::mt19937_64 gen(77);
  for (int t = 0; t < 40; ++t) {
    const ParitySystem ps = oracle::random_parity_system(gen, 16);
    const auto one = brute_force(ps, 1);
    for (unsigned w : {2u, 3u, 8u}) EXPECT_EQ(brute_force(ps, w), one);
  }
}

TEST(Solve, DeterministicFreeVariables) {
  ParitySystem ps;
  ps.variables = {"a", "b", "c", "d"};
  ps.rows = {make_row({0, 1}, true)};
  // Free b, c, d default to +1, so a = -1.
  EXPECT_EQ(std::get<Assignment>(solve(ps)), signs({-1, 1, 1, 1}));
}

}  // namespace
}  // namespace ksbell
