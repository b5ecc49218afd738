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

// CHSH operator on each of n shared singlets and the product operator
// B = B_1 B_2 ... B_n, where
//   B_i = (s.a)(s.b + s.b') + (s.a')(s.b - s.b')
// with Alice's spin on qubit i and Bob's on qubit n+i.

#pragma once

#include <array>
#include <cstddef>

#include <Eigen/Dense>

namespace ksbell {

struct MeasurementVectors {
  Eigen::Vector3d a;
  Eigen::Vector3d a_prime;
  Eigen::Vector3d b;
  Eigen::Vector3d b_prime;

  /// Throws std::invalid_argument unless every vector has unit norm within
  /// 1e-12.
  void check() const;
};

/// Unit vector in the x-z plane at `degrees` from +z towards +x.
Eigen::Vector3d planar_direction(double degrees);

/// s.v = v_x X + v_y Y + v_z Z.
Eigen::Matrix2cd spin_along(const Eigen::Vector3d& v);

/// The 4x4 pair operator; Alice's qubit is the more significant one.
Eigen::Matrix4cd chsh_pair_operator(const MeasurementVectors& v);

/// a at 0 deg, a' at 90 deg, b at 225 deg, b' at 135 deg in the x-z plane.
MeasurementVectors optimal_vectors();

enum class ChshPath {
  /// Single-pair expectation from Pauli correlators of the singlet, raised to
  /// the n-th power.
  kFactorized,
  /// Full 4^n x 4^n operator on singlet_product_state(n).
  kDense,
};

inline constexpr std::size_t kMaxDenseChshPairs = 5;

double quantum_value(std::size_t n, const MeasurementVectors& v,
                     ChshPath path = ChshPath::kFactorized);

/// Values of a(b + b') + a'(b - b') for all 16 deterministic +-1 strategies,
/// indexed by the bits (a, a', b, b') from most to least significant.
std::array<int, 16> lhv_pair_values();

/// Largest |B| reachable by local deterministic strategies on n pairs.
double lhv_max(std::size_t n);

struct ChshReport {
  std::size_t n = 0;
  double quantum_value = 0;
  double lhv_bound = 0;
  double ratio = 0;

  bool violates_lhv() const { return quantum_value > lhv_bound; }
};

ChshReport gap_report(std::size_t n, const MeasurementVectors& v = optimal_vectors());

}  // namespace ksbell
