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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ksbell/pauli.hpp"
#include "ksbell/rng.hpp"

namespace ksbell {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kMaxStateQubits = 26;
inline constexpr double kNormTolerance = 1e-12;

/// Normalized pure state on m qubits. Qubit 1 is the most significant bit of
/// the basis index.
class StateVector {
 public:
  /// Throws std::invalid_argument unless amplitudes.size() == 2^num_qubits
  /// and the squared norm is 1 within kNormTolerance.
  StateVector(std::size_t num_qubits, std::vector<Amplitude> amplitudes);

  /// Rescales `amplitudes` to unit norm. Throws std::runtime_error if the
  /// squared norm is below kNormTolerance.
  static StateVector normalized(std::size_t num_qubits, std::vector<Amplitude> amplitudes);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  Amplitude operator[](std::size_t basis) const { return amplitudes_[basis]; }

  double squared_norm() const;

  /// P|psi>. Pauli words are unitary so the result stays normalized.
  StateVector apply(const PauliOperator& op) const;

  /// Squared distance ||this - other||^2.
  double distance_squared(const StateVector& other) const;

 private:
  struct Unchecked {};
  StateVector(Unchecked, std::size_t num_qubits, std::vector<Amplitude> amplitudes)
      : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

  std::size_t num_qubits_;
  std::vector<Amplitude> amplitudes_;
};

/// Alice owns qubits 1..n, Bob owns n+1..2n; Alice's qubit k shares a Bell
/// pair with Bob's qubit n+k.
struct QubitLayout {
  std::size_t pairs;

  std::size_t total_qubits() const { return 2 * pairs; }
  std::size_t alice(std::size_t k) const { return k; }
  std::size_t bob(std::size_t k) const { return pairs + k; }
  /// 1-based relabel maps onto each block.
  std::vector<std::size_t> alice_map() const;
  std::vector<std::size_t> bob_map() const;
  /// Embeds an n-qubit observable into Alice's or Bob's block.
  PauliOperator on_alice(const PauliOperator& op) const;
  PauliOperator on_bob(const PauliOperator& op) const;
};

inline constexpr std::size_t kMaxPairs = 13;

/// n copies of (|00> + |11>)/sqrt(2) in the block layout.
StateVector bell_product_state(std::size_t n);
/// n copies of (|01> - |10>)/sqrt(2) in the block layout.
StateVector singlet_product_state(std::size_t n);
/// Three-qubit GHZ state (|000> - |111>)/sqrt(2): the joint eigenstate of
/// X1Y2Y3, Y1X2Y3, Y1Y2X3 (eigenvalue +1) and X1X2X3 (eigenvalue -1).
StateVector ghz_state();

/// <psi|P|psi>. P must be Hermitian and act on the state's qubits.
double expectation(const StateVector& state, const PauliOperator& op);
/// <psi|M|psi> for a dense Hermitian matrix of matching dimension.
double expectation(const StateVector& state, const Eigen::MatrixXcd& op);

/// ||O_A O_B psi - psi|| on bell_product_state(n), where O_A and O_B are `op`
/// placed on Alice's and Bob's blocks.
double eigenrelation_residual(std::size_t n, const PauliOperator& op);
bool eigenrelation_check(std::size_t n, const PauliOperator& op);

struct MeasurementResult {
  std::vector<Outcome> outcomes;
  StateVector post_state;
};

/// Projective measurement of one Hermitian Pauli observable.
MeasurementResult measure(const StateVector& state, const PauliOperator& op,
                          CounterRng& rng);

/// Sequential non-demolition measurement of mutually commuting observables,
/// in the given order. Throws std::invalid_argument if any pair anticommutes
/// or an observable is not Hermitian.
MeasurementResult measure_context(const StateVector& state,
                                  std::span<const PauliOperator> context,
                                  CounterRng& rng);

}  // namespace ksbell
