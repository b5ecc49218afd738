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

#include "ksbell/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace ksbell {

namespace {

constexpr Amplitude kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void check_qubit_count(std::size_t m) {
  if (m == 0 || m > kMaxStateQubits) {
    throw std::invalid_argument(
        fmt::format("state must have 1..{} qubits, got {}", kMaxStateQubits, m));
  }
}

void check_pairs(std::size_t n) {
  if (n == 0 || n > kMaxPairs) {
    throw std::invalid_argument(fmt::format("pair count must be 1..{}, got {}", kMaxPairs, n));
  }
}

double norm2(std::span<const Amplitude> amps) {
  double total = 0;
  for (const Amplitude& a : amps) total += std::norm(a);
  return total;
}

// P|psi> without any normalization check.
std::vector<Amplitude> apply_pauli(std::span<const Amplitude> amps, std::size_t m,
                                   const PauliOperator& op) {
  if (op.num_qubits() != m) {
    throw std::invalid_argument(fmt::format(
        "{}-qubit operator applied to a {}-qubit state", op.num_qubits(), m));
  }
  const std::uint64_t xm = op.x_basis_mask();
  const std::uint64_t zm = op.z_basis_mask();
  const Amplitude base = kIPowers[(op.phase_exponent() + std::popcount(xm & zm)) % 4];
  std::vector<Amplitude> out(amps.size());
  for (std::uint64_t b = 0; b < amps.size(); ++b) {
    const Amplitude a = (std::popcount(b & zm) & 1) ? -base : base;
    out[b ^ xm] = a * amps[b];
  }
  return out;
}

Amplitude inner(std::span<const Amplitude> bra, std::span<const Amplitude> ket) {
  Amplitude total = 0;
  for (std::size_t i = 0; i < bra.size(); ++i) total += std::conj(bra[i]) * ket[i];
  return total;
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(num_qubits_);
  if (amplitudes_.size() != (std::size_t{1} << num_qubits_)) {
    throw std::invalid_argument(fmt::format("{} amplitudes for {} qubits",
                                            amplitudes_.size(), num_qubits_));
  }
  if (std::abs(squared_norm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument(
        fmt::format("state is not normalized (|psi|^2 = {})", squared_norm()));
  }
}

StateVector StateVector::normalized(std::size_t num_qubits, std::vector<Amplitude> amplitudes) {
  const double n2 = norm2(amplitudes);
  if (n2 < kNormTolerance) {
    throw std::runtime_error(fmt::format("state norm collapsed to {}", n2));
  }
  const double scale = 1.0 / std::sqrt(n2);
  for (Amplitude& a : amplitudes) a *= scale;
  return StateVector(num_qubits, std::move(amplitudes));
}

double StateVector::squared_norm() const { return norm2(amplitudes_); }

StateVector StateVector::apply(const PauliOperator& op) const {
  return StateVector(Unchecked{}, num_qubits_, apply_pauli(amplitudes_, num_qubits_, op));
}

double StateVector::distance_squared(const StateVector& other) const {
  if (other.dimension() != dimension()) {
    throw std::invalid_argument("states have different dimensions");
  }
  double total = 0;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    total += std::norm(amplitudes_[i] - other.amplitudes_[i]);
  }
  return total;
}

std::vector<std::size_t> QubitLayout::alice_map() const {
  std::vector<std::size_t> map(pairs);
  for (std::size_t k = 1; k <= pairs; ++k) map[k - 1] = alice(k);
  return map;
}

std::vector<std::size_t> QubitLayout::bob_map() const {
  std::vector<std::size_t> map(pairs);
  for (std::size_t k = 1; k <= pairs; ++k) map[k - 1] = bob(k);
  return map;
}

PauliOperator QubitLayout::on_alice(const PauliOperator& op) const {
  return relabel(op, alice_map(), total_qubits());
}

PauliOperator QubitLayout::on_bob(const PauliOperator& op) const {
  return relabel(op, bob_map(), total_qubits());
}

StateVector bell_product_state(std::size_t n) {
  check_pairs(n);
  std::vector<Amplitude> amps(std::size_t{1} << (2 * n), 0.0);
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(n));
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    amps[(a << n) | a] = amp;
  }
  return StateVector(2 * n, std::move(amps));
}

StateVector singlet_product_state(std::size_t n) {
  check_pairs(n);
  std::vector<Amplitude> amps(std::size_t{1} << (2 * n), 0.0);
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(n));
  const std::uint64_t block = (std::uint64_t{1} << n) - 1;
  // Each pair contributes |01> with + and |10> with -, so the sign is the
  // parity of Alice's ones.
  for (std::uint64_t a = 0; a <= block; ++a) {
    amps[(a << n) | (~a & block)] = (std::popcount(a) & 1) ? -amp : amp;
  }
  return StateVector(2 * n, std::move(amps));
}

StateVector ghz_state() {
  std::vector<Amplitude> amps(8, 0.0);
  amps[0] = M_SQRT1_2;
  amps[7] = -M_SQRT1_2;
  return StateVector(3, std::move(amps));
}

double expectation(const StateVector& state, const PauliOperator& op) {
  if (!op.is_hermitian()) {
    throw std::invalid_argument(
        fmt::format("expectation of non-Hermitian '{}'", format_pauli(op)));
  }
  const auto image = apply_pauli(state.amplitudes(), state.num_qubits(), op);
  const Amplitude value = inner(state.amplitudes(), image);
  if (std::abs(value.imag()) > 1e-12) {
    throw std::logic_error("Hermitian expectation has an imaginary part");
  }
  return value.real();
}

double expectation(const StateVector& state, const Eigen::MatrixXcd& op) {
  const auto dim = static_cast<Eigen::Index>(state.dimension());
  if (op.rows() != dim || op.cols() != dim) {
    throw std::invalid_argument(fmt::format("{}x{} matrix on a {}-dimensional state",
                                            op.rows(), op.cols(), dim));
  }
  if ((op - op.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("expectation of a non-Hermitian matrix");
  }
  const Eigen::Map<const Eigen::VectorXcd> psi(state.amplitudes().data(), dim);
  const Amplitude value = psi.dot(op * psi);  // dot conjugates the left side
  if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value.real()))) {
    throw std::logic_error("Hermitian expectation has an imaginary part");
  }
  return value.real();
}

double eigenrelation_residual(std::size_t n, const PauliOperator& op) {
  if (op.num_qubits() != n) {
    throw std::invalid_argument(fmt::format(
        "eigenrelation on {} pairs needs an {}-qubit observable, got {}", n, n,
        op.num_qubits()));
  }
  const QubitLayout layout{n};
  const StateVector psi = bell_product_state(n);
  const StateVector image = psi.apply(layout.on_bob(op)).apply(layout.on_alice(op));
  return std::sqrt(image.distance_squared(psi));
}

bool eigenrelation_check(std::size_t n, const PauliOperator& op) {
  return eigenrelation_residual(n, op) < 1e-12;
}

MeasurementResult measure(const StateVector& state, const PauliOperator& op,
                          CounterRng& rng) {
  const double p_plus = std::clamp((1.0 + expectation(state, op)) / 2.0, 0.0, 1.0);
  const Outcome outcome = rng.uniform() < p_plus ? Outcome::plus() : Outcome::minus();
  // (I + s O) / 2 projects onto the eigenspace with eigenvalue s.
  auto image = apply_pauli(state.amplitudes(), state.num_qubits(), op);
  const double s = outcome.value();
  std::vector<Amplitude> projected(state.dimension());
  for (std::size_t i = 0; i < projected.size(); ++i) {
    projected[i] = 0.5 * (state[i] + s * image[i]);
  }
  return {{outcome}, StateVector::normalized(state.num_qubits(), std::move(projected))};
}

MeasurementResult measure_context(const StateVector& state,
                                  std::span<const PauliOperator> context,
                                  CounterRng& rng) {
  for (std::size_t i = 0; i < context.size(); ++i) {
    if (!context[i].is_hermitian()) {
      throw std::invalid_argument(
          fmt::format("'{}' is not Hermitian", format_pauli(context[i])));
    }
    for (std::size_t j = i + 1; j < context.size(); ++j) {
      if (!commutes(context[i], context[j])) {
        throw std::invalid_argument(fmt::format("'{}' and '{}' do not commute",
                                                format_pauli(context[i]),
                                                format_pauli(context[j])));
      }
    }
  }
  MeasurementResult result{{}, state};
  for (const PauliOperator& op : context) {
    MeasurementResult step = measure(result.post_state, op, rng);
    result.outcomes.push_back(step.outcomes.front());
    result.post_state = std::move(step.post_state);
  }
  return result;
}

}  // namespace ksbell
