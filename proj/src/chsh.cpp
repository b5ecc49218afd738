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

#include "ksbell/chsh.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

#include <fmt/format.h>

#include "ksbell/pauli.hpp"
#include "ksbell/state.hpp"

namespace ksbell {

namespace {

constexpr PauliLetter kAxes[3] = {PauliLetter::X, PauliLetter::Y, PauliLetter::Z};

double factorized_pair_value(const MeasurementVectors& v) {
  // <(s.u)(x)(s.w)> = sum_ij u_i w_j <s_i (x) s_j>, correlators from the
  // simulated singlet.
  const StateVector singlet = singlet_product_state(1);
  Eigen::Matrix3d corr;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const PauliOperator op =
          PauliOperator(2).with_letter(0, kAxes[i]).with_letter(1, kAxes[j]);
      corr(i, j) = expectation(singlet, op);
    }
  }
  return v.a.dot(corr * (v.b + v.b_prime)) + v.a_prime.dot(corr * (v.b - v.b_prime));
}

double dense_value(std::size_t n, const MeasurementVectors& v) {
  const Eigen::Matrix4cd pair = chsh_pair_operator(v);
  const std::size_t m = 2 * n;
  const std::size_t dim = std::size_t{1} << m;
  // Pair k couples qubit k (bit m-k) with qubit n+k (bit n-k).
  auto pair_index = [&](std::size_t basis, std::size_t k) {
    const std::size_t alice = (basis >> (m - k)) & 1u;
    const std::size_t bob = (basis >> (n - k)) & 1u;
    return static_cast<Eigen::Index>(2 * alice + bob);
  };
  Eigen::MatrixXcd full(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      std::complex<double> entry = 1.0;
      for (std::size_t k = 1; k <= n && entry != 0.0; ++k) {
        entry *= pair(pair_index(r, k), pair_index(c, k));
      }
      full(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = entry;
    }
  }
  return expectation(singlet_product_state(n), full);
}

}  // namespace

void MeasurementVectors::check() const {
  for (const Eigen::Vector3d* u : {&a, &a_prime, &b, &b_prime}) {
    if (std::abs(u->norm() - 1.0) > 1e-12) {
      throw std::invalid_argument(
          fmt::format("measurement direction has norm {}, expected 1", u->norm()));
    }
  }
}

Eigen::Vector3d planar_direction(double degrees) {
  const double t = degrees * std::numbers::pi / 180.0;
  return {std::sin(t), 0.0, std::cos(t)};
}

Eigen::Matrix2cd spin_along(const Eigen::Vector3d& v) {
  const std::complex<double> i(0, 1);
  Eigen::Matrix2cd s;
  s << v.z(), v.x() - i * v.y(),
       v.x() + i * v.y(), -v.z();
  return s;
}

Eigen::Matrix4cd chsh_pair_operator(const MeasurementVectors& v) {
  v.check();
  const Eigen::Matrix2cd sa = spin_along(v.a);
  const Eigen::Matrix2cd sa2 = spin_along(v.a_prime);
  const Eigen::Matrix2cd sb = spin_along(v.b);
  const Eigen::Matrix2cd sb2 = spin_along(v.b_prime);
  Eigen::Matrix4cd out = Eigen::kroneckerProduct(sa, (sb + sb2).eval()).eval() +
                         Eigen::kroneckerProduct(sa2, (sb - sb2).eval()).eval();
  return out;
}

MeasurementVectors optimal_vectors() {
  return {planar_direction(0), planar_direction(90), planar_direction(225),
          planar_direction(135)};
}

double quantum_value(std::size_t n, const MeasurementVectors& v, ChshPath path) {
  v.check();
  if (n == 0) throw std::invalid_argument("CHSH needs at least one pair");
  if (path == ChshPath::kDense) {
    if (n > kMaxDenseChshPairs) {
      throw std::invalid_argument(fmt::format(
          "dense CHSH path supports up to {} pairs, got {}", kMaxDenseChshPairs, n));
    }
    return dense_value(n, v);
  }
  return std::pow(factorized_pair_value(v), static_cast<double>(n));
}

std::array<int, 16> lhv_pair_values() {
  std::array<int, 16> values{};
  for (int bits = 0; bits < 16; ++bits) {
    auto sign = [bits](int k) { return (bits >> (3 - k)) & 1 ? -1 : 1; };
    const int a = sign(0), a2 = sign(1), b = sign(2), b2 = sign(3);
    values[bits] = a * (b + b2) + a2 * (b - b2);
  }
  return values;
}

double lhv_max(std::size_t n) {
  if (n == 0) throw std::invalid_argument("CHSH needs at least one pair");
  int best = 0;
  for (int v : lhv_pair_values()) best = std::max(best, std::abs(v));
  return std::pow(static_cast<double>(best), static_cast<double>(n));
}

ChshReport gap_report(std::size_t n, const MeasurementVectors& v) {
  ChshReport r;
  r.n = n;
  r.quantum_value = quantum_value(n, v);
  r.lhv_bound = lhv_max(n);
  r.ratio = r.quantum_value / r.lhv_bound;
  return r;
}

}  // namespace ksbell
