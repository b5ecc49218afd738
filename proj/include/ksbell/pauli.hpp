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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ksbell {

/// Single-qubit letter. The numeric value packs the symplectic bits as
/// (x | z << 1), so Y is the letter with both bits set.
enum class PauliLetter : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char letter_char(PauliLetter letter);

/// A measured eigenvalue of a Hermitian Pauli observable. Only +1 and -1
/// are representable.
class Outcome {
 public:
  constexpr Outcome() = default;
  explicit Outcome(int value);

  static constexpr Outcome plus() { return Outcome(Tag{}, 1); }
  static constexpr Outcome minus() { return Outcome(Tag{}, -1); }
  /// Maps a GF(2) bit to a sign via s = (-1)^bit.
  static constexpr Outcome from_bit(bool bit) { return bit ? minus() : plus(); }

  constexpr int value() const { return value_; }
  constexpr bool bit() const { return value_ < 0; }
  constexpr Outcome operator*(Outcome other) const {
    return Outcome(Tag{}, value_ * other.value_);
  }
  constexpr Outcome operator-() const { return Outcome(Tag{}, -value_); }
  friend constexpr bool operator==(Outcome, Outcome) = default;

 private:
  struct Tag {};
  constexpr Outcome(Tag, int value) : value_(value) {}
  int value_ = 1;
};

/// Phased n-qubit Pauli word i^k * P_1 (x) ... (x) P_n in symplectic form.
///
/// Qubit j (0-based internally, j+1 in text) carries X when its x bit is set,
/// Z when its z bit is set and Y when both are. Y is stored as a letter, not
/// as the product XZ, so a Hermitian word always has k in {0, 2}.
class PauliOperator {
 public:
  /// Identity on `num_qubits` qubits.
  explicit PauliOperator(std::size_t num_qubits);

  /// The word `letter` on `qubit` (0-based) and identity elsewhere.
  static PauliOperator single(std::size_t num_qubits, std::size_t qubit,
                              PauliLetter letter);

  std::size_t num_qubits() const { return num_qubits_; }
  int phase_exponent() const { return phase_; }
  PauliLetter letter(std::size_t qubit) const;
  bool x_bit(std::size_t qubit) const;
  bool z_bit(std::size_t qubit) const;

  /// Returns a copy with the letter at `qubit` replaced. Phase is untouched.
  PauliOperator with_letter(std::size_t qubit, PauliLetter letter) const;
  /// Returns a copy with the global phase set to i^k (k taken mod 4).
  PauliOperator with_phase(int phase_exponent) const;

  bool is_hermitian() const { return phase_ % 2 == 0; }
  /// True iff every letter is I; the phase may be anything.
  bool is_scalar() const;
  std::size_t weight() const;

  /// Bit masks in basis-index order: qubit 0 maps to the most significant of
  /// the num_qubits low bits. Only valid for num_qubits <= 64.
  std::uint64_t x_basis_mask() const;
  std::uint64_t z_basis_mask() const;

  friend bool operator==(const PauliOperator&, const PauliOperator&) = default;
  friend auto operator<=>(const PauliOperator&, const PauliOperator&) = default;

 private:
  std::size_t num_qubits_ = 0;
  std::vector<std::uint64_t> xs_;
  std::vector<std::uint64_t> zs_;
  int phase_ = 0;

  friend PauliOperator multiply(const PauliOperator&, const PauliOperator&);
  friend bool commutes(const PauliOperator&, const PauliOperator&);
};

/// Exact product a*b with phase tracking. Throws std::invalid_argument on a
/// qubit-count mismatch.
PauliOperator multiply(const PauliOperator& a, const PauliOperator& b);
inline PauliOperator operator*(const PauliOperator& a, const PauliOperator& b) {
  return multiply(a, b);
}

/// Symplectic commutation test.
bool commutes(const PauliOperator& a, const PauliOperator& b);

inline constexpr std::size_t kMaxDenseQubits = 14;

/// Dense 2^n x 2^n matrix. Qubit 1 is the most significant bit of the basis
/// index.
Eigen::MatrixXcd to_dense(const PauliOperator& op);

/// Moves qubit j (1-based) of `op` to qubit_map[j-1] (1-based) inside a
/// `target_size`-qubit register. The map must cover every qubit of `op` and
/// be injective.
PauliOperator relabel(const PauliOperator& op,
                      std::span<const std::size_t> qubit_map,
                      std::size_t target_size);

enum class PauliParseErrorKind { kEmpty, kMalformedToken, kIndexOutOfRange };

class PauliParseError : public std::invalid_argument {
 public:
  PauliParseError(PauliParseErrorKind kind, std::size_t offset,
                  std::string token, const std::string& message);

  PauliParseErrorKind kind() const { return kind_; }
  /// 0-based character offset of the offending token in the parsed text.
  std::size_t offset() const { return offset_; }
  const std::string& token() const { return token_; }

 private:
  PauliParseErrorKind kind_;
  std::size_t offset_;
  std::string token_;
};

/// Parses "X1 Z2 X3"-style text. An optional leading phase token ("+", "-",
/// "i", "+i", "-i") sets the initial phase; the factors are then multiplied in
/// order. A bare "I" denotes the identity.
PauliOperator parse_pauli(std::string_view text, std::size_t num_qubits);

/// Canonical text: a phase prefix unless the phase is +1, then letters sorted
/// by qubit index. The identity is written "I" (or e.g. "- I").
std::string format_pauli(const PauliOperator& op);

}  // namespace ksbell
