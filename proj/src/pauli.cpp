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

#include "ksbell/pauli.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <complex>

#include <fmt/format.h>

namespace ksbell {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t num_qubits) {
  return (num_qubits + kWordBits - 1) / kWordBits;
}

bool get_bit(const std::vector<std::uint64_t>& words, std::size_t k) {
  return (words[k / kWordBits] >> (k % kWordBits)) & 1u;
}

void put_bit(std::vector<std::uint64_t>& words, std::size_t k, bool value) {
  const std::uint64_t m = std::uint64_t{1} << (k % kWordBits);
  if (value) {
    words[k / kWordBits] |= m;
  } else {
    words[k / kWordBits] &= ~m;
  }
}

void require_same_size(const PauliOperator& a, const PauliOperator& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument(
        fmt::format("Pauli operators act on different qubit counts ({} vs {})",
                    a.num_qubits(), b.num_qubits()));
  }
}

// Exponent g of i in sigma(x1,z1) * sigma(x2,z2) = i^g sigma(x1^x2, z1^z2),
// with sigma(1,1) = Y.
int letter_product_phase(bool x1, bool z1, bool x2, bool z2) {
  if (x1 && z1) return int(z2) - int(x2);
  if (x1) return int(z2) * (2 * int(x2) - 1);
  if (z1) return int(x2) * (1 - 2 * int(z2));
  return 0;
}

}  // namespace

char letter_char(PauliLetter letter) {
  switch (letter) {
    case PauliLetter::I: return 'I';
    case PauliLetter::X: return 'X';
    case PauliLetter::Z: return 'Z';
    case PauliLetter::Y: return 'Y';
  }
  return '?';
}

Outcome::Outcome(int value) : value_(value) {
  if (value != 1 && value != -1) {
    throw std::invalid_argument(fmt::format("outcome must be +1 or -1, got {}", value));
  }
}

PauliOperator::PauliOperator(std::size_t num_qubits)
    : num_qubits_(num_qubits),
      xs_(word_count(num_qubits), 0),
      zs_(word_count(num_qubits), 0) {
  if (num_qubits == 0) {
    throw std::invalid_argument("a Pauli operator needs at least one qubit");
  }
}

PauliOperator PauliOperator::single(std::size_t num_qubits, std::size_t qubit,
                                    PauliLetter letter) {
  return PauliOperator(num_qubits).with_letter(qubit, letter);
}

PauliLetter PauliOperator::letter(std::size_t qubit) const {
  return static_cast<PauliLetter>(int(x_bit(qubit)) | (int(z_bit(qubit)) << 1));
}

bool PauliOperator::x_bit(std::size_t qubit) const {
  if (qubit >= num_qubits_) throw std::out_of_range("qubit index out of range");
  return get_bit(xs_, qubit);
}

bool PauliOperator::z_bit(std::size_t qubit) const {
  if (qubit >= num_qubits_) throw std::out_of_range("qubit index out of range");
  return get_bit(zs_, qubit);
}

PauliOperator PauliOperator::with_letter(std::size_t qubit, PauliLetter letter) const {
  if (qubit >= num_qubits_) throw std::out_of_range("qubit index out of range");
  PauliOperator out = *this;
  const auto bits = static_cast<unsigned>(letter);
  put_bit(out.xs_, qubit, bits & 1u);
  put_bit(out.zs_, qubit, bits & 2u);
  return out;
}

PauliOperator PauliOperator::with_phase(int phase_exponent) const {
  PauliOperator out = *this;
  out.phase_ = ((phase_exponent % 4) + 4) % 4;
  return out;
}

bool PauliOperator::is_scalar() const {
  for (std::size_t w = 0; w < xs_.size(); ++w) {
    if (xs_[w] != 0 || zs_[w] != 0) return false;
  }
  return true;
}

std::size_t PauliOperator::weight() const {
  std::size_t total = 0;
  for (std::size_t w = 0; w < xs_.size(); ++w) {
    total += static_cast<std::size_t>(std::popcount(xs_[w] | zs_[w]));
  }
  return total;
}

std::uint64_t PauliOperator::x_basis_mask() const {
  if (num_qubits_ > 64) throw std::length_error("basis masks need <= 64 qubits");
  std::uint64_t mask = 0;
  for (std::size_t q = 0; q < num_qubits_; ++q) {
    if (get_bit(xs_, q)) mask |= std::uint64_t{1} << (num_qubits_ - 1 - q);
  }
  return mask;
}

std::uint64_t PauliOperator::z_basis_mask() const {
  if (num_qubits_ > 64) throw std::length_error("basis masks need <= 64 qubits");
  std::uint64_t mask = 0;
  for (std::size_t q = 0; q < num_qubits_; ++q) {
    if (get_bit(zs_, q)) mask |= std::uint64_t{1} << (num_qubits_ - 1 - q);
  }
  return mask;
}

PauliOperator multiply(const PauliOperator& a, const PauliOperator& b) {
  require_same_size(a, b);
  PauliOperator out(a.num_qubits_);
  int phase = a.phase_ + b.phase_;
  for (std::size_t q = 0; q < a.num_qubits_; ++q) {
    phase += letter_product_phase(get_bit(a.xs_, q), get_bit(a.zs_, q),
                                  get_bit(b.xs_, q), get_bit(b.zs_, q));
  }
  for (std::size_t w = 0; w < out.xs_.size(); ++w) {
    out.xs_[w] = a.xs_[w] ^ b.xs_[w];
    out.zs_[w] = a.zs_[w] ^ b.zs_[w];
  }
  out.phase_ = ((phase % 4) + 4) % 4;
  return out;
}

bool commutes(const PauliOperator& a, const PauliOperator& b) {
  require_same_size(a, b);
  unsigned parity = 0;
  for (std::size_t w = 0; w < a.xs_.size(); ++w) {
    parity ^= std::popcount((a.xs_[w] & b.zs_[w]) ^ (a.zs_[w] & b.xs_[w])) & 1u;
  }
  return parity == 0;
}

Eigen::MatrixXcd to_dense(const PauliOperator& op) {
  const std::size_t n = op.num_qubits();
  if (n > kMaxDenseQubits) {
    throw std::invalid_argument(fmt::format(
        "dense export limited to {} qubits, operator has {}", kMaxDenseQubits, n));
  }
  // Column b maps to row b ^ x with amplitude i^(k + #Y) (-1)^popcount(b & z).
  const std::size_t dim = std::size_t{1} << n;
  const std::uint64_t xm = op.x_basis_mask();
  const std::uint64_t zm = op.z_basis_mask();
  const int ys = std::popcount(xm & zm);
  static const std::complex<double> kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::complex<double> base = kPowers[(op.phase_exponent() + ys) % 4];

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t col = 0; col < dim; ++col) {
    const bool negative = std::popcount(col & zm) & 1;
    m(static_cast<Eigen::Index>(col ^ xm), static_cast<Eigen::Index>(col)) =
        negative ? -base : base;
  }
  return m;
}

PauliOperator relabel(const PauliOperator& op, std::span<const std::size_t> qubit_map,
                      std::size_t target_size) {
  if (qubit_map.size() != op.num_qubits()) {
    throw std::invalid_argument(fmt::format(
        "qubit map has {} entries for a {}-qubit operator", qubit_map.size(),
        op.num_qubits()));
  }
  PauliOperator out = PauliOperator(target_size).with_phase(op.phase_exponent());
  std::vector<bool> used(target_size + 1, false);
  for (std::size_t q = 0; q < qubit_map.size(); ++q) {
    const std::size_t target = qubit_map[q];
    if (target == 0 || target > target_size) {
      throw std::invalid_argument(
          fmt::format("qubit {} maps to {}, outside 1..{}", q + 1, target, target_size));
    }
    if (used[target]) {
      throw std::invalid_argument(
          fmt::format("qubit map is not injective: {} is hit twice", target));
    }
    used[target] = true;
    out = out.with_letter(target - 1, op.letter(q));
  }
  return out;
}

PauliParseError::PauliParseError(PauliParseErrorKind kind, std::size_t offset,
                                 std::string token, const std::string& message)
    : std::invalid_argument(message),
      kind_(kind),
      offset_(offset),
      token_(std::move(token)) {}

PauliOperator parse_pauli(std::string_view text, std::size_t num_qubits) {
  struct Token {
    std::string_view text;
    std::size_t offset;
  };
  std::vector<Token> tokens;
  for (std::size_t i = 0; i < text.size();) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    tokens.push_back({text.substr(i, j - i), i});
    i = j;
  }
  if (tokens.empty()) {
    throw PauliParseError(PauliParseErrorKind::kEmpty, 0, "",
                          "empty Pauli expression at position 0");
  }

  PauliOperator result(num_qubits);
  std::size_t first = 0;
  const std::string_view head = tokens[0].text;
  if (head == "+" || head == "-" || head == "i" || head == "+i" || head == "-i") {
    const int k = head == "-" ? 2 : head == "-i" ? 3 : (head == "i" || head == "+i") ? 1 : 0;
    result = result.with_phase(k);
    first = 1;
    if (tokens.size() == 1) {
      throw PauliParseError(PauliParseErrorKind::kEmpty, tokens[0].text.size(),
                            std::string(head),
                            fmt::format("phase '{}' has no Pauli factors", head));
    }
  }
  if (tokens.size() == first + 1 && tokens[first].text == "I") {
    return result;
  }

  for (std::size_t t = first; t < tokens.size(); ++t) {
    const auto [tok, offset] = tokens[t];
    auto malformed = [&] {
      return PauliParseError(
          PauliParseErrorKind::kMalformedToken, offset, std::string(tok),
          fmt::format("malformed Pauli token '{}' at position {}", tok, offset));
    };
    if (tok.size() < 2) throw malformed();
    PauliLetter letter;
    switch (tok[0]) {
      case 'I': letter = PauliLetter::I; break;
      case 'X': letter = PauliLetter::X; break;
      case 'Y': letter = PauliLetter::Y; break;
      case 'Z': letter = PauliLetter::Z; break;
      default: throw malformed();
    }
    std::size_t index = 0;
    const char* begin = tok.data() + 1;
    const char* end = tok.data() + tok.size();
    if (!std::isdigit(static_cast<unsigned char>(*begin))) throw malformed();
    const auto [ptr, ec] = std::from_chars(begin, end, index);
    if (ec != std::errc() || ptr != end) throw malformed();
    if (index == 0 || index > num_qubits) {
      throw PauliParseError(
          PauliParseErrorKind::kIndexOutOfRange, offset, std::string(tok),
          fmt::format("qubit index in '{}' at position {} is outside 1..{}", tok,
                      offset, num_qubits));
    }
    result = multiply(result, PauliOperator::single(num_qubits, index - 1, letter));
  }
  return result;
}

std::string format_pauli(const PauliOperator& op) {
  static constexpr const char* kPrefix[4] = {"", "i ", "- ", "-i "};
  std::string out = kPrefix[op.phase_exponent()];
  if (op.is_scalar()) return out + "I";
  bool first = true;
  for (std::size_t q = 0; q < op.num_qubits(); ++q) {
    const PauliLetter l = op.letter(q);
    if (l == PauliLetter::I) continue;
    if (!first) out += ' ';
    out += letter_char(l);
    out += std::to_string(q + 1);
    first = false;
  }
  return out;
}

}  // namespace ksbell
