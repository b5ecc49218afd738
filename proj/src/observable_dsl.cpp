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

#include "ksbell/observable_dsl.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include <fmt/format.h>

namespace ksbell {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// A slice of the current line remembering where it starts (0-based).
struct Span {
  std::string_view text;
  std::size_t start;

  Span trimmed() const {
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && is_space(text[b])) ++b;
    while (e > b && is_space(text[e - 1])) --e;
    return {text.substr(b, e - b), start + b};
  }
  Span from(std::size_t pos) const { return {text.substr(pos), start + pos}; }
  Span upto(std::size_t pos) const { return {text.substr(0, pos), start}; }
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ContextSystem run() {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t end = text_.find('\n', pos);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos, end - pos);
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      parse_line(line_no, Span{line, 0});
      if (end == text_.size()) break;
      pos = end + 1;
    }
    if (!qubits_) throw DslError(1, 1, "missing 'qubits N' declaration");
    return ContextSystem(*qubits_, std::move(contexts_));
  }

 private:
  [[noreturn]] void fail(std::size_t line, std::size_t offset, const std::string& what) {
    throw DslError(line, offset + 1, what);
  }

  void parse_line(std::size_t line_no, Span line) {
    const Span body = line.trimmed();
    if (body.text.empty()) return;
    std::size_t kw_end = 0;
    while (kw_end < body.text.size() && !is_space(body.text[kw_end])) ++kw_end;
    const std::string_view keyword = body.text.substr(0, kw_end);
    const Span rest = body.from(kw_end).trimmed();

    if (keyword == "qubits") {
      if (qubits_) fail(line_no, body.start, "duplicate 'qubits' declaration");
      if (rest.text.empty()) fail(line_no, body.start + kw_end, "expected a qubit count");
      std::size_t n = 0;
      const auto [ptr, ec] =
          std::from_chars(rest.text.data(), rest.text.data() + rest.text.size(), n);
      if (ec != std::errc() || ptr != rest.text.data() + rest.text.size() || n == 0) {
        fail(line_no, rest.start,
             fmt::format("expected a positive qubit count, got '{}'", rest.text));
      }
      qubits_ = n;
      return;
    }
    if (keyword == "set") {
      if (!qubits_) fail(line_no, body.start, "'set' before the 'qubits' declaration");
      contexts_.push_back(parse_set(line_no, body, rest));
      return;
    }
    fail(line_no, body.start, fmt::format("unknown keyword '{}'", keyword));
  }

  Context parse_set(std::size_t line_no, Span body, Span rest) {
    Context context{{}, Outcome::plus()};
    Span observables = rest;
    if (const std::size_t eq = rest.text.find('='); eq != std::string_view::npos) {
      observables = rest.upto(eq);
      const Span sign = rest.from(eq + 1).trimmed();
      if (sign.text == "+1") {
        context.expected_sign = Outcome::plus();
      } else if (sign.text == "-1") {
        context.expected_sign = Outcome::minus();
      } else {
        fail(line_no, sign.text.empty() ? rest.start + eq : sign.start,
             fmt::format("expected '+1' or '-1' after '=', got '{}'", sign.text));
      }
    }
    if (observables.trimmed().text.empty()) {
      fail(line_no, body.start, "'set' needs at least one observable");
    }

    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = observables.text.find(',', pos);
      const std::size_t stop = comma == std::string_view::npos ? observables.text.size() : comma;
      const Span chunk =
          Span{observables.text.substr(pos, stop - pos), observables.start + pos}.trimmed();
      if (chunk.text.empty()) {
        fail(line_no, chunk.start, "empty observable in 'set'");
      }
      try {
        context.observables.push_back(parse_pauli(chunk.text, *qubits_));
      } catch (const PauliParseError& e) {
        fail(line_no, chunk.start + e.offset(), e.what());
      }
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return context;
  }

  std::string_view text_;
  std::optional<std::size_t> qubits_;
  std::vector<Context> contexts_;
};

}  // namespace

DslError::DslError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(fmt::format("line {}, column {}: {}", line, column, message)),
      line_(line),
      column_(column) {}

ContextSystem parse_document(std::string_view text) { return Parser(text).run(); }

std::string serialize(const ContextSystem& system) {
  std::string out = fmt::format("qubits {}\n", system.num_qubits());
  for (const Context& context : system.contexts()) {
    out += "set ";
    for (std::size_t i = 0; i < context.observables.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_pauli(context.observables[i]);
    }
    out += context.expected_sign == Outcome::minus() ? " = -1\n" : " = +1\n";
  }
  return out;
}

ContextSystem load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

}  // namespace ksbell
