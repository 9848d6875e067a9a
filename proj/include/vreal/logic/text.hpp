// Copyright 2026 The vreal Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ASCII formula syntax.
//
//   imp    := or ('->' imp)?
//   or     := and ('\/' and)*
//   and    := unary ('/\' unary)*
//   unary  := ('forall' | 'exists') ident '.' unary
//           | '(' imp ')' | '_|_' | 'T' | ident ('(' term (',' term)* ')')?
//   term   := ident | numeral
//
// A quantifier scopes over a single unary formula, so a binary body needs
// parentheses: forall x. (P(x) -> Q(x)).

#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "vreal/logic/formula.hpp"

namespace vreal::logic {

enum class Notation : std::uint8_t { Ascii, Unicode };

namespace detail {

inline int precedence(Kind k) {
  switch (k) {
    case Kind::Imp:
      return 1;
    case Kind::Or:
      return 2;
    case Kind::And:
      return 3;
    default:
      return 4;
  }
}

inline void print_to(std::string& out, const Formula& a, int min_prec, Notation nt) {
  const bool uni = nt == Notation::Unicode;
  const int prec = precedence(a.kind());
  const bool paren = prec < min_prec;
  if (paren) out += '(';
  switch (a.kind()) {
    case Kind::Bottom:
      out += uni ? "⊥" : "_|_";
      break;
    case Kind::Top:
      out += uni ? "⊤" : "T";
      break;
    case Kind::Atom:
      out += a.name();
      if (!a.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < a.args().size(); ++i) {
          if (i) out += uni ? ", " : ",";
          out += to_string(a.args()[i]);
        }
        out += ')';
      }
      break;
    case Kind::Forall:
    case Kind::Exists:
      if (uni) {
        out += a.kind() == Kind::Forall ? "∀" : "∃";
        out += a.name();
        out += ' ';
      } else {
        out += a.kind() == Kind::Forall ? "forall " : "exists ";
        out += a.name();
        out += ". ";
      }
      print_to(out, a.body(), 4, nt);
      break;
    case Kind::And:
      print_to(out, a.lhs(), 3, nt);
      out += uni ? " ∧ " : " /\\ ";
      print_to(out, a.rhs(), 4, nt);
      break;
    case Kind::Or:
      print_to(out, a.lhs(), 2, nt);
      out += uni ? " ∨ " : " \\/ ";
      print_to(out, a.rhs(), 3, nt);
      break;
    case Kind::Imp:
      print_to(out, a.lhs(), 2, nt);
      out += uni ? " → " : " -> ";
      print_to(out, a.rhs(), 1, nt);
      break;
  }
  if (paren) out += ')';
}

}  // namespace detail

inline std::string print_formula(const Formula& a, Notation nt = Notation::Ascii) {
  std::string out;
  detail::print_to(out, a, 1, nt);
  return out;
}

inline std::string to_string(const Formula& a) { return print_formula(a); }

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

namespace detail {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    Formula f = parse_imp();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(what, line, col);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

  bool at_ident() {
    skip_ws();
    return pos_ < text_.size() && ident_start(text_[pos_]) && text_.substr(pos_, 3) != "_|_";
  }

  std::string ident() {
    if (!at_ident()) fail("expected identifier");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // Keyword match that does not swallow a longer identifier.
  bool accept_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    const std::size_t end = pos_ + w.size();
    if (end < text_.size() && ident_char(text_[end])) return false;
    pos_ = end;
    return true;
  }

  Term term() {
    skip_ws();
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::uint64_t v = 0;
      auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
      if (ec != std::errc()) {
        pos_ = start;
        fail("numeral out of range");
      }
      return Term::constant(v);
    }
    return Term::var(ident());
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (accept("->")) return Formula::imp(std::move(lhs), parse_imp());
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept("\\/")) f = Formula::disj(std::move(f), parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept("/\\")) f = Formula::conj(std::move(f), parse_unary());
    return f;
  }

  Formula parse_unary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (accept("(")) {
      Formula f = parse_imp();
      expect(")");
      return f;
    }
    if (accept("_|_")) return Formula::bottom();
    for (const bool is_forall : {true, false}) {
      if (accept_word(is_forall ? "forall" : "exists")) {
        std::string x = ident();
        expect(".");
        Formula body = parse_unary();
        return is_forall ? Formula::forall(std::move(x), std::move(body)) : Formula::exists(std::move(x), std::move(body));
      }
    }
    if (accept_word("T")) return Formula::top();
    if (!at_ident()) fail("expected formula");
    std::string pred = ident();
    std::vector<Term> args;
    if (accept("(")) {
      if (!accept(")")) {
        do args.push_back(term());
        while (accept(","));
        expect(")");
      }
    }
    return Formula::atom(std::move(pred), std::move(args));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text) { return detail::FormulaParser(text).parse_all(); }

}  // namespace vreal::logic
