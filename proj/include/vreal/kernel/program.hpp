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

// The program calculus and its total Goedel numbering.
//
// Layout of a code: pair(tag, payload) with tags in declaration order of
// Op. Payloads:
//   Proj(i)          i - 1
//   Lit(k)           k
//   Pair/Smn/Apply   pair(code p, code q)
//   Fst/Snd/Succ/ConstCode   code p
//   Comp(f, args)    pair(code f, list(args))   nil = 0, cons = pair(h,t)+1
//   If0(c, t, e)     pair(code c, pair(code t, code e))
// Tags above 10 decode as Lit(payload), so every natural is a program.

#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vreal/kernel/nat.hpp"

namespace vreal::kernel {

enum class Op : std::uint8_t {
  Proj = 0,
  Lit = 1,
  Pair = 2,
  Fst = 3,
  Snd = 4,
  Comp = 5,
  If0 = 6,
  Succ = 7,
  SmnCode = 8,
  ConstCode = 9,
  Apply = 10,
};

inline constexpr std::uint64_t kOpCount = 11;

enum class Model : std::uint8_t { UREC, TOTAL };

inline std::string_view model_name(Model m) { return m == Model::UREC ? "UREC" : "TOTAL"; }

class Program;

namespace detail {
struct ProgramNode;
}

// Total: every natural decodes. In TOTAL every Apply node becomes Lit(0).
Program decode(const Nat& code, Model model = Model::UREC);

// Immutable program ast with shared structure. Every node carries its code.
class Program {
 public:
  // Lit(0).
  Program();

  static Program proj(std::uint64_t i);
  static Program lit(Nat k);
  static Program pair(Program p, Program q);
  static Program fst(Program p);
  static Program snd(Program p);
  static Program comp(Program f, std::vector<Program> args);
  static Program if0(Program cond, Program then_branch, Program else_branch);
  static Program succ(Program p);
  static Program smn_code(Program p, Program q);
  static Program const_code(Program p);
  static Program apply(Program p, Program q);

  Op op() const;
  // 1-based; Proj only.
  std::uint64_t index() const;
  // Lit only.
  const Nat& literal() const;
  // Children in payload order; for Comp the first child is f.
  std::span<const Program> children() const;
  const Program& child(std::size_t i) const { return children()[i]; }

  const Nat& code() const;
  std::size_t size() const;
  bool contains_apply() const;

  friend bool operator==(const Program& a, const Program& b) { return a.code() == b.code(); }

 private:
  friend struct detail::ProgramNode;
  friend Program decode(const Nat& code, Model model);
  explicit Program(std::shared_ptr<const detail::ProgramNode> node) : node_(std::move(node)) {}
  static Program make(Op op, std::uint64_t index, Nat literal, std::vector<Program> children, Nat code);

  std::shared_ptr<const detail::ProgramNode> node_;
};

namespace detail {

struct ProgramNode {
  Op op;
  std::uint64_t index = 0;
  Nat literal;
  std::vector<Program> children;
  Nat code;
  std::size_t size = 1;
  bool has_apply = false;
};

inline Nat encode_list(std::span<const Program> items) {
  Nat list;  // nil
  for (auto it = items.rbegin(); it != items.rend(); ++it) list = Nat::pair(it->code(), list).succ();
  return list;
}

inline Nat tagged(Op op, const Nat& payload) { return Nat::pair(Nat(static_cast<std::uint64_t>(op)), payload); }

}  // namespace detail

inline Program Program::make(Op op, std::uint64_t index, Nat literal, std::vector<Program> children, Nat code) {
  auto node = std::make_shared<detail::ProgramNode>();
  node->op = op;
  node->index = index;
  node->literal = std::move(literal);
  node->has_apply = op == Op::Apply;
  for (const auto& c : children) {
    node->size += c.size();
    node->has_apply = node->has_apply || c.contains_apply();
  }
  node->children = std::move(children);
  node->code = std::move(code);
  return Program(std::move(node));
}

inline Program Program::proj(std::uint64_t i) {
  if (i == 0) throw std::invalid_argument("proj index is 1-based");
  return make(Op::Proj, i, {}, {}, detail::tagged(Op::Proj, Nat(i - 1)));
}

inline Program Program::lit(Nat k) {
  Nat code = detail::tagged(Op::Lit, k);
  return make(Op::Lit, 0, std::move(k), {}, std::move(code));
}

inline Program Program::pair(Program p, Program q) {
  Nat code = detail::tagged(Op::Pair, Nat::pair(p.code(), q.code()));
  return make(Op::Pair, 0, {}, {std::move(p), std::move(q)}, std::move(code));
}
inline Program Program::smn_code(Program p, Program q) {
  Nat code = detail::tagged(Op::SmnCode, Nat::pair(p.code(), q.code()));
  return make(Op::SmnCode, 0, {}, {std::move(p), std::move(q)}, std::move(code));
}
inline Program Program::apply(Program p, Program q) {
  Nat code = detail::tagged(Op::Apply, Nat::pair(p.code(), q.code()));
  return make(Op::Apply, 0, {}, {std::move(p), std::move(q)}, std::move(code));
}
inline Program Program::fst(Program p) {
  Nat code = detail::tagged(Op::Fst, p.code());
  return make(Op::Fst, 0, {}, {std::move(p)}, std::move(code));
}
inline Program Program::snd(Program p) {
  Nat code = detail::tagged(Op::Snd, p.code());
  return make(Op::Snd, 0, {}, {std::move(p)}, std::move(code));
}
inline Program Program::succ(Program p) {
  Nat code = detail::tagged(Op::Succ, p.code());
  return make(Op::Succ, 0, {}, {std::move(p)}, std::move(code));
}
inline Program Program::const_code(Program p) {
  Nat code = detail::tagged(Op::ConstCode, p.code());
  return make(Op::ConstCode, 0, {}, {std::move(p)}, std::move(code));
}
inline Program Program::comp(Program f, std::vector<Program> args) {
  Nat code = detail::tagged(Op::Comp, Nat::pair(f.code(), detail::encode_list(args)));
  args.insert(args.begin(), std::move(f));
  return make(Op::Comp, 0, {}, std::move(args), std::move(code));
}
inline Program Program::if0(Program cond, Program then_branch, Program else_branch) {
  Nat code = detail::tagged(Op::If0, Nat::pair(cond.code(), Nat::pair(then_branch.code(), else_branch.code())));
  return make(Op::If0, 0, {}, {std::move(cond), std::move(then_branch), std::move(else_branch)}, std::move(code));
}

inline Program::Program() {
  static const Program zero = lit(Nat());
  node_ = zero.node_;
}

inline Op Program::op() const { return node_->op; }
inline std::uint64_t Program::index() const { return node_->index; }
inline const Nat& Program::literal() const { return node_->literal; }
inline std::span<const Program> Program::children() const { return node_->children; }
inline const Nat& Program::code() const { return node_->code; }
inline std::size_t Program::size() const { return node_->size; }
inline bool Program::contains_apply() const { return node_->has_apply; }

inline Nat encode(const Program& p) { return p.code(); }

inline Program decode(const Nat& code, Model model) {
  const Nat tag_nat = code.proj1();
  const Nat payload = code.proj2();
  const auto tag = tag_nat.small();
  if (!tag || *tag >= kOpCount) return Program::make(Op::Lit, 0, payload, {}, code);
  const auto op = static_cast<Op>(*tag);
  switch (op) {
    case Op::Proj: {
      // Payloads past 2^63 are projections no call can reach; saturate the
      // index but keep the code so decoding stays injective.
      const auto i = payload.small();
      return Program::make(Op::Proj, i ? *i + 1 : kSmallLimit, {}, {}, code);
    }
    case Op::Lit:
      return Program::make(Op::Lit, 0, payload, {}, code);
    case Op::Fst:
    case Op::Snd:
    case Op::Succ:
    case Op::ConstCode:
      return Program::make(op, 0, {}, {decode(payload, model)}, code);
    case Op::Pair:
    case Op::SmnCode:
      return Program::make(op, 0, {}, {decode(payload.proj1(), model), decode(payload.proj2(), model)}, code);
    case Op::Apply:
      if (model == Model::TOTAL) return Program::lit(Nat());
      return Program::make(op, 0, {}, {decode(payload.proj1(), model), decode(payload.proj2(), model)}, code);
    case Op::If0: {
      const Nat rest = payload.proj2();
      return Program::make(op, 0, {},
                           {decode(payload.proj1(), model), decode(rest.proj1(), model), decode(rest.proj2(), model)},
                           code);
    }
    case Op::Comp: {
      std::vector<Program> kids{decode(payload.proj1(), model)};
      Nat list = payload.proj2();
      while (!list.is_zero()) {
        const Nat cell = list.pred();
        kids.push_back(decode(cell.proj1(), model));
        list = cell.proj2();
      }
      return Program::make(op, 0, {}, std::move(kids), code);
    }
  }
  return Program::lit(Nat());
}

inline void write_sexpr(std::ostream& os, const Program& p) {
  auto kids = p.children();
  switch (p.op()) {
    case Op::Proj:
      os << "(proj " << p.index() << ")";
      return;
    case Op::Lit:
      os << "(lit " << p.literal() << ")";
      return;
    case Op::Comp:
      os << "(comp ";
      write_sexpr(os, kids[0]);
      os << " (";
      for (std::size_t i = 1; i < kids.size(); ++i) {
        if (i > 1) os << ' ';
        write_sexpr(os, kids[i]);
      }
      os << "))";
      return;
    default:
      break;
  }
  static constexpr std::string_view kNames[] = {"proj", "lit", "pair", "fst", "snd",  "comp",
                                                "if0",  "succ", "smn", "const", "apply"};
  os << '(' << kNames[static_cast<std::size_t>(p.op())];
  for (const auto& k : kids) {
    os << ' ';
    write_sexpr(os, k);
  }
  os << ')';
}

inline std::string to_sexpr(const Program& p) {
  std::ostringstream os;
  write_sexpr(os, p);
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Program& p) {
  write_sexpr(os, p);
  return os;
}

class SexprError : public std::runtime_error {
 public:
  SexprError(const std::string& what, std::size_t offset)
      : std::runtime_error("program text, offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

namespace detail {

class SexprReader {
 public:
  explicit SexprReader(std::string_view text) : text_(text) {}

  Program read_program() {
    expect('(');
    const std::string head = read_word();
    Program result = [&] {
      if (head == "proj") {
        const Nat i = read_nat();
        if (!i.small() || *i.small() == 0) throw SexprError("proj index must be a positive machine word", pos_);
        return Program::proj(*i.small());
      }
      if (head == "lit") return Program::lit(read_nat());
      if (head == "pair") return binary(&Program::pair);
      if (head == "smn") return binary(&Program::smn_code);
      if (head == "apply") return binary(&Program::apply);
      if (head == "fst") return Program::fst(read_program());
      if (head == "snd") return Program::snd(read_program());
      if (head == "succ") return Program::succ(read_program());
      if (head == "const") return Program::const_code(read_program());
      if (head == "if0") {
        Program c = read_program();
        Program t = read_program();
        return Program::if0(std::move(c), std::move(t), read_program());
      }
      if (head == "comp") {
        Program f = read_program();
        expect('(');
        std::vector<Program> args;
        while (peek() != ')') args.push_back(read_program());
        expect(')');
        return Program::comp(std::move(f), std::move(args));
      }
      throw SexprError("unknown operator '" + head + "'", pos_);
    }();
    expect(')');
    return result;
  }

  void finish() {
    skip_space();
    if (pos_ != text_.size()) throw SexprError("trailing characters", pos_);
  }

 private:
  Program binary(Program (*make)(Program, Program)) {
    Program p = read_program();
    return make(std::move(p), read_program());
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_space();
    if (pos_ >= text_.size()) throw SexprError("unexpected end of input", pos_);
    return text_[pos_];
  }
  void expect(char c) {
    if (peek() != c) throw SexprError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  std::string read_word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw SexprError("expected operator name", pos_);
    return std::string(text_.substr(start, pos_ - start));
  }
  Nat read_nat() {
    skip_space();
    try {
      return detail::parse_nat_at(text_, pos_);
    } catch (const std::invalid_argument& e) {
      throw SexprError(e.what(), pos_);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Program parse_sexpr(std::string_view text) {
  detail::SexprReader reader(text);
  Program p = reader.read_program();
  reader.finish();
  return p;
}

}  // namespace vreal::kernel
