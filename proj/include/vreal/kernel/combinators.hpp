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

// Closure combinators. The *_index functions are host-level: they take codes
// and return codes. The code_* builders are object-level: they are programs
// that compute codes at run time, which is how extracted realizers build new
// programs from values they only learn while running.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vreal/kernel/nat.hpp"
#include "vreal/kernel/program.hpp"

namespace vreal::kernel {

// A construction needs the universal opcode and the model has none.
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Proj(1), ..., Proj(n).
inline std::vector<Program> projections(std::uint64_t n, std::uint64_t first = 1) {
  std::vector<Program> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(Program::proj(first + i));
  return out;
}

// `p` restricted to its first n arguments, so extra arguments are invisible.
inline Program restrict_args(const Program& p, std::uint64_t n) { return Program::comp(p, projections(n)); }

inline Nat compose_index(const Nat& e, std::span<const Nat> es, std::span<const std::uint64_t> arities,
                         Model model = Model::UREC) {
  if (es.size() != arities.size()) throw std::invalid_argument("compose_index: one arity per inner code");
  std::vector<Program> args;
  args.reserve(es.size());
  for (std::size_t i = 0; i < es.size(); ++i) args.push_back(restrict_args(decode(es[i], model), arities[i]));
  return Program::comp(decode(e, model), std::move(args)).code();
}

inline Nat const_index(const Nat& k) { return Program::lit(k).code(); }

inline Nat cond_index(const Nat& e1, const Nat& e2, std::uint64_t n, Model model = Model::UREC) {
  return Program::if0(Program::proj(n + 1), restrict_args(decode(e1, model), n), restrict_args(decode(e2, model), n))
      .code();
}

inline Nat cond_prime_index(const Nat& e1, const Nat& e2, std::uint64_t n, Model model = Model::UREC) {
  auto branch = [&](const Nat& e) {
    auto args = projections(n);
    args.push_back(Program::snd(Program::proj(n + 1)));
    return Program::comp(decode(e, model), std::move(args));
  };
  return Program::if0(Program::fst(Program::proj(n + 1)), branch(e1), branch(e2)).code();
}

// phi_result(x1..xn) ~ phi_e(x1..xn, k1..km).
inline Nat smn_index(const Nat& e, std::span<const Nat> ks, std::uint64_t n, Model model = Model::UREC) {
  if (ks.empty()) return e;
  auto args = projections(n);
  for (const auto& k : ks) args.push_back(Program::lit(k));
  return Program::comp(decode(e, model), std::move(args)).code();
}

// phi_result(x1..xn) ~ phi_e(x_perm[0]..x_perm[n-1]); perm is 1-based.
inline Nat permute_index(const Nat& e, std::span<const std::uint64_t> perm, Model model = Model::UREC) {
  std::vector<std::uint64_t> sorted(perm.begin(), perm.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i + 1) throw std::invalid_argument("permute_index: not a permutation of 1..n");
  }
  std::vector<Program> args;
  args.reserve(perm.size());
  for (auto i : perm) args.push_back(Program::proj(i));
  return Program::comp(decode(e, model), std::move(args)).code();
}

// phi_result(x1..xn, x_{n+1}) ~ phi_e(x1..xn).
inline Nat dummy_index(const Nat& e, std::uint64_t n, Model model = Model::UREC) {
  return restrict_args(decode(e, model), n).code();
}

// ---------------------------------------------------------------------------
// Object-level code builders. Each argument is a program whose value is a
// code (or a number, for code_lit); the result evaluates to the code of the
// named node built from those values.

namespace build {

inline Program tag_with(Op op, Program payload) {
  return Program::pair(Program::lit(Nat(static_cast<std::uint64_t>(op))), std::move(payload));
}

// The constant program whose value is the code of p.
inline Program quoted(const Program& p) { return Program::lit(p.code()); }

inline Program code_lit(Program value) { return tag_with(Op::Lit, std::move(value)); }
inline Program code_pair(Program p, Program q) { return tag_with(Op::Pair, Program::pair(std::move(p), std::move(q))); }
inline Program code_fst(Program p) { return tag_with(Op::Fst, std::move(p)); }
inline Program code_snd(Program p) { return tag_with(Op::Snd, std::move(p)); }
inline Program code_succ(Program p) { return tag_with(Op::Succ, std::move(p)); }
inline Program code_apply(Program p, Program q) {
  return tag_with(Op::Apply, Program::pair(std::move(p), std::move(q)));
}
inline Program code_smn(Program p, Program q) {
  return tag_with(Op::SmnCode, Program::pair(std::move(p), std::move(q)));
}
inline Program code_if0(Program c, Program t, Program e) {
  return tag_with(Op::If0, Program::pair(std::move(c), Program::pair(std::move(t), std::move(e))));
}
inline Program code_comp(Program f, const std::vector<Program>& args) {
  Program list = Program::lit(Nat());
  for (auto it = args.rbegin(); it != args.rend(); ++it) list = Program::succ(Program::pair(*it, list));
  return tag_with(Op::Comp, Program::pair(std::move(f), std::move(list)));
}

// Unary program x |-> code of (F with its first argument fixed to x):
// phi_{phi_curry(x)}(y...) ~ F(x, y...).
inline Program curry(const Program& f) { return Program::smn_code(quoted(f), Program::proj(1)); }

}  // namespace build

// ---------------------------------------------------------------------------
// Overuniversal functions.
//
// u^1(y, x) = Apply(y, x). For n >= 1,
//   u^{n+1}(y, x1..x_{n+1}) ~ u^n(s(y), x1..x_{n-1}, pair(x_n, x_{n+1}))
// where phi_{s(y)}(x1..x_{n-1}, z) ~ phi_y(x1..x_{n-1}, fst z, snd z).

inline Program overuniversal_program(std::uint64_t n, Model model = Model::UREC) {
  if (model == Model::TOTAL) throw CapabilityError("overuniversal function requires the UREC model");
  if (n == 0) throw std::invalid_argument("overuniversal_index: arity must be >= 1");
  Program u = Program::apply(Program::proj(1), Program::proj(2));
  for (std::uint64_t k = 1; k < n; ++k) {
    // Build u^{k+1} from u = u^k.
    std::vector<Program> inner;
    for (std::uint64_t i = 1; i < k; ++i) inner.push_back(build::quoted(Program::proj(i)));
    inner.push_back(build::quoted(Program::fst(Program::proj(k))));
    inner.push_back(build::quoted(Program::snd(Program::proj(k))));
    Program s = build::code_comp(Program::proj(1), inner);

    std::vector<Program> args{s};
    for (std::uint64_t i = 2; i <= k; ++i) args.push_back(Program::proj(i));
    args.push_back(Program::pair(Program::proj(k + 1), Program::proj(k + 2)));
    u = Program::comp(u, std::move(args));
  }
  return u;
}

inline Nat overuniversal_index(std::uint64_t n, Model model = Model::UREC) {
  return overuniversal_program(n, model).code();
}

}  // namespace vreal::kernel
