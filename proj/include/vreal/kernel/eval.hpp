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

// Fuel-bounded evaluation of programs in the UREC and TOTAL models.
//
// The machine keeps its own task and value stacks, so object-level recursion
// through Apply never grows the native stack. One unit of fuel is charged
// per ast node entered; an Apply pays for its own node and then for every
// node its callee enters.

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "vreal/kernel/nat.hpp"
#include "vreal/kernel/program.hpp"

namespace vreal::kernel {

enum class Status : std::uint8_t { Converged, OutOfFuel, Diverged };

struct EvalOutcome {
  Status status = Status::OutOfFuel;
  Nat value;
  std::uint64_t steps = 0;

  bool converged() const { return status == Status::Converged; }
  bool is_diverged() const { return status == Status::Diverged; }
  bool yields(const Nat& v) const { return converged() && value == v; }
  static EvalOutcome converged_with(Nat v, std::uint64_t steps = 0) { return {Status::Converged, std::move(v), steps}; }
  static EvalOutcome out_of_fuel(std::uint64_t steps = 0) { return {Status::OutOfFuel, Nat(), steps}; }
  static EvalOutcome diverged(std::uint64_t steps = 0) { return {Status::Diverged, Nat(), steps}; }

  // Steps are bookkeeping; outcomes compare by status and value.
  friend bool operator==(const EvalOutcome& a, const EvalOutcome& b) {
    return a.status == b.status && (a.status != Status::Converged || a.value == b.value);
  }
};

inline std::string to_string(const EvalOutcome& o) {
  switch (o.status) {
    case Status::Converged:
      return "Converged(" + to_string(o.value) + ")";
    case Status::OutOfFuel:
      return "OutOfFuel";
    case Status::Diverged:
      return "Diverged";
  }
  return "?";
}

// Fixes the first argument: the result run on (x1..xn) behaves as p run on
// (k, x1..xn), for every n. Substitutes Proj(1) := Lit(k) and shifts
// Proj(i) := Proj(i-1) in the top argument scope; the function position of
// a Comp opens a new scope and is left untouched.
inline Program specialize_first(const Program& p, const Nat& k) {
  auto kids = p.children();
  switch (p.op()) {
    case Op::Proj:
      return p.index() == 1 ? Program::lit(k) : Program::proj(p.index() - 1);
    case Op::Lit:
      return p;
    case Op::Pair:
      return Program::pair(specialize_first(kids[0], k), specialize_first(kids[1], k));
    case Op::SmnCode:
      return Program::smn_code(specialize_first(kids[0], k), specialize_first(kids[1], k));
    case Op::Apply:
      return Program::apply(specialize_first(kids[0], k), specialize_first(kids[1], k));
    case Op::Fst:
      return Program::fst(specialize_first(kids[0], k));
    case Op::Snd:
      return Program::snd(specialize_first(kids[0], k));
    case Op::Succ:
      return Program::succ(specialize_first(kids[0], k));
    case Op::ConstCode:
      return Program::const_code(specialize_first(kids[0], k));
    case Op::If0:
      return Program::if0(specialize_first(kids[0], k), specialize_first(kids[1], k), specialize_first(kids[2], k));
    case Op::Comp: {
      std::vector<Program> args;
      args.reserve(kids.size() - 1);
      for (std::size_t i = 1; i < kids.size(); ++i) args.push_back(specialize_first(kids[i], k));
      return Program::comp(kids[0], std::move(args));
    }
  }
  return p;
}

namespace detail {

using Env = std::shared_ptr<const std::vector<Nat>>;

class Machine {
 public:
  Machine(Model model, std::uint64_t fuel) : model_(model), fuel_(fuel) {}

  EvalOutcome run(const Program& root, Env env) {
    tasks_.push_back({Kind::Eval, root, {}, std::move(env), 0});
    while (!tasks_.empty()) {
      Task t = std::move(tasks_.back());
      tasks_.pop_back();
      if (t.kind == Kind::Eval) {
        if (used_ >= fuel_) return EvalOutcome::out_of_fuel(used_);
        ++used_;
        if (!enter(t)) return EvalOutcome::diverged(used_);
      } else {
        finish(t);
      }
    }
    return EvalOutcome::converged_with(std::move(values_.back()), used_);
  }

 private:
  enum class Kind : std::uint8_t { Eval, Pair, Fst, Snd, Succ, Branch, Call, Smn, Const, Apply };

  struct Task {
    Kind kind;
    Program prog;
    Program alt;
    Env env;
    std::size_t n;
  };

  void push_eval(const Program& p, const Env& env) { tasks_.push_back({Kind::Eval, p, {}, env, 0}); }
  void push_op(Kind k, std::size_t n = 0) { tasks_.push_back({k, {}, {}, {}, n}); }

  Nat pop() {
    Nat v = std::move(values_.back());
    values_.pop_back();
    return v;
  }

  // Returns false on a definite fault.
  bool enter(const Task& t) {
    const Program& p = t.prog;
    auto kids = p.children();
    switch (p.op()) {
      case Op::Proj: {
        const auto i = p.index();
        if (i <= t.env->size()) {
          values_.push_back((*t.env)[i - 1]);
          return true;
        }
        if (model_ == Model::UREC) return false;
        values_.emplace_back();
        return true;
      }
      case Op::Lit:
        values_.push_back(p.literal());
        return true;
      case Op::Pair:
      case Op::SmnCode:
        push_op(p.op() == Op::Pair ? Kind::Pair : Kind::Smn);
        push_eval(kids[1], t.env);
        push_eval(kids[0], t.env);
        return true;
      case Op::Apply:
        if (model_ == Model::TOTAL) {
          values_.emplace_back();
          return true;
        }
        push_op(Kind::Apply);
        push_eval(kids[1], t.env);
        push_eval(kids[0], t.env);
        return true;
      case Op::Fst:
      case Op::Snd:
      case Op::Succ:
      case Op::ConstCode: {
        const Kind k = p.op() == Op::Fst ? Kind::Fst
                       : p.op() == Op::Snd ? Kind::Snd
                       : p.op() == Op::Succ ? Kind::Succ
                                            : Kind::Const;
        push_op(k);
        push_eval(kids[0], t.env);
        return true;
      }
      case Op::If0:
        tasks_.push_back({Kind::Branch, kids[1], kids[2], t.env, 0});
        push_eval(kids[0], t.env);
        return true;
      case Op::Comp:
        tasks_.push_back({Kind::Call, kids[0], {}, {}, kids.size() - 1});
        for (std::size_t i = kids.size() - 1; i >= 1; --i) push_eval(kids[i], t.env);
        return true;
    }
    return false;
  }

  void finish(Task& t) {
    switch (t.kind) {
      case Kind::Pair: {
        Nat b = pop();
        Nat a = pop();
        values_.push_back(Nat::pair(a, b));
        return;
      }
      case Kind::Fst:
        values_.back() = values_.back().proj1();
        return;
      case Kind::Snd:
        values_.back() = values_.back().proj2();
        return;
      case Kind::Succ:
        values_.back() = values_.back().succ();
        return;
      case Kind::Const:
        values_.back() = Program::lit(values_.back()).code();
        return;
      case Kind::Smn: {
        Nat k = pop();
        Nat c = pop();
        values_.push_back(specialize_first(decode(c, model_), k).code());
        return;
      }
      case Kind::Branch: {
        Nat c = pop();
        push_eval(c.is_zero() ? t.prog : t.alt, t.env);
        return;
      }
      case Kind::Call: {
        auto args = std::make_shared<std::vector<Nat>>(values_.end() - static_cast<std::ptrdiff_t>(t.n), values_.end());
        values_.resize(values_.size() - t.n);
        push_eval(t.prog, std::move(args));
        return;
      }
      case Kind::Apply: {
        Nat a = pop();
        Nat e = pop();
        push_eval(decode(e, model_), std::make_shared<const std::vector<Nat>>(1, std::move(a)));
        return;
      }
      case Kind::Eval:
        return;
    }
  }

  Model model_;
  std::uint64_t fuel_;
  std::uint64_t used_ = 0;
  std::vector<Task> tasks_;
  std::vector<Nat> values_;
};

}  // namespace detail

inline EvalOutcome eval_program(Model model, const Program& program, std::span<const Nat> args, std::uint64_t fuel) {
  detail::Machine m(model, fuel);
  return m.run(program, std::make_shared<const std::vector<Nat>>(args.begin(), args.end()));
}

inline EvalOutcome eval_program(Model model, const Program& program, std::initializer_list<Nat> args,
                                std::uint64_t fuel) {
  return eval_program(model, program, std::span<const Nat>(args.begin(), args.size()), fuel);
}

// phi_code(args) under `fuel`.
inline EvalOutcome eval(Model model, const Nat& code, std::span<const Nat> args, std::uint64_t fuel) {
  return eval_program(model, decode(code, model), args, fuel);
}

inline EvalOutcome eval(Model model, const Nat& code, std::initializer_list<Nat> args, std::uint64_t fuel) {
  return eval(model, code, std::span<const Nat>(args.begin(), args.size()), fuel);
}

}  // namespace vreal::kernel
