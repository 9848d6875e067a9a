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

// Terms over program applications, their values, and sampled Kleene equality.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "vreal/kernel/eval.hpp"

namespace vreal::kernel {

class VTerm {
 public:
  struct App {
    Nat code;
    std::uint64_t arity;
    std::vector<VTerm> args;
  };

  static VTerm nat(Nat k) { return VTerm(std::move(k)); }
  static VTerm var(std::string name) { return VTerm(std::move(name)); }
  static VTerm app(Nat code, std::vector<VTerm> args) {
    const auto n = args.size();
    return VTerm(App{std::move(code), n, std::move(args)});
  }
  static VTerm app(const Program& p, std::vector<VTerm> args) { return app(p.code(), std::move(args)); }

  const std::variant<Nat, std::string, App>& node() const { return *node_; }

 private:
  template <typename T>
  explicit VTerm(T v) : node_(std::make_shared<const std::variant<Nat, std::string, App>>(std::move(v))) {}

  std::shared_ptr<const std::variant<Nat, std::string, App>> node_;
};

using Substitution = std::map<std::string, Nat>;

class UnboundVariable : public std::invalid_argument {
 public:
  explicit UnboundVariable(const std::string& name) : std::invalid_argument("unbound variable '" + name + "'") {}
};

namespace detail {

inline EvalOutcome vterm_eval_at(Model model, const VTerm& t, const Substitution& s, std::uint64_t fuel) {
  const auto& n = t.node();
  if (const auto* k = std::get_if<Nat>(&n)) return EvalOutcome::converged_with(*k);
  if (const auto* x = std::get_if<std::string>(&n)) {
    auto it = s.find(*x);
    if (it == s.end()) throw UnboundVariable(*x);
    return EvalOutcome::converged_with(it->second);
  }
  const auto& app = std::get<VTerm::App>(n);
  std::vector<Nat> values;
  std::uint64_t used = 0;
  for (const auto& a : app.args) {
    EvalOutcome r = vterm_eval_at(model, a, s, fuel - used);
    used += r.steps;
    if (!r.converged()) return {r.status, Nat(), used};
    values.push_back(std::move(r.value));
  }
  EvalOutcome r = eval(model, app.code, values, fuel - used);
  r.steps += used;
  return r;
}

}  // namespace detail

// The value of t under s, sharing one fuel budget across all calls.
inline EvalOutcome vterm_eval(const VTerm& t, const Substitution& s, std::uint64_t fuel, Model model = Model::UREC) {
  return detail::vterm_eval_at(model, t, s, fuel);
}

struct KleeneResult {
  enum class Kind : std::uint8_t { AgreeOnSamples, DisagreeAt, Unknown };
  Kind kind = Kind::Unknown;
  Substitution witness;  // set for DisagreeAt
  EvalOutcome left, right;
  std::size_t checked = 0;  // samples where both sides were determined
};

struct SampleConfig {
  std::size_t samples = 100;
  std::uint64_t fuel = 10000;
  std::uint64_t value_bound = 64;  // sampled values lie in [0, value_bound)
  std::uint64_t seed = 0;
  Model model = Model::UREC;
};

// Sampled check of t1 ~ t2. A sample disagrees when one side converges and
// the other converges elsewhere or faults. Out of fuel never refutes.
inline KleeneResult kleene_equal(const VTerm& t1, const VTerm& t2, const std::vector<std::string>& vars,
                                 const SampleConfig& cfg = {}) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, cfg.value_bound - 1);
  KleeneResult out;
  bool undetermined = false;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    Substitution s;
    for (const auto& v : vars) s[v] = dist(rng);
    EvalOutcome a = vterm_eval(t1, s, cfg.fuel, cfg.model);
    EvalOutcome b = vterm_eval(t2, s, cfg.fuel, cfg.model);
    if (a.status == Status::OutOfFuel || b.status == Status::OutOfFuel) {
      undetermined = true;
      continue;
    }
    ++out.checked;
    if (!(a == b)) {
      out.kind = KleeneResult::Kind::DisagreeAt;
      out.witness = std::move(s);
      out.left = std::move(a);
      out.right = std::move(b);
      return out;
    }
  }
  out.kind = undetermined ? KleeneResult::Kind::Unknown : KleeneResult::Kind::AgreeOnSamples;
  return out;
}

}  // namespace vreal::kernel
