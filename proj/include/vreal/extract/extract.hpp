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

// Compiles derivations into realizer programs.
//
// A step proving Phi(z1..zm) compiles to an m-ary program psi such that
// psi(d1..dm) realizes Phi(d1..dm) on every evaluation. Programs that must
// manufacture new programs at run time (currying, the translators g and h)
// do so with the object-level code builders, so every realizer is
// self-contained object code.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "vreal/kernel/combinators.hpp"
#include "vreal/kernel/eval.hpp"
#include "vreal/logic/derivation.hpp"
#include "vreal/realize/evaluation.hpp"

namespace vreal::extract {

using kernel::CapabilityError;
using kernel::Model;
using kernel::Nat;
using kernel::Program;
using logic::Formula;
using logic::Kind;

namespace b = kernel::build;

namespace detail {

inline void need_universal(Model model, const std::string& what) {
  if (model == Model::TOTAL) throw CapabilityError(what + " needs the overuniversal function; TOTAL has none");
}

inline Program P(std::uint64_t i) { return Program::proj(i); }
inline Program L(std::uint64_t k) { return Program::lit(Nat(k)); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Translators between "e realizes forall y. A" and the pointwise relation.
//
// Case 1, A an implication or universal with block size n (forall y. A is
// the block y, x1..xn):
//   g(e) = code of  y |-> smn(e, y)
//   h(e) = code of  (y, x.., w) |-> u^{n+1}(phi_e(y), x.., w)
// Case 2, any other A:
//   g(e) = code of  y |-> phi_e(y, 0)
//   h(e) = code of  (y, w) |-> phi_e(y)

struct Translators {
  bool block_case = false;
  std::size_t n = 0;
  Program g;
  std::optional<Program> h;  // absent when the model cannot build it
};

inline Translators translators(const Formula& a, Model model) {
  using detail::P;
  Translators t;
  auto view = logic::canonicalize_blocks(a);
  if (view) {
    t.block_case = true;
    t.n = view->vars.size();
    t.g = b::code_smn(b::code_lit(P(1)), b::quoted(P(1)));
    if (model == Model::UREC) {
      std::vector<Program> args{b::code_apply(b::code_lit(P(1)), b::quoted(P(1)))};
      for (std::uint64_t i = 2; i <= t.n + 2; ++i) args.push_back(b::quoted(P(i)));
      t.h = b::code_comp(b::quoted(kernel::overuniversal_program(t.n + 1)), args);
    }
  } else {
    t.g = b::code_comp(P(1), {b::quoted(P(1)), b::quoted(detail::L(0))});
    t.h = b::code_comp(P(1), {b::quoted(P(1))});
  }
  return t;
}

// Unary program computing g_A; works in both models.
inline Nat g_index(const Formula& a, Model model = Model::UREC) { return translators(a, model).g.code(); }

// Unary program computing h_A; throws CapabilityError for block formulas in
// TOTAL.
inline Nat h_index(const Formula& a, Model model = Model::UREC) {
  auto t = translators(a, model);
  if (!t.h) detail::need_universal(model, "h for a block formula");
  return t.h->code();
}

inline Program h_program(const Formula& a, Model model) {
  auto t = translators(a, model);
  if (!t.h) detail::need_universal(model, "h for a block formula");
  return *t.h;
}

// ---------------------------------------------------------------------------
// Axioms.

namespace detail {

// The program for term t among the variables zs.
inline Program term_program(const logic::Term& t, const std::vector<std::string>& zs) {
  if (!t.is_var()) return Program::lit(Nat(t.value()));
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (zs[i] == t.name()) return P(i + 1);
  }
  // The term names no listed variable, so the instance does not depend on
  // it: pad like modus ponens does.
  return zs.empty() ? L(0) : P(1);
}

}  // namespace detail

// An m-ary program (m = zs.size()) realizing the instance at every point.
inline Program axiom_realizer(const logic::AxiomInstance& inst, const std::vector<std::string>& zs,
                              Model model = Model::UREC) {
  using detail::L;
  using detail::P;
  auto quote = [](const Program& p) { return Program::lit(p.code()); };
  switch (inst.id) {
    case 1:
      return L(0);
    case 2:
      // a |-> code of (y |-> a)
      return quote(Program::const_code(P(1)));
    case 3: {
      detail::need_universal(model, "A3");
      // (p, q) |-> code of x |-> u(phi_p(x), phi_q(x))
      Program sbin = b::code_apply(b::code_apply(b::code_lit(P(1)), b::quoted(P(1))),
                                   b::code_apply(b::code_lit(P(2)), b::quoted(P(1))));
      return quote(b::curry(sbin));
    }
    case 4:
      return quote(b::curry(Program::pair(P(1), P(2))));
    case 5:
      return quote(Program::fst(P(1)));
    case 6:
      return quote(Program::snd(P(1)));
    case 7: {
      // (p, q) |-> code of k |-> if fst k = 0 then phi_p(snd k) else phi_q(snd k)
      Program sbin = b::code_if0(b::quoted(Program::fst(P(1))), b::code_comp(P(1), {b::quoted(Program::snd(P(1)))}),
                                 b::code_comp(P(2), {b::quoted(Program::snd(P(1)))}));
      return quote(b::curry(sbin));
    }
    case 8:
      return quote(Program::pair(L(0), P(1)));
    case 9:
      return quote(Program::pair(L(1), P(1)));
    case 10:
      return quote(P(1));
    case 11: {
      detail::need_universal(model, "A11");
      if (!inst.a || !inst.term) throw logic::DerivationError("A11 needs A and a term");
      // z |-> code of x |-> u(g_A(x), d_t)
      const Program g = translators(*inst.a, model).g;
      return b::code_apply(b::code_comp(b::quoted(g), {b::quoted(P(1))}),
                           b::code_lit(detail::term_program(*inst.term, zs)));
    }
    case 12: {
      if (!inst.term) throw logic::DerivationError("A12 needs a term");
      // z |-> code of x |-> pair(d_t, x)
      return b::code_pair(b::code_lit(detail::term_program(*inst.term, zs)), b::quoted(P(1)));
    }
    case 13: {
      if (!inst.a) throw logic::DerivationError("A13 needs A");
      // p |-> code of w |-> h_A(code of y |-> phi_p(y, w))
      const Program h = h_program(*inst.a, model);
      Program sbin = Program::comp(h, {b::code_comp(P(1), {b::quoted(P(1)), b::code_lit(P(2))})});
      return quote(b::curry(sbin));
    }
    case 14:
      // p |-> code of x |-> phi_p(fst x, snd x)
      return quote(b::code_comp(P(1), {b::quoted(Program::fst(P(1))), b::quoted(Program::snd(P(1)))}));
    default:
      throw logic::DerivationError("unknown axiom A" + std::to_string(inst.id));
  }
}

// ---------------------------------------------------------------------------
// Derivations.

struct TableEntry {
  std::size_t step;
  std::vector<std::string> vars;
  Program program;
};

struct ExtractionResult {
  Program program;
  Nat psi;
  std::size_t arity = 0;
  std::vector<std::string> vars;
  logic::Derivation derivation;
  std::vector<TableEntry> table;  // first realizer built for each step, by step
};

namespace detail {

class Extractor {
 public:
  Extractor(const logic::Derivation& d, Model model) : d_(d), model_(model) {}

  Program realize(std::size_t k, const std::vector<std::string>& zs) {
    auto key = std::make_pair(k, zs);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const logic::Step& step = d_.steps.at(k);
    for (const auto& v : logic::free_vars(step.formula)) {
      if (std::find(zs.begin(), zs.end(), v) == zs.end()) {
        throw logic::DerivationError("step " + std::to_string(k) + ": free variable '" + v +
                                     "' missing from the variable list");
      }
    }
    Program p = build(step, zs);
    memo_.emplace(std::move(key), p);
    if (!first_.contains(k)) first_.emplace(k, TableEntry{k, zs, p});
    return p;
  }

  std::vector<TableEntry> table() const {
    std::vector<TableEntry> out;
    for (const auto& [k, e] : first_) out.push_back(e);
    return out;
  }

 private:
  Program build(const logic::Step& step, const std::vector<std::string>& zs) {
    if (const auto* ax = std::get_if<logic::ByAxiom>(&step.by)) return axiom_realizer(ax->inst, zs, model_);
    const std::uint64_t m = zs.size();
    if (const auto* mp = std::get_if<logic::ByMP>(&step.by)) {
      need_universal(model_, "modus ponens");
      // The antecedent may mention variables the conclusion does not; they
      // are appended to the list and instantiated with z1 (0 when m = 0).
      std::vector<std::string> wide = zs;
      for (const auto& v : logic::free_vars(d_.steps[mp->antecedent].formula)) {
        if (std::find(zs.begin(), zs.end(), v) == zs.end()) wide.push_back(v);
      }
      const Program imp = realize(mp->implication, wide);
      const Program ant = realize(mp->antecedent, wide);
      if (wide.size() == zs.size()) return Program::apply(imp, ant);
      std::vector<Program> args = kernel::projections(m);
      for (std::size_t i = m; i < wide.size(); ++i) args.push_back(m == 0 ? L(0) : P(1));
      return Program::apply(Program::comp(imp, args), Program::comp(ant, args));
    }
    const auto& g = std::get<logic::ByGen>(step.by);
    // Premise list is (y, z..); a z slot named y is vacuous in the
    // conclusion and gets a fresh name.
    std::vector<std::string> inner{g.var};
    std::set<std::string> used(zs.begin(), zs.end());
    used.insert(g.var);
    for (const auto& z : zs) inner.push_back(z == g.var ? logic::fresh_name(z, used) : z);
    const Program premise = realize(g.premise, inner);
    const Program h = h_program(d_.steps[g.premise].formula, model_);
    // s(z..) = code of y |-> premise(y, z..): move y last, then fix z1..zm
    // one at a time.
    std::vector<Program> perm{P(m + 1)};
    for (std::uint64_t i = 1; i <= m; ++i) perm.push_back(P(i));
    Program s = b::quoted(m == 0 ? premise : Program::comp(premise, perm));
    for (std::uint64_t i = 1; i <= m; ++i) s = Program::smn_code(s, P(i));
    return Program::comp(h, {s});
  }

  const logic::Derivation& d_;
  Model model_;
  std::map<std::pair<std::size_t, std::vector<std::string>>, Program> memo_;
  std::map<std::size_t, TableEntry> first_;
};

}  // namespace detail

// Compiles d for the variable list zs, which must cover the free variables
// of the conclusion. Throws DerivationError for an invalid derivation and
// CapabilityError when the model lacks the overuniversal function.
inline ExtractionResult extract(const logic::Derivation& d, const std::vector<std::string>& zs,
                                Model model = Model::UREC) {
  if (auto ok = logic::check_derivation(d); !ok) {
    throw logic::DerivationError("invalid derivation at step " + std::to_string(ok.step) + ": " + ok.reason);
  }
  detail::Extractor ex(d, model);
  ExtractionResult r;
  r.program = ex.realize(d.steps.size() - 1, zs);
  r.psi = r.program.code();
  r.arity = zs.size();
  r.vars = zs;
  r.derivation = d;
  r.table = ex.table();
  return r;
}

inline constexpr std::uint64_t kClosedFuel = 10'000'000;

// The single realizer of a derivable sentence: the 0-ary extracted program
// run to its value.
inline Nat closed_realizer(const logic::Derivation& d, Model model = Model::UREC, std::uint64_t fuel = kClosedFuel) {
  if (!logic::free_vars(d.conclusion()).empty()) {
    throw logic::DerivationError("closed_realizer needs a sentence; conclusion has free variables");
  }
  ExtractionResult r = extract(d, {}, model);
  auto out = kernel::eval_program(model, r.program, std::span<const Nat>(), fuel);
  if (!out.converged()) throw std::runtime_error("closed realizer did not converge: " + kernel::to_string(out));
  return out.value;
}

inline nlohmann::json extraction_to_json(const ExtractionResult& r) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& e : r.table) {
    steps.push_back({{"step", e.step},
                     {"formula", logic::print_formula(r.derivation.steps[e.step].formula)},
                     {"vars", e.vars},
                     {"code", realize::nat_to_json(e.program.code())},
                     {"justification", logic::justification_to_json(r.derivation.steps[e.step].by)}});
  }
  return {{"psi", realize::nat_to_json(r.psi)},
          {"arity", r.arity},
          {"vars", r.vars},
          {"conclusion", logic::print_formula(r.derivation.conclusion())},
          {"steps", steps}};
}

}  // namespace vreal::extract
