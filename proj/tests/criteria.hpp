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

// The acceptance properties, shared by the acceptance runner and the unit
// suites. Each returns a pass flag and a one-line summary.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "vreal/extract/extract.hpp"
#include "vreal/harness/theorem.hpp"
#include "vreal/kernel/combinators.hpp"
#include "vreal/kernel/random.hpp"
#include "vreal/logic/derivation.hpp"
#include "vreal/realize/checker.hpp"

namespace criteria {

using namespace vreal;
using kernel::Model;
using kernel::Nat;
using kernel::Program;
using logic::Formula;
using logic::Term;

struct Result {
  bool pass = true;
  std::string summary;
};

inline constexpr std::uint64_t kSeed = 20260101;
inline constexpr std::uint64_t kOracleFuel = 20'000;
inline constexpr std::uint64_t kLibFuel = 1'000'000;

// Library outcome against the reference interpreter: equal when the
// reference is determined, no claim otherwise.
inline bool agrees(const kernel::EvalOutcome& lib, const oracle::Out& ref) {
  switch (ref.st) {
    case oracle::St::Ok:
      return lib.yields(ref.v);
    case oracle::St::Fault:
      return lib.is_diverged();
    case oracle::St::Fuel:
      return true;
  }
  return false;
}

inline std::vector<Nat> random_args(oracle::Gen& g, std::uint64_t n, std::uint64_t bound = 64) {
  std::vector<Nat> out;
  for (std::uint64_t i = 0; i < n; ++i) out.emplace_back(g.below(bound));
  return out;
}

inline Nat random_code(oracle::Gen& g, std::uint64_t arity, bool apply = false) {
  kernel::RandomProgramConfig cfg;
  cfg.arity = arity;
  cfg.depth = 1 + g.below(4);
  cfg.allow_apply = apply;
  return kernel::random_program(g.rng, cfg).code();
}

// ---------------------------------------------------------------------------
// 1. Kernel laws.

struct LawStats {
  std::size_t determined = 0;
  std::size_t failures = 0;
};

// Runs `sample` until `want` samples had a determined reference outcome.
// `sample` returns nullopt when the reference ran out of fuel.
inline LawStats run_law(std::size_t want, const std::function<std::optional<bool>()>& sample) {
  LawStats st;
  for (std::size_t tries = 0; st.determined < want && tries < 50 * want; ++tries) {
    auto r = sample();
    if (!r) continue;
    ++st.determined;
    if (!*r) ++st.failures;
  }
  return st;
}

// Reference value of phi_e on args, or nullopt when undetermined.
inline std::optional<oracle::Out> ref(Model m, const Nat& e, const std::vector<Nat>& args) {
  auto r = oracle::eval(m, e, args, kOracleFuel);
  if (r.st == oracle::St::Fuel) return std::nullopt;
  return r;
}

// Evaluates a chain "inner values then outer" on the reference side.
inline std::optional<oracle::Out> ref_compose(Model m, const Nat& e, const std::vector<Nat>& es,
                                              const std::vector<std::uint64_t>& ar, const std::vector<Nat>& xs) {
  std::vector<Nat> vals;
  for (std::size_t i = 0; i < es.size(); ++i) {
    auto r = ref(m, es[i], std::vector<Nat>(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(ar[i])));
    if (!r) return std::nullopt;
    if (r->st != oracle::St::Ok) return r;
    vals.push_back(r->v);
  }
  return ref(m, e, vals);
}

inline std::map<std::string, LawStats> kernel_laws(std::uint64_t seed, std::size_t samples) {
  std::map<std::string, LawStats> out;
  oracle::Gen g(seed);
  for (Model m : {Model::UREC, Model::TOTAL}) {
    const bool urec = m == Model::UREC;
    const std::string tag = urec ? "" : "/total";
    out["Cm" + tag] = run_law(samples, [&]() -> std::optional<bool> {
      const std::uint64_t k = 1 + g.below(3);
      std::vector<Nat> es;
      std::vector<std::uint64_t> ar;
      for (std::uint64_t i = 0; i < k; ++i) {
        ar.push_back(g.below(3));
        es.push_back(random_code(g, std::max<std::uint64_t>(ar.back(), 1), urec));
      }
      const Nat e = random_code(g, k, urec);
      const std::uint64_t n = *std::max_element(ar.begin(), ar.end());
      const auto xs = random_args(g, n);
      auto want = ref_compose(m, e, es, ar, xs);
      if (!want) return std::nullopt;
      return agrees(kernel::eval(m, kernel::compose_index(e, es, ar, m), xs, kLibFuel), *want);
    });
    out["Cn" + tag] = run_law(samples, [&]() -> std::optional<bool> {
      const Nat k(g.below(1u << 20));
      const auto xs = random_args(g, g.below(4));
      const bool meta = kernel::eval(m, kernel::const_index(k), xs, 10).yields(k);
      // Object level: ConstCode(Lit k) yields a code that behaves the same.
      auto c = kernel::eval(m, Program::const_code(Program::lit(k)).code(), {}, 10);
      auto via = ref(m, c.value, xs);
      return meta && c.converged() && via && via->st == oracle::St::Ok && via->v == k;
    });
    out["Cs" + tag] = run_law(samples, [&]() -> std::optional<bool> {
      const std::uint64_t n = 1 + g.below(2);
      const Nat e1 = random_code(g, n, urec), e2 = random_code(g, n, urec);
      auto xs = random_args(g, n);
      const Nat d(g.coin(50) ? 0 : 1 + g.below(5));
      auto want = ref(m, d.is_zero() ? e1 : e2, xs);
      if (!want) return std::nullopt;
      xs.push_back(d);
      return agrees(kernel::eval(m, kernel::cond_index(e1, e2, n, m), xs, kLibFuel), *want);
    });
    out["Cs'" + tag] = run_law(samples, [&]() -> std::optional<bool> {
      const std::uint64_t n = g.below(3);
      const Nat e1 = random_code(g, n + 1, urec), e2 = random_code(g, n + 1, urec);
      auto xs = random_args(g, n);
      const Nat t(g.coin(50) ? 0 : 1 + g.below(3)), v(g.below(64));
      auto ys = xs;
      ys.push_back(v);
      auto want = ref(m, t.is_zero() ? e1 : e2, ys);
      if (!want) return std::nullopt;
      xs.push_back(Nat::pair(t, v));
      return agrees(kernel::eval(m, kernel::cond_prime_index(e1, e2, n, m), xs, kLibFuel), *want);
    });
    out["SMN" + tag] = run_law(samples, [&]() -> std::optional<bool> {
      const std::uint64_t n = g.below(3), k = g.below(3);
      const Nat e = random_code(g, n + k, urec);
      const auto xs = random_args(g, n);
      const auto ks = random_args(g, k);
      auto all = xs;
      all.insert(all.end(), ks.begin(), ks.end());
      auto want = ref(m, e, all);
      if (!want) return std::nullopt;
      return agrees(kernel::eval(m, kernel::smn_index(e, ks, n, m), xs, kLibFuel), *want);
    });
    out["PV" + tag] = run_law(samples, [&]() -> std::optional<bool> {
      const std::uint64_t n = 1 + g.below(3);
      std::vector<std::uint64_t> perm(n);
      std::iota(perm.begin(), perm.end(), 1);
      std::shuffle(perm.begin(), perm.end(), g.rng);
      const Nat e = random_code(g, n, urec);
      const auto xs = random_args(g, n);
      std::vector<Nat> permuted;
      for (auto p : perm) permuted.push_back(xs[p - 1]);
      auto want = ref(m, e, permuted);
      if (!want) return std::nullopt;
      return agrees(kernel::eval(m, kernel::permute_index(e, perm, m), xs, kLibFuel), *want);
    });
    out["DV" + tag] = run_law(samples, [&]() -> std::optional<bool> {
      const std::uint64_t n = g.below(3);
      const Nat e = random_code(g, std::max<std::uint64_t>(n, 1), urec);
      auto xs = random_args(g, n);
      auto want = ref(m, e, xs);
      if (!want) return std::nullopt;
      xs.emplace_back(g.below(64));
      return agrees(kernel::eval(m, kernel::dummy_index(e, n, m), xs, kLibFuel), *want);
    });
  }
  return out;
}

inline Result criterion1() {
  Result res;
  std::ostringstream os;
  // Pairing.
  std::size_t pair_bad = 0;
  for (std::uint64_t a = 0; a < 1000; ++a) {
    for (std::uint64_t b = 0; b < 1000; ++b) {
      const Nat p = Nat::pair(Nat(a), Nat(b));
      if (p != Nat(static_cast<std::uint64_t>(oracle::cantor(a, b))) || p.proj1() != Nat(a) || p.proj2() != Nat(b))
        ++pair_bad;
    }
  }
  for (std::uint64_t n = 0; n < 100000; ++n) {
    const Nat x(n);
    const auto [a, b] = oracle::uncantor(n);
    if (x.proj1() != Nat(a) || x.proj2() != Nat(b) || Nat::pair(x.proj1(), x.proj2()) != x) ++pair_bad;
  }
  os << "pairing mismatches " << pair_bad;
  res.pass = pair_bad == 0;
  // Combinator laws.
  for (const auto& [name, st] : kernel_laws(kSeed, 100)) {
    if (st.determined < 100 || st.failures) {
      res.pass = false;
      os << "; " << name << " " << st.failures << " failures / " << st.determined;
    }
  }
  os << "; laws Cm Cn Cs Cs' SMN PV DV x2 models, 100 samples each";
  // Fuel monotonicity, plus exact agreement with the reference at equal fuel.
  oracle::Gen g(kSeed + 1);
  std::size_t mono_bad = 0, exact_bad = 0;
  for (int i = 0; i < 500; ++i) {
    const Model m = g.coin(70) ? Model::UREC : Model::TOTAL;
    const std::uint64_t n = g.below(3);
    const Nat e = random_code(g, std::max<std::uint64_t>(n, 1), m == Model::UREC);
    const auto xs = random_args(g, n);
    const std::uint64_t f1 = 1 + g.below(60), f2 = f1 + g.below(2000);
    auto lo = kernel::eval(m, e, xs, f1);
    auto hi = kernel::eval(m, e, xs, f2);
    if (lo.converged() && !hi.yields(lo.value)) ++mono_bad;
    auto r = oracle::eval(m, e, xs, f1);
    const bool same = (r.st == oracle::St::Ok && lo.yields(r.v)) ||
                      (r.st == oracle::St::Fault && lo.is_diverged()) ||
                      (r.st == oracle::St::Fuel && lo.status == kernel::Status::OutOfFuel);
    if (!same) ++exact_bad;
  }
  os << "; fuel monotonicity violations " << mono_bad << "/500, fuel-exact mismatches " << exact_bad;
  res.pass = res.pass && mono_bad == 0 && exact_bad == 0;
  res.summary = os.str();
  return res;
}

// ---------------------------------------------------------------------------
// 2. Overuniversal functions.

inline Result criterion2() {
  Result res;
  std::ostringstream os;
  oracle::Gen g(kSeed + 2);
  for (std::uint64_t n = 1; n <= 3; ++n) {
    const Nat u = kernel::overuniversal_index(n);
    std::size_t sampled = 0, bad = 0;
    for (int tries = 0; sampled < 100 && tries < 100000; ++tries) {
      const Nat e = random_code(g, n, true);
      const auto xs = random_args(g, n);
      auto want = oracle::eval(Model::UREC, e, xs, kOracleFuel);
      if (want.st != oracle::St::Ok) continue;
      ++sampled;
      std::vector<Nat> args{e};
      args.insert(args.end(), xs.begin(), xs.end());
      if (!kernel::eval(Model::UREC, u, args, kLibFuel).yields(want.v)) ++bad;
    }
    os << (n > 1 ? ", " : "") << "u^" << n << " " << sampled - bad << "/" << sampled;
    res.pass = res.pass && sampled == 100 && bad == 0;
  }
  res.summary = os.str();
  return res;
}

// ---------------------------------------------------------------------------
// Random formulas.

struct FormulaGen {
  oracle::Gen& g;
  std::vector<std::uint64_t> domain;
  int bound_counter = 0;

  Term term(const std::vector<std::string>& vars) {
    if (!vars.empty() && g.coin(70)) return Term::var(vars[g.below(vars.size())]);
    return Term::constant(domain[g.below(domain.size())]);
  }

  Formula atom(const std::vector<std::string>& vars) {
    switch (g.below(3)) {
      case 0:
        return Formula::atom("P", {term(vars)});
      case 1:
        return Formula::atom("Q", {term(vars)});
      default:
        return Formula::atom("R", {term(vars), term(vars)});
    }
  }

  // Atoms, /\, \/, exists (and bottom when `bottom`).
  Formula positive(int depth, std::vector<std::string> vars, bool bottom = false) {
    if (depth <= 0 || g.coin(30)) {
      if (bottom && g.coin(5)) return Formula::bottom();
      return atom(vars);
    }
    switch (g.below(3)) {
      case 0:
        return Formula::conj(positive(depth - 1, vars, bottom), positive(depth - 1, vars, bottom));
      case 1:
        return Formula::disj(positive(depth - 1, vars, bottom), positive(depth - 1, vars, bottom));
      default: {
        const std::string v = "b" + std::to_string(bound_counter++ % 3);
        vars.push_back(v);
        return Formula::exists(v, positive(depth - 1, vars, bottom));
      }
    }
  }

  // Any connective.
  Formula any(int depth, std::vector<std::string> vars) {
    if (depth <= 0 || g.coin(25)) {
      const auto r = g.below(20);
      if (r == 0) return Formula::top();
      if (r == 1) return Formula::bottom();
      return atom(vars);
    }
    switch (g.below(6)) {
      case 0:
        return Formula::conj(any(depth - 1, vars), any(depth - 1, vars));
      case 1:
        return Formula::disj(any(depth - 1, vars), any(depth - 1, vars));
      case 2:
        return Formula::imp(any(depth - 1, vars), any(depth - 1, vars));
      case 3:
      case 4: {
        const std::string v = "b" + std::to_string(bound_counter++ % 3);
        vars.push_back(v);
        return g.coin(50) ? Formula::exists(v, any(depth - 1, vars)) : Formula::forall(v, any(depth - 1, vars));
      }
      default:
        return atom(vars);
    }
  }

  // Mostly positive, sometimes with an implication or universal inside.
  Formula schematic(const std::vector<std::string>& vars) {
    return g.coin(75) ? positive(2, vars, true) : any(2, vars);
  }
};

// Realizer sets of these formulas are finite and listed exactly by the
// checker.
inline bool enumerable(const Formula& a) {
  using logic::Kind;
  switch (a.kind()) {
    case Kind::Bottom:
    case Kind::Atom:
      return true;
    case Kind::And:
    case Kind::Or:
      return enumerable(a.lhs()) && enumerable(a.rhs());
    case Kind::Exists:
      return enumerable(a.body());
    default:
      return false;
  }
}

// Every antecedent the checker meets while checking a realizer of `a` is
// enumerable, so a sound realizer must come out as exactly Realizes.
inline bool antecedents_enumerable(const Formula& a) {
  using logic::Kind;
  switch (a.kind()) {
    case Kind::Bottom:
    case Kind::Top:
    case Kind::Atom:
      return true;
    case Kind::And:
    case Kind::Or:
      return antecedents_enumerable(a.lhs()) && antecedents_enumerable(a.rhs());
    case Kind::Exists:
      return antecedents_enumerable(a.body());
    case Kind::Imp:
    case Kind::Forall: {
      auto v = logic::canonicalize_blocks(a);
      if (v->wrapped) return false;
      return enumerable(v->antecedent) && antecedents_enumerable(v->consequent);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Checking an extracted realizer at every point of its variable list.

struct PointStats {
  std::size_t points = 0, realizes = 0, unknown = 0, refuted = 0, no_value = 0;
  std::string first_failure;
};

inline void check_family(const Program& psi, const std::vector<std::string>& zs, const Formula& phi,
                         const realize::Evaluation& f, PointStats& st, bool expect_exact) {
  const auto& dom = f.domain();
  std::vector<std::size_t> idx(zs.size(), 0);
  realize::Checker ck(f, {100000, 64, Model::UREC});
  while (true) {
    std::vector<Nat> args;
    std::vector<std::pair<Term, std::string>> sub;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      args.emplace_back(dom[idx[i]]);
      sub.emplace_back(Term::constant(dom[idx[i]]), zs[i]);
    }
    const Formula closed = zs.empty() ? phi : logic::substitute(phi, sub);
    ++st.points;
    auto val = kernel::eval_program(Model::UREC, psi, args, kLibFuel);
    if (!val.converged()) {
      ++st.no_value;
      if (st.first_failure.empty()) st.first_failure = "no value for " + logic::print_formula(closed);
    } else {
      auto v = ck.realizes(val.value, closed);
      if (v.is_refuted()) {
        ++st.refuted;
        if (st.first_failure.empty()) st.first_failure = "refuted " + logic::print_formula(closed);
      } else if (v.is_unknown()) {
        ++st.unknown;
        if (expect_exact && st.first_failure.empty()) {
          st.first_failure = "expected Realizes, got " + realize::verdict_name(v) + " on " + logic::print_formula(closed);
        }
      } else {
        ++st.realizes;
      }
    }
    std::size_t i = zs.size();
    while (i > 0 && ++idx[i - 1] == dom.size()) idx[--i] = 0;
    if (i == 0) break;
  }
}

inline std::vector<std::string> sorted_free(const Formula& a) {
  auto s = logic::free_vars(a);
  return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------
// 3. Axiom soundness.

inline logic::AxiomInstance random_instance(int id, FormulaGen& fg) {
  const std::vector<std::string> zs{"x", "y"};
  std::vector<std::string> with_w = zs;
  with_w.push_back("w");
  logic::AxiomInstance in;
  in.id = id;
  if (id <= 10) {
    in.a = fg.schematic(zs);
    in.b = fg.schematic(zs);
    in.c = fg.schematic(zs);
  } else {
    in.var = "w";
    in.a = fg.schematic(with_w);
    if (id >= 13) in.b = fg.schematic(zs);
    if (id <= 12) in.term = fg.term(zs);
  }
  return in;
}

inline Result criterion3(std::size_t per_axiom = 50) {
  Result res;
  std::ostringstream os;
  oracle::Gen g(kSeed + 3);
  std::size_t exact_expected = 0;
  for (int id = 1; id <= 14; ++id) {
    PointStats st;
    for (std::size_t i = 0; i < per_axiom; ++i) {
      const auto f = g.evaluation(4);
      FormulaGen fg{g, f.domain()};
      const auto in = random_instance(id, fg);
      const Formula phi = logic::axiom_formula(in);
      const auto zs = sorted_free(phi);
      const Program psi = extract::axiom_realizer(in, zs);
      const bool exact = antecedents_enumerable(phi);
      if (exact) ++exact_expected;
      check_family(psi, zs, phi, f, st, exact);
    }
    const bool ok = st.refuted == 0 && st.no_value == 0 && st.first_failure.empty();
    res.pass = res.pass && ok;
    os << (id > 1 ? " " : "") << "A" << id << ":" << st.realizes << "R/" << st.unknown << "U/" << st.refuted << "X";
    if (!ok) os << " [" << st.first_failure << "]";
  }
  os << "; instances with enumerable antecedents " << exact_expected;
  res.summary = os.str();
  return res;
}

// ---------------------------------------------------------------------------
// 4. Rule cases.

// A random derivation ending in one MP over verified axiom instances.
inline logic::Derivation random_mp(FormulaGen& fg, int kind) {
  using logic::AxiomInstance;
  logic::DerivationBuilder b;
  const std::vector<std::string> zs{"x", "y"};
  auto inst = [&](int id) {
    AxiomInstance in;
    in.id = id;
    in.a = fg.positive(2, zs);
    in.b = fg.positive(2, zs);
    in.c = fg.positive(1, zs);
    return in;
  };
  const int ids[] = {1, 2, 4, 5, 6, 8, 9, 10};
  const std::size_t x = b.axiom(inst(ids[fg.g.below(8)]));
  const Formula fx = b.formula(x);
  const Formula other = fg.positive(2, zs);
  switch (kind % 4) {
    case 0:  // other -> X
      b.mp(x, b.axiom({2, fx, other, {}, "", {}}));
      return b.derivation();
    case 1: {  // conjunction of two instances
      const std::size_t y = b.axiom(inst(ids[fg.g.below(8)]));
      const std::size_t s = b.axiom({4, fx, b.formula(y), {}, "", {}});
      b.mp(y, b.mp(x, s));
      return b.derivation();
    }
    case 2:  // left injection
      b.mp(x, b.axiom({8, fx, other, {}, "", {}}));
      return b.derivation();
    default: {  // (a -> c) -> (a -> a) from A2 and A3
      const Formula a = fg.positive(1, zs), c = fg.positive(1, zs);
      const std::size_t s1 = b.axiom({2, a, c, {}, "", {}});
      const std::size_t s2 = b.axiom({3, a, c, a, "", {}});
      b.mp(s1, s2);
      return b.derivation();
    }
  }
}

inline Result criterion4(std::size_t n = 50) {
  Result res;
  std::ostringstream os;
  oracle::Gen g(kSeed + 4);
  PointStats mp, gen;
  for (std::size_t i = 0; i < n; ++i) {
    const auto f = g.evaluation(3);
    FormulaGen fg{g, f.domain()};
    const auto d = random_mp(fg, static_cast<int>(i));
    const auto zs = sorted_free(d.conclusion());
    const auto r = extract::extract(d, zs);
    check_family(r.program, zs, d.conclusion(), f, mp, false);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto f = g.evaluation(3);
    FormulaGen fg{g, f.domain()};
    // An axiom instance with x free, generalized over x (or over a vacuous
    // variable), then possibly over y too.
    logic::DerivationBuilder b;
    logic::AxiomInstance in;
    const std::vector<std::string> zs{"x", "y"};
    in.id = (i % 3 == 0) ? 12 : 2;
    if (in.id == 12) {
      in.var = "w";
      in.a = fg.positive(2, {"x", "y", "w"});
      in.term = fg.term(zs);
    } else {
      in.a = fg.positive(2, zs);
      in.b = fg.positive(2, zs);
    }
    std::size_t s = b.axiom(in);
    s = b.gen(s, i % 4 == 1 ? "v" : "x");
    if (i % 2 == 0) s = b.gen(s, "y");
    const auto& d = b.derivation();
    const auto vars = sorted_free(d.conclusion());
    const auto r = extract::extract(d, vars);
    check_family(r.program, vars, d.conclusion(), f, gen, false);
  }
  res.pass = mp.refuted == 0 && mp.no_value == 0 && gen.refuted == 0 && gen.no_value == 0;
  os << "MP " << n << " derivations, " << mp.points << " points: " << mp.realizes << " Realizes, " << mp.unknown
     << " Unknown, " << mp.refuted << " Refuted; Gen " << n << " derivations, " << gen.points << " points: "
     << gen.realizes << " Realizes, " << gen.unknown << " Unknown, " << gen.refuted << " Refuted";
  if (!mp.first_failure.empty()) os << " [MP: " << mp.first_failure << "]";
  if (!gen.first_failure.empty()) os << " [Gen: " << gen.first_failure << "]";
  res.summary = os.str();
  return res;
}

// ---------------------------------------------------------------------------
// 5. Closed realizers of the fixture sentences.

inline realize::Evaluation formula5_evaluation(oracle::Gen& g) {
  const auto k = 1 + g.below(3);
  std::vector<std::uint64_t> dom;
  for (std::uint64_t i = 0; i < k; ++i) dom.push_back(i);
  realize::Evaluation f(dom);
  for (auto a : dom) {
    f.set("Q", {a}, g.small_set());
    for (auto b : dom) {
      f.set("R", {a, b}, g.small_set());
      for (auto c : dom) f.set("P", {a, b, c}, g.small_set());
    }
  }
  return f;
}

inline Result criterion5() {
  Result res;
  std::ostringstream os;
  oracle::Gen g(kSeed + 5);
  const std::vector<std::pair<std::string, logic::Derivation>> fixtures{
      {"T", harness::top_derivation()},
      {"identity", harness::identity_derivation()},
      {"identity via T", harness::identity_derivation_via_top()},
      {"separating formula", harness::derivation5()}};
  for (const auto& [name, d] : fixtures) {
    const Nat e = extract::closed_realizer(d);
    std::size_t ok = 0;
    for (int i = 0; i < 10; ++i) {
      const auto f = name == "separating formula" ? formula5_evaluation(g) : g.evaluation(4);
      if (!realize::realizes(e, d.conclusion(), f).is_refuted()) ++ok;
    }
    os << (name == "T" ? "" : ", ") << name << " " << ok << "/10";
    res.pass = res.pass && ok == 10;
  }
  res.summary = os.str();
  return res;
}

// ---------------------------------------------------------------------------
// 6. Separating-formula pipeline.

inline Result criterion6() {
  harness::AgreementConfig cfg;
  cfg.seed = kSeed + 6;
  const auto p = harness::theorem_pipeline(cfg);
  // Re-check the sampled points against the reference interpreter too.
  oracle::Gen g(kSeed + 6);
  std::size_t ref_ok = 0, ref_n = 0;
  for (int tries = 0; ref_n < 100 && tries < 100000; ++tries) {
    const Nat a(g.below(1024)), b(g.below(1024));
    auto want = oracle::eval(Model::UREC, a, {b}, kOracleFuel);
    if (want.st != oracle::St::Ok) continue;
    ++ref_n;
    if (kernel::eval(Model::UREC, p.u, {a, b}, 10'000'000).yields(want.v)) ++ref_ok;
  }
  Result res;
  res.pass = p.agreement.sampled == 100 && p.agreement.all_agree() && ref_n == 100 && ref_ok == 100;
  res.summary = "u agrees with direct evaluation " + std::to_string(p.agreement.agreed) + "/" +
                std::to_string(p.agreement.sampled) + ", with the reference interpreter " + std::to_string(ref_ok) +
                "/" + std::to_string(ref_n);
  return res;
}

// ---------------------------------------------------------------------------
// 7. Diagonal certificates.

inline Result criterion7() {
  oracle::Gen g(kSeed + 7);
  std::size_t ok = 0;
  for (int i = 0; i < 20; ++i) {
    kernel::RandomProgramConfig cfg;
    cfg.arity = 2;
    cfg.depth = 1 + g.below(5);
    const Nat c = kernel::random_program(g.rng, cfg).code();
    const auto r = harness::diagonalize(c);
    const auto* cert = std::get_if<harness::DiagonalCertificate>(&r);
    if (!cert || !harness::replay(*cert)) continue;
    // Independent confirmation on the reference interpreter.
    auto lhs = oracle::eval(Model::TOTAL, cert->candidate, {cert->point_a, cert->point_b}, kOracleFuel);
    auto rhs = oracle::eval(Model::TOTAL, cert->diagonal_code, {cert->point_a}, kOracleFuel);
    if (lhs.st == oracle::St::Ok && rhs.st == oracle::St::Ok && lhs.v != rhs.v) ++ok;
  }
  return {ok == 20, std::to_string(ok) + "/20 certificates valid and replayable"};
}

// ---------------------------------------------------------------------------
// 8. Checker against brute-force realizer sets.

inline Result criterion8() {
  oracle::Gen g(kSeed + 8);
  std::size_t mismatches = 0, checks = 0, enum_bad = 0;
  for (int i = 0; i < 50; ++i) {
    const auto f = g.evaluation(3);
    FormulaGen fg{g, f.domain()};
    const Formula a = fg.positive(3, {}, true);
    const auto want = oracle::realizer_set(a, f, {});
    realize::Checker ck(f, {});
    for (std::uint64_t e = 0; e <= 256; ++e) {
      ++checks;
      const auto v = ck.realizes(Nat(e), a);
      const bool member = want.contains(Nat(e));
      if (member ? !v.is_realizes() : !v.is_refuted()) ++mismatches;
    }
    auto [set, complete] = ck.enumerate(a);
    if (!complete || std::set<Nat>(set.begin(), set.end()) != want) ++enum_bad;
  }
  return {mismatches == 0 && enum_bad == 0, std::to_string(checks) + " checks, " + std::to_string(mismatches) +
                                                " mismatches; enumeration mismatches " + std::to_string(enum_bad) +
                                                "/50"};
}

// ---------------------------------------------------------------------------
// 9. Logic layer.

inline std::set<std::string> term_vars(const Term& t) {
  if (t.is_var()) return {t.name()};
  return {};
}

inline std::vector<std::pair<std::string, logic::Derivation>> fixtures() {
  return {{"T", harness::top_derivation()},
          {"identity", harness::identity_derivation()},
          {"identity via T", harness::identity_derivation_via_top()},
          {"separating formula", harness::derivation5()}};
}

// Single-step mutations that can never leave a derivation valid.
inline std::vector<logic::Derivation> mutations(const logic::Derivation& d) {
  std::vector<logic::Derivation> out;
  for (std::size_t k = 0; k < d.steps.size(); ++k) {
    {
      auto m = d;
      m.steps[k].formula = Formula::conj(m.steps[k].formula, Formula::top());
      out.push_back(std::move(m));
    }
    if (const auto* mp = std::get_if<logic::ByMP>(&d.steps[k].by)) {
      auto m = d;
      m.steps[k].by = logic::ByMP{mp->implication, mp->antecedent};
      out.push_back(m);
      m.steps[k].by = logic::ByMP{k, mp->implication};
      out.push_back(std::move(m));
    } else if (const auto* g = std::get_if<logic::ByGen>(&d.steps[k].by)) {
      auto m = d;
      m.steps[k].by = logic::ByGen{g->premise, g->var + "_m"};
      out.push_back(m);
      m.steps[k].by = logic::ByGen{k, g->var};
      out.push_back(std::move(m));
    } else {
      const auto& ax = std::get<logic::ByAxiom>(d.steps[k].by);
      auto m = d;
      auto inst = ax.inst;
      inst.id = inst.id == 1 ? 10 : 1;
      m.steps[k].by = logic::ByAxiom{inst};
      out.push_back(std::move(m));
    }
  }
  return out;
}

inline Result criterion9() {
  Result res;
  std::ostringstream os;
  oracle::Gen g(kSeed + 9);
  std::size_t fv_bad = 0, idem_bad = 0, capture_bad = 0;
  const std::vector<std::string> pool{"x", "y", "z", "b0", "b1", "b2"};
  for (int i = 0; i < 500; ++i) {
    FormulaGen fg{g, {0, 1, 2}};
    const Formula a = fg.any(4, pool);
    auto fv = logic::free_vars(a);
    const std::string x = fv.empty() ? "x" : *std::next(fv.begin(), static_cast<std::ptrdiff_t>(g.below(fv.size())));
    // Bias towards terms that would be captured.
    const Term t = g.coin(70) ? Term::var(pool[g.below(pool.size())]) : Term::constant(g.below(3));
    const Formula b = logic::substitute(a, t, x);
    std::set<std::string> want = fv;
    if (want.erase(x)) {
      for (const auto& v : term_vars(t)) want.insert(v);
    }
    if (logic::free_vars(b) != want) ++fv_bad;
    const Formula c = logic::alpha_canonical(a);
    if (!(logic::alpha_canonical(c) == c) || !logic::alpha_equal(a, c)) ++idem_bad;
    // No capture: substituting back a fresh variable recovers the original.
    const Formula back = logic::substitute(logic::substitute(a, Term::var("fresh_q"), x), Term::var(x), "fresh_q");
    if (!logic::alpha_equal(back, a)) ++capture_bad;
  }
  os << "free-variable law violations " << fv_bad << "/500, canonicalization " << idem_bad
     << ", capture " << capture_bad;
  res.pass = fv_bad == 0 && idem_bad == 0 && capture_bad == 0;
  std::size_t accepted = 0, rejected = 0, total_mut = 0;
  auto all = fixtures();
  for (const auto& [name, d] : all) {
    if (logic::check_derivation(d)) ++accepted;
    for (const auto& m : mutations(d)) {
      ++total_mut;
      if (!logic::check_derivation(m)) ++rejected;
    }
  }
  os << "; fixtures accepted " << accepted << "/" << all.size() << ", mutations rejected " << rejected << "/"
     << total_mut;
  res.pass = res.pass && accepted == all.size() && rejected == total_mut;
  res.summary = os.str();
  return res;
}

}  // namespace criteria
