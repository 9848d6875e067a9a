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

// The separating formula
//
//   forall x (Q(x) -> forall y (R(x,y) -> exists z P(x,y,z)))
//     -> forall y forall x (Q(x) /\ R(x,y) -> exists z P(x,y,z))
//
// together with the executable pieces of the argument around it: a Hilbert
// derivation, the evaluation that reads P and R off the program semantics,
// a realizer of the left side, the overuniversal function recovered from a
// realizer of the whole formula, and a diagonal refuter for TOTAL.

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "vreal/extract/extract.hpp"
#include "vreal/kernel/combinators.hpp"
#include "vreal/kernel/eval.hpp"
#include "vreal/logic/derivation.hpp"
#include "vreal/realize/checker.hpp"
#include "vreal/realize/evaluation.hpp"

namespace vreal::harness {

using kernel::Model;
using kernel::Nat;
using kernel::Program;
using logic::AxiomInstance;
using logic::DerivationBuilder;
using logic::Formula;
using logic::Term;

namespace detail {

inline Formula atom(const std::string& p, std::vector<std::string> vs) {
  std::vector<Term> ts;
  for (auto& v : vs) ts.push_back(Term::var(std::move(v)));
  return Formula::atom(p, std::move(ts));
}

inline Formula E() { return Formula::exists("z", atom("P", {"x", "y", "z"})); }
inline Formula H() { return Formula::imp(atom("R", {"x", "y"}), E()); }
inline Formula G() { return Formula::forall("y", H()); }
inline Formula K() { return Formula::conj(atom("Q", {"x"}), atom("R", {"x", "y"})); }

inline AxiomInstance ax(int id, std::optional<Formula> a = {}, std::optional<Formula> b = {},
                        std::optional<Formula> c = {}) {
  return AxiomInstance{id, std::move(a), std::move(b), std::move(c), "", std::nullopt};
}

inline AxiomInstance ax_q(int id, Formula a, std::optional<Formula> b, std::string var,
                          std::optional<Term> t = {}) {
  return AxiomInstance{id, std::move(a), std::move(b), std::nullopt, std::move(var), std::move(t)};
}

// Hilbert-style combinators over a builder.
struct Prover {
  DerivationBuilder b;

  // By value: pushing a step may reallocate the step vector.
  Formula f(std::size_t i) const { return b.formula(i); }

  // |- phi  gives  |- w -> phi
  std::size_t weaken(std::size_t i, const Formula& w) { return b.mp(i, b.axiom(ax(2, f(i), w))); }

  // |- w -> a  and  |- w -> (a -> c)  give  |- w -> c
  std::size_t mp_under(std::size_t wa, std::size_t wac) {
    const Formula w = f(wa).lhs();
    const Formula a = f(wa).rhs();
    const Formula c = f(wac).rhs().rhs();
    const std::size_t s = b.axiom(ax(3, w, a, c));
    return b.mp(wa, b.mp(wac, s));
  }

  // |- w -> (v -> a)  and  |- w -> (v -> (a -> c))  give  |- w -> (v -> c)
  std::size_t mp_under2(std::size_t wva, std::size_t wvac) {
    const Formula w = f(wva).lhs();
    const Formula v = f(wva).rhs().lhs();
    const Formula a = f(wva).rhs().rhs();
    const Formula c = f(wvac).rhs().rhs().rhs();
    // |- w -> ((v -> (a -> c)) -> ((v -> a) -> (v -> c)))
    const std::size_t s = weaken(b.axiom(ax(3, v, a, c)), w);
    return mp_under(wva, mp_under(wvac, s));
  }

  // |- phi  gives  |- w -> (v -> phi)
  std::size_t weaken2(std::size_t i, const Formula& w, const Formula& v) { return weaken(weaken(i, v), w); }
};

}  // namespace detail

inline Formula formula5_left() {
  return Formula::forall("x", Formula::imp(detail::atom("Q", {"x"}), detail::G()));
}

inline Formula formula5_right() {
  return Formula::forall("y", Formula::forall("x", Formula::imp(detail::K(), detail::E())));
}

inline Formula formula5() { return Formula::imp(formula5_left(), formula5_right()); }

// A derivation of formula5(). Writing D(X) for L -> (K -> X), it derives
// D(Q(x)), D(L) and D(L -> (Q(x) -> G)), then D(G), D(H), D(R(x,y)) and D(E),
// generalizes over x and y and moves the quantifiers past L with A13.
inline logic::Derivation derivation5() {
  using namespace detail;
  Prover pr;
  auto& b = pr.b;
  const Formula L = formula5_left();
  const Formula Kf = K();
  const Formula Qx = atom("Q", {"x"});
  const Formula Rxy = atom("R", {"x", "y"});

  const std::size_t dq = pr.weaken(b.axiom(ax(5, Qx, Rxy)), L);
  const std::size_t dr = pr.weaken(b.axiom(ax(6, Qx, Rxy)), L);
  const std::size_t dl = b.axiom(ax(2, L, Kf));
  const std::size_t inst_x = b.axiom(ax_q(11, Formula::imp(Qx, G()), std::nullopt, "x", Term::var("x")));
  const std::size_t df = pr.mp_under2(dl, pr.weaken2(inst_x, L, Kf));
  const std::size_t dg = pr.mp_under2(dq, df);
  const std::size_t inst_y = b.axiom(ax_q(11, H(), std::nullopt, "y", Term::var("y")));
  const std::size_t dh = pr.mp_under2(dg, pr.weaken2(inst_y, L, Kf));
  const std::size_t de = pr.mp_under2(dr, dh);

  const Formula KE = Formula::imp(Kf, E());
  const std::size_t gx = b.gen(de, "x");
  const std::size_t lx = b.mp(gx, b.axiom(ax_q(13, KE, L, "x")));
  const std::size_t gy = b.gen(lx, "y");
  b.mp(gy, b.axiom(ax_q(13, Formula::forall("x", KE), L, "y")));
  return b.derivation();
}

// |- forall y (P(y) -> P(y)) by the usual five-step identity proof.
inline logic::Derivation identity_derivation() {
  using namespace detail;
  DerivationBuilder b;
  const Formula p = atom("P", {"y"});
  const Formula pp = Formula::imp(p, p);
  const std::size_t s1 = b.axiom(ax(2, p, pp));
  const std::size_t s2 = b.axiom(ax(3, p, pp, p));
  const std::size_t s3 = b.mp(s1, s2);
  const std::size_t s4 = b.axiom(ax(2, p, p));
  b.gen(b.mp(s4, s3), "y");
  return b.derivation();
}

// The same sentence through T: P(y) -> (T -> P(y)) and P(y) -> T.
inline logic::Derivation identity_derivation_via_top() {
  using namespace detail;
  DerivationBuilder b;
  const Formula p = atom("P", {"y"});
  const Formula t = Formula::top();
  const std::size_t s1 = b.axiom(ax(2, p, t));
  const std::size_t s2 = b.axiom(ax(3, p, t, p));
  const std::size_t s3 = b.mp(s1, s2);
  const std::size_t s4 = b.axiom(ax(2, t, p));
  const std::size_t s5 = b.mp(b.axiom(ax(1)), s4);
  b.gen(b.mp(s5, s3), "y");
  return b.derivation();
}

inline logic::Derivation top_derivation() {
  DerivationBuilder b;
  b.axiom(detail::ax(1));
  return b.derivation();
}

// ---------------------------------------------------------------------------
// The evaluation reading P and R off the programs themselves, on the slice
// domain [0, slice): Q(a) holds of everything; R(a,b) when phi_a(b) is
// defined; P(a,b,c) when phi_a(b) = c. A run that is still going at the
// slice fuel, or that ends outside the slice, is left undetermined.

inline std::uint64_t slice_fuel(std::uint64_t slice) { return 64 * slice; }

inline realize::Evaluation theorem_evaluation(std::uint64_t slice) {
  if (slice == 0) throw std::invalid_argument("slice must be >= 1");
  std::vector<std::uint64_t> dom(slice);
  for (std::uint64_t i = 0; i < slice; ++i) dom[i] = i;
  realize::Evaluation f(dom);
  using realize::RealizerSet;
  for (std::uint64_t a = 0; a < slice; ++a) {
    f.set("Q", {a}, RealizerSet::all());
    for (std::uint64_t b = 0; b < slice; ++b) {
      auto r = kernel::eval(Model::UREC, Nat(a), {Nat(b)}, slice_fuel(slice));
      const bool inside = r.converged() && f.in_domain(r.value);
      if (r.is_diverged()) continue;  // R and P empty
      if (!inside) {
        f.set("R", {a, b}, RealizerSet::undetermined());
        for (std::uint64_t c = 0; c < slice; ++c) f.set("P", {a, b, c}, RealizerSet::undetermined());
        continue;
      }
      f.set("R", {a, b}, RealizerSet::all());
      f.set("P", {a, b, *r.value.small()}, RealizerSet::all());
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Left side: k(a) is the code of (y, w) |-> pair(phi_a(y), 0), and
// phi_e(x, w) = k(x).

inline Program left_k_program() {
  namespace b = kernel::build;
  return b::code_pair(b::code_comp(Program::proj(1), {b::quoted(Program::proj(1))}),
                      b::quoted(Program::lit(Nat(0))));
}

inline Nat left_realizer() { return Program::comp(left_k_program(), {Program::proj(1)}).code(); }

// u(x, y) = fst phi_{e'}(y, x, 0), where 0 = pair(0, 0) realizes Q(x) /\ R(x,y).
inline Nat derive_overuniversal(const Nat& e_prime) {
  const Program body = kernel::decode(e_prime, Model::UREC);
  return Program::fst(Program::comp(body, {Program::proj(2), Program::proj(1), Program::lit(Nat(0))})).code();
}

struct Sample {
  Nat a, b, expected, got;
  kernel::Status status;
};

struct AgreementReport {
  std::size_t agreed = 0;
  std::size_t sampled = 0;
  std::vector<Sample> disagreements;
  bool all_agree() const { return agreed == sampled; }
};

struct AgreementConfig {
  std::size_t samples = 100;
  std::uint64_t code_bound = 1024;  // codes and arguments drawn below this
  std::uint64_t direct_fuel = 10'000;
  std::uint64_t fuel = 10'000'000;
  std::uint64_t seed = 1;
  std::size_t max_draws = 1'000'000;
};

// Draws convergent applications phi_a(b) and compares u(a, b) with them.
inline AgreementReport check_agreement(const Nat& u, const AgreementConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<std::uint64_t> draw(0, cfg.code_bound - 1);
  AgreementReport rep;
  for (std::size_t tries = 0; rep.sampled < cfg.samples && tries < cfg.max_draws; ++tries) {
    const Nat a(draw(rng)), b(draw(rng));
    auto direct = kernel::eval(Model::UREC, a, {b}, cfg.direct_fuel);
    if (!direct.converged()) continue;
    ++rep.sampled;
    auto via = kernel::eval(Model::UREC, u, {a, b}, cfg.fuel);
    if (via.yields(direct.value)) {
      ++rep.agreed;
    } else {
      rep.disagreements.push_back({a, b, direct.value, via.value, via.status});
    }
  }
  return rep;
}

struct PipelineResult {
  Nat realizer5;     // closed realizer of formula5()
  Nat left;          // left_realizer()
  Nat e_prime;       // realizer5 applied to left
  Nat u;             // derive_overuniversal(e_prime)
  std::size_t derivation_steps = 0;
  AgreementReport agreement;
};

// Proof to overuniversal function: extract, apply to the left realizer,
// read u off the result, then sample it. Throws CapabilityError in TOTAL.
inline PipelineResult theorem_pipeline(const AgreementConfig& cfg, Model model = Model::UREC) {
  PipelineResult r;
  const logic::Derivation d = derivation5();
  r.derivation_steps = d.steps.size();
  r.realizer5 = extract::closed_realizer(d, model);
  r.left = left_realizer();
  auto ep = kernel::eval(model, r.realizer5, {r.left}, cfg.fuel);
  if (!ep.converged()) throw std::runtime_error("realizer of the separating formula did not answer: " + kernel::to_string(ep));
  r.e_prime = ep.value;
  r.u = derive_overuniversal(r.e_prime);
  r.agreement = check_agreement(r.u, cfg);
  return r;
}

// ---------------------------------------------------------------------------
// Diagonalization in TOTAL: d(x) = cand(x, x) + 1 differs from cand at
// (code d, code d).

struct DiagonalCertificate {
  Nat candidate;
  Nat diagonal_code;
  Nat point_a, point_b;
  Nat lhs, rhs;
  std::uint64_t fuel = 0;
};

struct CandidateNotTotal {
  Nat candidate;
  std::string detail;
};

using DiagonalResult = std::variant<DiagonalCertificate, CandidateNotTotal>;

inline DiagonalResult diagonalize(const Nat& candidate) {
  const Program c = kernel::decode(candidate, Model::TOTAL);
  const Program d = Program::succ(Program::comp(c, {Program::proj(1), Program::proj(1)}));
  const Nat id = d.code();
  const std::uint64_t fuel = 10 * d.size();
  auto lhs = kernel::eval(Model::TOTAL, candidate, {id, id}, fuel);
  auto rhs = kernel::eval(Model::TOTAL, id, {id}, fuel);
  if (!lhs.converged() || !rhs.converged()) {
    return CandidateNotTotal{candidate, "lhs " + kernel::to_string(lhs) + ", rhs " + kernel::to_string(rhs)};
  }
  return DiagonalCertificate{candidate, id, id, id, lhs.value, rhs.value, fuel};
}

// Re-runs both sides; true when they converge to the recorded, distinct values.
inline bool replay(const DiagonalCertificate& c) {
  if (c.lhs == c.rhs) return false;
  auto lhs = kernel::eval(Model::TOTAL, c.candidate, {c.point_a, c.point_b}, c.fuel);
  auto rhs = kernel::eval(Model::TOTAL, c.diagonal_code, {c.point_a}, c.fuel);
  return lhs.yields(c.lhs) && rhs.yields(c.rhs);
}

// ---------------------------------------------------------------------------
// JSON.

inline nlohmann::json certificate_to_json(const DiagonalCertificate& c) {
  using realize::nat_to_json;
  return {{"candidate", nat_to_json(c.candidate)},
          {"diagonal_code", nat_to_json(c.diagonal_code)},
          {"point", {nat_to_json(c.point_a), nat_to_json(c.point_b)}},
          {"lhs", nat_to_json(c.lhs)},
          {"rhs", nat_to_json(c.rhs)},
          {"fuel", c.fuel},
          {"replays", replay(c)}};
}

inline nlohmann::json agreement_to_json(const AgreementReport& r) {
  using realize::nat_to_json;
  nlohmann::json bad = nlohmann::json::array();
  for (const auto& s : r.disagreements) {
    bad.push_back({{"a", nat_to_json(s.a)},
                   {"b", nat_to_json(s.b)},
                   {"expected", nat_to_json(s.expected)},
                   {"got", s.status == kernel::Status::Converged ? nat_to_json(s.got) : nlohmann::json(nullptr)}});
  }
  return {{"agreed", r.agreed}, {"sampled", r.sampled}, {"disagreements", bad}};
}

inline nlohmann::json pipeline_to_json(const PipelineResult& r) {
  using realize::nat_to_json;
  return {{"formula", logic::print_formula(formula5())},
          {"derivation_steps", r.derivation_steps},
          {"realizer", nat_to_json(r.realizer5)},
          {"left_realizer", nat_to_json(r.left)},
          {"e_prime", nat_to_json(r.e_prime)},
          {"u", nat_to_json(r.u)},
          {"agreement", agreement_to_json(r.agreement)}};
}

}  // namespace vreal::harness
