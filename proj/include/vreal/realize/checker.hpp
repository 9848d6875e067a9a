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

// Bounded three-valued checking of "e realizes A on f".
//
// Refuted is only reported with a definite witness: an antecedent realizer
// that provably realizes, a call that provably faults or returns a value
// that is provably wrong. Running out of fuel, or a candidate antecedent
// realizer the checker cannot settle, degrades the verdict to Unknown.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "vreal/kernel/eval.hpp"
#include "vreal/logic/formula.hpp"
#include "vreal/logic/text.hpp"
#include "vreal/realize/evaluation.hpp"

namespace vreal::realize {

using kernel::Model;
using logic::Formula;
using logic::Kind;

struct CheckConfig {
  std::uint64_t fuel = 100000;  // per program call
  std::uint64_t bound = 64;     // antecedent candidates are 0..bound
  Model model = Model::UREC;
};

enum class Reason : std::uint8_t { None, OutOfFuel, EnumerationBound, UndeterminedAtom };

inline std::string reason_name(Reason r) {
  switch (r) {
    case Reason::OutOfFuel:
      return "OutOfFuel";
    case Reason::EnumerationBound:
      return "EnumerationBound";
    case Reason::UndeterminedAtom:
      return "UndeterminedAtom";
    case Reason::None:
      break;
  }
  return "None";
}

// One step of a refutation path, read from the root formula down.
struct TraceStep {
  enum class Op : std::uint8_t {
    Bottom,        // terminal: the formula is falsum
    NotMember,     // terminal: atom set provably excludes the realizer
    Conj,          // continue with proj1/proj2 (side 0/1)
    DisjTag,       // terminal: proj1 not in {0, 1}
    Disj,          // continue with proj2 on branch `side`
    ExistsDomain,  // terminal: proj1 outside the domain
    Exists,        // continue with proj2 at witness proj1
    Call,          // call phi_e(args, s) with s a definite antecedent realizer
    PrimeCall,     // call phi_e(args) for the pointwise universal relation
    Fault,         // terminal: the preceding call diverged
  };
  Op op;
  std::uint64_t side = 0;
  std::vector<std::uint64_t> args;
  Nat s;
};

struct Verdict {
  enum class Kind : std::uint8_t { Realizes, Refuted, Unknown };
  Kind kind = Kind::Realizes;
  Reason reason = Reason::None;
  std::vector<TraceStep> trace;  // Refuted only

  static Verdict realizes() { return {}; }
  static Verdict unknown(Reason r) { return {Kind::Unknown, r, {}}; }
  static Verdict refuted(std::vector<TraceStep> t) { return {Kind::Refuted, Reason::None, std::move(t)}; }

  bool is_realizes() const { return kind == Kind::Realizes; }
  bool is_refuted() const { return kind == Kind::Refuted; }
  bool is_unknown() const { return kind == Kind::Unknown; }
};

inline std::string verdict_name(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::Realizes:
      return "Realizes";
    case Verdict::Kind::Refuted:
      return "Refuted";
    case Verdict::Kind::Unknown:
      return "Unknown(" + reason_name(v.reason) + ")";
  }
  return "?";
}

class CheckError : public std::invalid_argument {
 public:
  explicit CheckError(const std::string& what) : std::invalid_argument(what) {}
};

// Antecedent candidates: each with whether it definitely realizes.
struct Candidates {
  struct Entry {
    Nat s;
    bool definite;
    Reason reason;
  };
  std::vector<Entry> entries;
  bool complete = false;
};

class Checker {
 public:
  Checker(const Evaluation& f, CheckConfig cfg) : f_(f), cfg_(cfg) {
    if (cfg_.fuel == 0 || cfg_.bound == 0) throw CheckError("fuel and bound must be >= 1");
  }

  const Evaluation& evaluation() const { return f_; }
  const CheckConfig& config() const { return cfg_; }

  Verdict realizes(const Nat& e, const Formula& a) {
    require_sentence(a);
    return check(e, a);
  }

  // e r' forall y. body: for every a in M, phi_e(a) converges and realizes
  // body[a/y].
  Verdict realizes_prime(const Nat& e, const Formula& body, const std::string& y) {
    require_sentence(Formula::forall(y, body));
    const kernel::Program prog = kernel::decode(e, cfg_.model);
    Verdict out;
    for (auto a : f_.domain()) {
      const Nat arg(a);
      auto r = kernel::eval_program(cfg_.model, prog, std::span<const Nat>(&arg, 1), cfg_.fuel);
      if (r.status == kernel::Status::Diverged) {
        return Verdict::refuted({{TraceStep::Op::PrimeCall, 0, {a}, {}}, {TraceStep::Op::Fault}});
      }
      if (r.status == kernel::Status::OutOfFuel) {
        merge_unknown(out, Reason::OutOfFuel);
        continue;
      }
      Verdict sub = check(r.value, logic::substitute(body, logic::Term::constant(a), y));
      if (sub.is_refuted()) {
        sub.trace.insert(sub.trace.begin(), {TraceStep::Op::PrimeCall, 0, {a}, {}});
        return sub;
      }
      if (sub.is_unknown()) merge_unknown(out, sub.reason);
    }
    return out;
  }

  // Exhaustive set when `complete`; otherwise the definite realizers among
  // 0..bound.
  std::pair<std::vector<Nat>, bool> enumerate(const Formula& a) {
    require_sentence(a);
    if (auto exact = exhaustive(a)) {
      std::sort(exact->begin(), exact->end());
      return {*exact, true};
    }
    std::vector<Nat> out;
    for (std::uint64_t s = 0; s <= cfg_.bound; ++s) {
      if (check(Nat(s), a).is_realizes()) out.emplace_back(s);
    }
    return {out, false};
  }

  const Candidates& candidates(const Formula& a) {
    const std::string key = logic::print_formula(a);
    if (auto it = cand_memo_.find(key); it != cand_memo_.end()) return it->second;
    Candidates c;
    if (auto exact = exhaustive(a)) {
      c.complete = true;
      for (auto& s : *exact) c.entries.push_back({std::move(s), true, Reason::None});
    } else {
      for (std::uint64_t s = 0; s <= cfg_.bound; ++s) {
        Verdict v = check(Nat(s), a);
        if (!v.is_refuted()) c.entries.push_back({Nat(s), v.is_realizes(), v.reason});
      }
    }
    return cand_memo_.emplace(key, std::move(c)).first->second;
  }

 private:
  struct MemoKey {
    Nat e;
    std::string formula;
    bool operator==(const MemoKey&) const = default;
  };
  struct MemoHash {
    std::size_t operator()(const MemoKey& k) const {
      return k.e.hash() * 31 + std::hash<std::string>{}(k.formula);
    }
  };

  static constexpr std::size_t kExhaustiveLimit = 4096;

  static void merge_unknown(Verdict& acc, Reason r) {
    if (acc.is_realizes()) acc = Verdict::unknown(r);
  }

  void require_sentence(const Formula& a) const {
    if (auto fv = logic::free_vars(a); !fv.empty()) throw CheckError("formula has free variable '" + *fv.begin() + "'");
    for (auto k : logic::constants(a)) {
      if (!f_.in_domain(k)) throw CheckError("constant " + std::to_string(k) + " outside the domain");
    }
  }

  static std::vector<std::uint64_t> atom_args(const Formula& a) {
    std::vector<std::uint64_t> args;
    for (const auto& t : a.args()) args.push_back(t.value());
    return args;
  }

  // The exact realizer set when it is finite and small; else nullopt.
  std::optional<std::vector<Nat>> exhaustive(const Formula& a) {
    switch (a.kind()) {
      case Kind::Bottom:
        return std::vector<Nat>{};
      case Kind::Atom: {
        const RealizerSet& s = f_.lookup(a.name(), atom_args(a));
        if (s.kind() == RealizerSet::Kind::Finite) return s.members();
        if (s.kind() == RealizerSet::Kind::Empty) return std::vector<Nat>{};
        return std::nullopt;
      }
      case Kind::And: {
        auto l = exhaustive(a.lhs());
        if (!l) return std::nullopt;
        auto r = exhaustive(a.rhs());
        if (!r || l->size() * r->size() > kExhaustiveLimit) return std::nullopt;
        std::vector<Nat> out;
        for (const auto& x : *l)
          for (const auto& y : *r) out.push_back(kernel::pair(x, y));
        return out;
      }
      case Kind::Or: {
        auto l = exhaustive(a.lhs());
        if (!l) return std::nullopt;
        auto r = exhaustive(a.rhs());
        if (!r) return std::nullopt;
        std::vector<Nat> out;
        for (const auto& x : *l) out.push_back(kernel::pair(Nat(0), x));
        for (const auto& y : *r) out.push_back(kernel::pair(Nat(1), y));
        return out;
      }
      case Kind::Exists: {
        std::vector<Nat> out;
        for (auto d : f_.domain()) {
          auto r = exhaustive(logic::substitute(a.body(), logic::Term::constant(d), a.name()));
          if (!r) return std::nullopt;
          for (const auto& y : *r) out.push_back(kernel::pair(Nat(d), y));
          if (out.size() > kExhaustiveLimit) return std::nullopt;
        }
        return out;
      }
      default:
        return std::nullopt;
    }
  }

  static Verdict prefixed(Verdict v, TraceStep step) {
    if (v.is_refuted()) v.trace.insert(v.trace.begin(), std::move(step));
    return v;
  }

  Verdict check(const Nat& e, const Formula& a) {
    switch (a.kind()) {
      case Kind::Bottom:
        return Verdict::refuted({{TraceStep::Op::Bottom}});
      case Kind::Top:
        return Verdict::realizes();
      case Kind::Atom: {
        auto in = f_.lookup(a.name(), atom_args(a)).contains(e);
        if (!in) return Verdict::unknown(Reason::UndeterminedAtom);
        return *in ? Verdict::realizes() : Verdict::refuted({{TraceStep::Op::NotMember}});
      }
      case Kind::And: {
        Verdict l = check(e.proj1(), a.lhs());
        if (l.is_refuted()) return prefixed(std::move(l), {TraceStep::Op::Conj, 0});
        Verdict r = check(e.proj2(), a.rhs());
        if (r.is_refuted()) return prefixed(std::move(r), {TraceStep::Op::Conj, 1});
        if (l.is_unknown()) return l;
        return r;
      }
      case Kind::Or: {
        const Nat tag = e.proj1();
        if (tag == Nat(0)) return prefixed(check(e.proj2(), a.lhs()), {TraceStep::Op::Disj, 0});
        if (tag == Nat(1)) return prefixed(check(e.proj2(), a.rhs()), {TraceStep::Op::Disj, 1});
        return Verdict::refuted({{TraceStep::Op::DisjTag}});
      }
      case Kind::Exists: {
        const Nat w = e.proj1();
        if (!f_.in_domain(w)) return Verdict::refuted({{TraceStep::Op::ExistsDomain}});
        const auto d = *w.small();
        return prefixed(check(e.proj2(), logic::substitute(a.body(), logic::Term::constant(d), a.name())),
                        {TraceStep::Op::Exists, d});
      }
      case Kind::Imp:
      case Kind::Forall:
        break;
    }
    MemoKey key{e, logic::print_formula(a)};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Verdict v = check_block(e, a);
    memo_.emplace(std::move(key), v);
    return v;
  }

  Verdict check_block(const Nat& e, const Formula& a) {
    const logic::BlockView view = *logic::canonicalize_blocks(a);
    const std::size_t n = view.vars.size();
    const auto& dom = f_.domain();
    const kernel::Program prog = kernel::decode(e, cfg_.model);
    Verdict out;
    std::vector<std::size_t> idx(n, 0);
    std::vector<std::uint64_t> point(n);
    std::vector<Nat> args(n + 1);
    while (true) {
      for (std::size_t i = 0; i < n; ++i) {
        point[i] = dom[idx[i]];
        args[i] = Nat(point[i]);
      }
      const Formula ant = logic::instantiate(view.antecedent, view.vars, point);
      const Formula cons = logic::instantiate(view.consequent, view.vars, point);
      const Candidates& cands = candidates(ant);
      if (!cands.complete) merge_unknown(out, Reason::EnumerationBound);
      for (const auto& c : cands.entries) {
        args[n] = c.s;
        auto r = kernel::eval_program(cfg_.model, prog, args, cfg_.fuel);
        if (r.status == kernel::Status::OutOfFuel) {
          merge_unknown(out, Reason::OutOfFuel);
          continue;
        }
        if (r.status == kernel::Status::Diverged) {
          if (c.definite) return Verdict::refuted({{TraceStep::Op::Call, 0, point, c.s}, {TraceStep::Op::Fault}});
          merge_unknown(out, c.reason);
          continue;
        }
        Verdict sub = check(r.value, cons);
        if (sub.is_refuted()) {
          if (c.definite) return prefixed(std::move(sub), {TraceStep::Op::Call, 0, point, c.s});
          merge_unknown(out, c.reason);
        } else if (sub.is_unknown()) {
          merge_unknown(out, sub.reason);
        }
      }
      std::size_t i = n;
      while (i > 0 && ++idx[i - 1] == dom.size()) idx[--i] = 0;
      if (i == 0) break;
    }
    return out;
  }

  const Evaluation& f_;
  CheckConfig cfg_;
  std::unordered_map<MemoKey, Verdict, MemoHash> memo_;
  std::unordered_map<std::string, Candidates> cand_memo_;
};

inline Verdict realizes(const Nat& e, const Formula& a, const Evaluation& f, const CheckConfig& cfg = {}) {
  return Checker(f, cfg).realizes(e, a);
}

inline Verdict realizes_prime(const Nat& e, const Formula& body, const std::string& y, const Evaluation& f,
                              const CheckConfig& cfg = {}) {
  return Checker(f, cfg).realizes_prime(e, body, y);
}

inline std::pair<std::vector<Nat>, bool> enumerate_realizers(const Formula& a, const Evaluation& f,
                                                             const CheckConfig& cfg = {}) {
  return Checker(f, cfg).enumerate(a);
}

// ---------------------------------------------------------------------------
// Replay: re-derives a refutation from its trace alone.

namespace detail {

inline bool replay_from(Checker& ck, Nat e, Formula a, const std::vector<TraceStep>& trace, std::size_t i) {
  const Evaluation& f = ck.evaluation();
  const CheckConfig& cfg = ck.config();
  for (; i < trace.size(); ++i) {
    const TraceStep& t = trace[i];
    switch (t.op) {
      case TraceStep::Op::Bottom:
        return a.kind() == Kind::Bottom && i + 1 == trace.size();
      case TraceStep::Op::NotMember: {
        if (a.kind() != Kind::Atom || i + 1 != trace.size()) return false;
        std::vector<std::uint64_t> args;
        for (const auto& x : a.args()) args.push_back(x.value());
        auto in = f.lookup(a.name(), args).contains(e);
        return in.has_value() && !*in;
      }
      case TraceStep::Op::Conj:
        if (a.kind() != Kind::And || t.side > 1) return false;
        e = t.side == 0 ? e.proj1() : e.proj2();
        a = t.side == 0 ? a.lhs() : a.rhs();
        break;
      case TraceStep::Op::DisjTag:
        return a.kind() == Kind::Or && i + 1 == trace.size() && e.proj1() != Nat(0) && e.proj1() != Nat(1);
      case TraceStep::Op::Disj:
        if (a.kind() != Kind::Or || t.side > 1 || e.proj1() != Nat(t.side)) return false;
        e = e.proj2();
        a = t.side == 0 ? a.lhs() : a.rhs();
        break;
      case TraceStep::Op::ExistsDomain:
        return a.kind() == Kind::Exists && i + 1 == trace.size() && !f.in_domain(e.proj1());
      case TraceStep::Op::Exists:
        if (a.kind() != Kind::Exists || e.proj1() != Nat(t.side) || !f.in_domain(t.side)) return false;
        a = logic::substitute(a.body(), logic::Term::constant(t.side), a.name());
        e = e.proj2();
        break;
      case TraceStep::Op::Call: {
        auto view = logic::canonicalize_blocks(a);
        if (!view || view->vars.size() != t.args.size()) return false;
        for (auto x : t.args) {
          if (!f.in_domain(x)) return false;
        }
        const Formula ant = logic::instantiate(view->antecedent, view->vars, t.args);
        if (!ck.realizes(t.s, ant).is_realizes()) return false;
        std::vector<Nat> args(t.args.begin(), t.args.end());
        args.push_back(t.s);
        auto r = kernel::eval(cfg.model, e, args, cfg.fuel);
        const bool fault_next = i + 1 < trace.size() && trace[i + 1].op == TraceStep::Op::Fault;
        if (fault_next) return r.status == kernel::Status::Diverged && i + 2 == trace.size();
        if (!r.converged()) return false;
        e = r.value;
        a = logic::instantiate(view->consequent, view->vars, t.args);
        break;
      }
      case TraceStep::Op::PrimeCall:
      case TraceStep::Op::Fault:
        return false;
    }
  }
  return false;
}

}  // namespace detail

// True when `trace` re-derives a refutation of "e realizes a".
inline bool replay(const Nat& e, const Formula& a, const Evaluation& f, const CheckConfig& cfg,
                   const std::vector<TraceStep>& trace) {
  Checker ck(f, cfg);
  return detail::replay_from(ck, e, a, trace, 0);
}

// Same for the pointwise relation e r' forall y. body.
inline bool replay_prime(const Nat& e, const Formula& body, const std::string& y, const Evaluation& f,
                         const CheckConfig& cfg, const std::vector<TraceStep>& trace) {
  if (trace.empty() || trace[0].op != TraceStep::Op::PrimeCall || trace[0].args.size() != 1) return false;
  const auto a = trace[0].args[0];
  if (!f.in_domain(a)) return false;
  auto r = kernel::eval(cfg.model, e, {Nat(a)}, cfg.fuel);
  if (trace.size() == 2 && trace[1].op == TraceStep::Op::Fault) return r.status == kernel::Status::Diverged;
  if (!r.converged()) return false;
  Checker ck(f, cfg);
  return detail::replay_from(ck, r.value, logic::substitute(body, logic::Term::constant(a), y), trace, 1);
}

// ---------------------------------------------------------------------------
// Weak realizability, bounded: per evaluation, the first candidate in
// 0..candidate_bound that realizes, else the best non-refuted one.

struct WeakEntry {
  std::optional<Nat> realizer;
  Verdict verdict = Verdict::refuted({});
};

inline std::vector<WeakEntry> check_weak(const Formula& a, const std::vector<Evaluation>& fs, const CheckConfig& cfg,
                                         std::uint64_t candidate_bound) {
  std::vector<WeakEntry> out;
  for (const auto& f : fs) {
    Checker ck(f, cfg);
    WeakEntry best;
    for (std::uint64_t e = 0; e <= candidate_bound; ++e) {
      Verdict v = ck.realizes(Nat(e), a);
      if (v.is_realizes()) {
        best = {Nat(e), v};
        break;
      }
      if (v.is_unknown() && !best.realizer) best = {Nat(e), v};
    }
    out.push_back(std::move(best));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON.

inline std::string trace_op_name(TraceStep::Op op) {
  switch (op) {
    case TraceStep::Op::Bottom:
      return "bottom";
    case TraceStep::Op::NotMember:
      return "not-member";
    case TraceStep::Op::Conj:
      return "and";
    case TraceStep::Op::DisjTag:
      return "or-tag";
    case TraceStep::Op::Disj:
      return "or";
    case TraceStep::Op::ExistsDomain:
      return "exists-domain";
    case TraceStep::Op::Exists:
      return "exists";
    case TraceStep::Op::Call:
      return "call";
    case TraceStep::Op::PrimeCall:
      return "prime-call";
    case TraceStep::Op::Fault:
      return "fault";
  }
  return "?";
}

inline nlohmann::json verdict_to_json(const Verdict& v) {
  nlohmann::json j;
  switch (v.kind) {
    case Verdict::Kind::Realizes:
      j["verdict"] = "Realizes";
      break;
    case Verdict::Kind::Unknown:
      j["verdict"] = "Unknown";
      j["reason"] = reason_name(v.reason);
      break;
    case Verdict::Kind::Refuted: {
      j["verdict"] = "Refuted";
      nlohmann::json tr = nlohmann::json::array();
      for (const auto& t : v.trace) {
        nlohmann::json s{{"at", trace_op_name(t.op)}};
        if (t.op == TraceStep::Op::Conj || t.op == TraceStep::Op::Disj) s["side"] = t.side;
        if (t.op == TraceStep::Op::Exists) s["witness"] = t.side;
        if (t.op == TraceStep::Op::Call || t.op == TraceStep::Op::PrimeCall) s["args"] = t.args;
        if (t.op == TraceStep::Op::Call) s["s"] = nat_to_json(t.s);
        tr.push_back(std::move(s));
      }
      j["trace"] = std::move(tr);
      break;
    }
  }
  return j;
}

}  // namespace vreal::realize
