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

// Hilbert-style derivations for intuitionistic predicate logic: fourteen
// axiom schemas, modus ponens and generalization.
//
//   A1  T                                   A8   A -> A \/ B
//   A2  A -> (B -> A)                       A9   B -> A \/ B
//   A3  (A -> (B -> C)) -> ((A -> B) -> (A -> C))
//   A4  A -> (B -> A /\ B)                  A10  _|_ -> A
//   A5  A /\ B -> A                         A11  forall y. A -> [t/y]A
//   A6  A /\ B -> B                         A12  [t/y]A -> exists y. A
//   A7  (A -> C) -> ((B -> C) -> (A \/ B -> C))
//   A13 forall y. (B -> A) -> (B -> forall y. A)      y not free in B
//   A14 forall y. (A -> B) -> (exists y. A -> B)      y not free in B

#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "vreal/logic/formula.hpp"
#include "vreal/logic/text.hpp"

namespace vreal::logic {

struct AxiomInstance {
  int id = 1;  // 1..14
  std::optional<Formula> a, b, c;
  std::string var;          // A11..A14
  std::optional<Term> term;  // A11, A12
};

struct ByAxiom {
  AxiomInstance inst;
};
struct ByMP {
  std::size_t antecedent;   // step proving A
  std::size_t implication;  // step proving A -> B
};
struct ByGen {
  std::size_t premise;
  std::string var;
};

using Justification = std::variant<ByAxiom, ByMP, ByGen>;

struct Step {
  Formula formula;
  Justification by;
};

struct Derivation {
  std::vector<Step> steps;
  const Formula& conclusion() const { return steps.back().formula; }
};

class DerivationError : public std::invalid_argument {
 public:
  explicit DerivationError(const std::string& what) : std::invalid_argument(what) {}
};

namespace detail {

inline const Formula& need(const std::optional<Formula>& f, const char* slot, int id) {
  if (!f) throw DerivationError("axiom A" + std::to_string(id) + " needs formula " + slot);
  return *f;
}

}  // namespace detail

// The formula an instance denotes; throws DerivationError on missing data or
// a violated side condition.
inline Formula axiom_formula(const AxiomInstance& in) {
  using F = Formula;
  const int id = in.id;
  auto A = [&] { return detail::need(in.a, "A", id); };
  auto B = [&] { return detail::need(in.b, "B", id); };
  auto C = [&] { return detail::need(in.c, "C", id); };
  auto need_var = [&] {
    if (in.var.empty()) throw DerivationError("axiom A" + std::to_string(id) + " needs a variable");
    return in.var;
  };
  auto need_term = [&] {
    if (!in.term) throw DerivationError("axiom A" + std::to_string(id) + " needs a term");
    return *in.term;
  };
  switch (id) {
    case 1:
      return F::top();
    case 2:
      return F::imp(A(), F::imp(B(), A()));
    case 3:
      return F::imp(F::imp(A(), F::imp(B(), C())), F::imp(F::imp(A(), B()), F::imp(A(), C())));
    case 4:
      return F::imp(A(), F::imp(B(), F::conj(A(), B())));
    case 5:
      return F::imp(F::conj(A(), B()), A());
    case 6:
      return F::imp(F::conj(A(), B()), B());
    case 7:
      return F::imp(F::imp(A(), C()), F::imp(F::imp(B(), C()), F::imp(F::disj(A(), B()), C())));
    case 8:
      return F::imp(A(), F::disj(A(), B()));
    case 9:
      return F::imp(B(), F::disj(A(), B()));
    case 10:
      return F::imp(F::bottom(), A());
    case 11: {
      const std::string y = need_var();
      return F::imp(F::forall(y, A()), substitute(A(), need_term(), y));
    }
    case 12: {
      const std::string y = need_var();
      return F::imp(substitute(A(), need_term(), y), F::exists(y, A()));
    }
    case 13: {
      const std::string y = need_var();
      if (is_free_in(y, B())) throw DerivationError("A13 side condition: " + y + " is free in B");
      return F::imp(F::forall(y, F::imp(B(), A())), F::imp(B(), F::forall(y, A())));
    }
    case 14: {
      const std::string y = need_var();
      if (is_free_in(y, B())) throw DerivationError("A14 side condition: " + y + " is free in B");
      return F::imp(F::forall(y, F::imp(A(), B())), F::imp(F::exists(y, A()), B()));
    }
    default:
      throw DerivationError("unknown axiom A" + std::to_string(id));
  }
}

struct CheckResult {
  bool valid = true;
  std::size_t step = 0;  // first offending step when invalid
  std::string reason;
  explicit operator bool() const { return valid; }
};

inline CheckResult check_derivation(const Derivation& d) {
  auto invalid = [](std::size_t k, std::string why) { return CheckResult{false, k, std::move(why)}; };
  if (d.steps.empty()) return invalid(0, "empty derivation");
  std::map<std::string, std::size_t> sig;
  for (std::size_t k = 0; k < d.steps.size(); ++k) {
    const Step& s = d.steps[k];
    try {
      for (const auto& [p, n] : signature(s.formula)) {
        auto [it, fresh] = sig.emplace(p, n);
        if (!fresh && it->second != n) return invalid(k, "predicate " + p + " used at two arities");
      }
    } catch (const std::invalid_argument& e) {
      return invalid(k, e.what());
    }
    if (const auto* ax = std::get_if<ByAxiom>(&s.by)) {
      Formula expected;
      try {
        expected = axiom_formula(ax->inst);
      } catch (const DerivationError& e) {
        return invalid(k, e.what());
      }
      if (!alpha_equal(expected, s.formula)) {
        return invalid(k, "formula is not the stated instance of A" + std::to_string(ax->inst.id) + " (expected " +
                              print_formula(expected) + ")");
      }
    } else if (const auto* mp = std::get_if<ByMP>(&s.by)) {
      if (mp->antecedent >= k || mp->implication >= k) return invalid(k, "mp cites a step that does not precede it");
      const Formula& imp = d.steps[mp->implication].formula;
      if (imp.kind() != Kind::Imp) return invalid(k, "mp cites a non-implication");
      if (!alpha_equal(imp.lhs(), d.steps[mp->antecedent].formula)) return invalid(k, "mp antecedent mismatch");
      if (!alpha_equal(imp.rhs(), s.formula)) return invalid(k, "mp conclusion mismatch");
    } else {
      const auto& g = std::get<ByGen>(s.by);
      if (g.premise >= k) return invalid(k, "gen cites a step that does not precede it");
      if (!alpha_equal(Formula::forall(g.var, d.steps[g.premise].formula), s.formula)) {
        return invalid(k, "gen conclusion is not forall " + g.var + " of the premise");
      }
    }
  }
  return {};
}

// Appends steps while computing their formulas.
class DerivationBuilder {
 public:
  std::size_t axiom(AxiomInstance inst) {
    Formula f = axiom_formula(inst);
    return push(std::move(f), ByAxiom{std::move(inst)});
  }
  std::size_t mp(std::size_t antecedent, std::size_t implication) {
    const Formula& imp = d_.steps.at(implication).formula;
    if (imp.kind() != Kind::Imp || !alpha_equal(imp.lhs(), d_.steps.at(antecedent).formula)) {
      throw DerivationError("builder: mp(" + std::to_string(antecedent) + ", " + std::to_string(implication) +
                            ") does not match");
    }
    return push(imp.rhs(), ByMP{antecedent, implication});
  }
  std::size_t gen(std::size_t premise, std::string var) {
    Formula f = Formula::forall(var, d_.steps.at(premise).formula);
    return push(std::move(f), ByGen{premise, std::move(var)});
  }
  const Formula& formula(std::size_t i) const { return d_.steps.at(i).formula; }
  std::size_t size() const { return d_.steps.size(); }
  const Derivation& derivation() const { return d_; }

 private:
  std::size_t push(Formula f, Justification j) {
    d_.steps.push_back({std::move(f), std::move(j)});
    return d_.steps.size() - 1;
  }
  Derivation d_;
};

// ---------------------------------------------------------------------------
// JSON.

inline Term parse_term(std::string_view s) {
  if (!s.empty() && std::isdigit(static_cast<unsigned char>(s.front()))) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw DerivationError("bad term '" + std::string(s) + "'");
    return Term::constant(v);
  }
  if (s.empty()) throw DerivationError("empty term");
  return Term::var(std::string(s));
}

inline nlohmann::json justification_to_json(const Justification& j) {
  using nlohmann::json;
  if (const auto* ax = std::get_if<ByAxiom>(&j)) {
    json out{{"axiom", "A" + std::to_string(ax->inst.id)}};
    if (ax->inst.a) out["A"] = print_formula(*ax->inst.a);
    if (ax->inst.b) out["B"] = print_formula(*ax->inst.b);
    if (ax->inst.c) out["C"] = print_formula(*ax->inst.c);
    if (!ax->inst.var.empty()) out["var"] = ax->inst.var;
    if (ax->inst.term) out["term"] = to_string(*ax->inst.term);
    return out;
  }
  if (const auto* mp = std::get_if<ByMP>(&j)) return json{{"mp", {mp->antecedent, mp->implication}}};
  const auto& g = std::get<ByGen>(j);
  return json{{"gen", {g.premise, g.var}}};
}

inline nlohmann::json derivation_to_json(const Derivation& d) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : d.steps) steps.push_back({{"formula", print_formula(s.formula)}, {"by", justification_to_json(s.by)}});
  return {{"steps", steps}};
}

inline std::string print_derivation(const Derivation& d) { return derivation_to_json(d).dump(2); }

inline Justification justification_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DerivationError("justification must be an object");
  if (j.contains("axiom")) {
    AxiomInstance inst;
    const std::string id = j.at("axiom").get<std::string>();
    if (id.size() < 2 || id[0] != 'A') throw DerivationError("bad axiom id '" + id + "'");
    try {
      inst.id = std::stoi(id.substr(1));
    } catch (const std::exception&) {
      throw DerivationError("bad axiom id '" + id + "'");
    }
    if (j.contains("A")) inst.a = parse_formula(j["A"].get<std::string>());
    if (j.contains("B")) inst.b = parse_formula(j["B"].get<std::string>());
    if (j.contains("C")) inst.c = parse_formula(j["C"].get<std::string>());
    if (j.contains("var")) inst.var = j["var"].get<std::string>();
    if (j.contains("term")) {
      const auto& t = j["term"];
      inst.term = t.is_number_unsigned() ? Term::constant(t.get<std::uint64_t>()) : parse_term(t.get<std::string>());
    }
    return ByAxiom{std::move(inst)};
  }
  if (j.contains("mp")) {
    const auto& a = j["mp"];
    if (!a.is_array() || a.size() != 2) throw DerivationError("mp needs [i, j]");
    return ByMP{a[0].get<std::size_t>(), a[1].get<std::size_t>()};
  }
  if (j.contains("gen")) {
    const auto& a = j["gen"];
    if (!a.is_array() || a.size() != 2) throw DerivationError("gen needs [i, \"x\"]");
    return ByGen{a[0].get<std::size_t>(), a[1].get<std::string>()};
  }
  throw DerivationError("justification needs one of axiom, mp, gen");
}

// Throws ParseError for formula syntax and DerivationError (or a JSON
// exception) for structure.
inline Derivation derivation_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("steps") || !j["steps"].is_array()) throw DerivationError("expected {\"steps\": [...]}");
  Derivation d;
  for (const auto& s : j["steps"]) {
    d.steps.push_back({parse_formula(s.at("formula").get<std::string>()), justification_from_json(s.at("by"))});
  }
  return d;
}

inline Derivation parse_derivation(std::string_view text) {
  return derivation_from_json(nlohmann::json::parse(text.begin(), text.end()));
}

}  // namespace vreal::logic
