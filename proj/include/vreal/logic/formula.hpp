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

// First-order formulas without function symbols: terms are variables or
// numeric constants.

#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace vreal::logic {

class Term {
 public:
  static Term var(std::string name) { return Term(std::move(name)); }
  static Term constant(std::uint64_t k) { return Term(k); }

  bool is_var() const { return std::holds_alternative<std::string>(v_); }
  const std::string& name() const { return std::get<std::string>(v_); }
  std::uint64_t value() const { return std::get<std::uint64_t>(v_); }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  explicit Term(std::string n) : v_(std::move(n)) {}
  explicit Term(std::uint64_t k) : v_(k) {}
  std::variant<std::string, std::uint64_t> v_;
};

inline std::string to_string(const Term& t) { return t.is_var() ? t.name() : std::to_string(t.value()); }

enum class Kind : std::uint8_t { Bottom, Top, Atom, And, Or, Imp, Forall, Exists };

class Formula {
 public:
  struct Node;

  // Top.
  Formula();

  static Formula bottom();
  static Formula top();
  static Formula atom(std::string pred, std::vector<Term> args = {});
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  Kind kind() const;
  bool is_binary() const { return kind() == Kind::And || kind() == Kind::Or || kind() == Kind::Imp; }
  bool is_quantifier() const { return kind() == Kind::Forall || kind() == Kind::Exists; }
  // Atom predicate or quantified variable.
  const std::string& name() const;
  const std::vector<Term>& args() const;
  // Left operand, or the body of a quantifier.
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& body() const { return lhs(); }

  // Syntactic identity; see alpha_equal for equality up to bound names.
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Kind kind;
  std::string name;
  std::vector<Term> args;
  std::optional<Formula> lhs, rhs;
};

inline Formula::Formula() : Formula(top()) {}

inline Formula Formula::bottom() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::Bottom, {}, {}, {}, {}}));
  return f;
}
inline Formula Formula::top() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::Top, {}, {}, {}, {}}));
  return f;
}
inline Formula Formula::atom(std::string pred, std::vector<Term> args) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(pred), std::move(args), {}, {}}));
}
inline Formula Formula::conj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::And, {}, {}, std::move(a), std::move(b)}));
}
inline Formula Formula::disj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, {}, std::move(a), std::move(b)}));
}
inline Formula Formula::imp(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Imp, {}, {}, std::move(a), std::move(b)}));
}
inline Formula Formula::forall(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::Forall, std::move(var), {}, std::move(body), {}}));
}
inline Formula Formula::exists(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::Exists, std::move(var), {}, std::move(body), {}}));
}

inline Kind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline const std::vector<Term>& Formula::args() const { return node_->args; }
inline const Formula& Formula::lhs() const { return *node_->lhs; }
inline const Formula& Formula::rhs() const { return *node_->rhs; }

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Bottom:
    case Kind::Top:
      return true;
    case Kind::Atom:
      return a.name() == b.name() && a.args() == b.args();
    case Kind::Forall:
    case Kind::Exists:
      return a.name() == b.name() && a.body() == b.body();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

// ---------------------------------------------------------------------------
// Variables.

namespace detail {

inline void collect_free(const Formula& a, std::multiset<std::string>& bound, std::set<std::string>& out) {
  switch (a.kind()) {
    case Kind::Bottom:
    case Kind::Top:
      return;
    case Kind::Atom:
      for (const auto& t : a.args()) {
        if (t.is_var() && !bound.contains(t.name())) out.insert(t.name());
      }
      return;
    case Kind::Forall:
    case Kind::Exists: {
      auto it = bound.insert(a.name());
      collect_free(a.body(), bound, out);
      bound.erase(it);
      return;
    }
    default:
      collect_free(a.lhs(), bound, out);
      collect_free(a.rhs(), bound, out);
  }
}

inline void collect_all_vars(const Formula& a, std::set<std::string>& out) {
  switch (a.kind()) {
    case Kind::Bottom:
    case Kind::Top:
      return;
    case Kind::Atom:
      for (const auto& t : a.args()) {
        if (t.is_var()) out.insert(t.name());
      }
      return;
    case Kind::Forall:
    case Kind::Exists:
      out.insert(a.name());
      collect_all_vars(a.body(), out);
      return;
    default:
      collect_all_vars(a.lhs(), out);
      collect_all_vars(a.rhs(), out);
  }
}

}  // namespace detail

inline std::set<std::string> free_vars(const Formula& a) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  detail::collect_free(a, bound, out);
  return out;
}

inline bool is_free_in(const std::string& x, const Formula& a) { return free_vars(a).contains(x); }

// Free and bound names.
inline std::set<std::string> all_vars(const Formula& a) {
  std::set<std::string> out;
  detail::collect_all_vars(a, out);
  return out;
}

inline std::set<std::uint64_t> constants(const Formula& a) {
  std::set<std::uint64_t> out;
  auto walk = [&](auto&& self, const Formula& f) -> void {
    switch (f.kind()) {
      case Kind::Bottom:
      case Kind::Top:
        return;
      case Kind::Atom:
        for (const auto& t : f.args()) {
          if (!t.is_var()) out.insert(t.value());
        }
        return;
      case Kind::Forall:
      case Kind::Exists:
        self(self, f.body());
        return;
      default:
        self(self, f.lhs());
        self(self, f.rhs());
    }
  };
  walk(walk, a);
  return out;
}

// Smallest-suffix fresh name: strips trailing digits from `base` and tries
// base1, base2, ... until one avoids `used`.
inline std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  std::string stem = base;
  while (stem.size() > 1 && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  for (std::uint64_t i = 1;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!used.contains(cand)) return cand;
  }
}

// ---------------------------------------------------------------------------
// Substitution.

using TermSubst = std::map<std::string, Term>;

namespace detail {

inline Formula subst(const Formula& a, const TermSubst& s) {
  switch (a.kind()) {
    case Kind::Bottom:
    case Kind::Top:
      return a;
    case Kind::Atom: {
      std::vector<Term> args;
      args.reserve(a.args().size());
      for (const auto& t : a.args()) {
        auto it = t.is_var() ? s.find(t.name()) : s.end();
        args.push_back(it == s.end() ? t : it->second);
      }
      return Formula::atom(a.name(), std::move(args));
    }
    case Kind::Forall:
    case Kind::Exists: {
      const std::string& x = a.name();
      const auto body_free = free_vars(a.body());
      TermSubst inner;
      std::set<std::string> incoming;
      for (const auto& [v, t] : s) {
        if (v == x || !body_free.contains(v)) continue;
        inner.emplace(v, t);
        if (t.is_var()) incoming.insert(t.name());
      }
      if (inner.empty()) return a;
      std::string y = x;
      if (incoming.contains(x)) {
        std::set<std::string> used = incoming;
        used.insert(body_free.begin(), body_free.end());
        for (const auto& [v, t] : inner) used.insert(v);
        used.insert(x);
        y = fresh_name(x, used);
        inner.emplace(x, Term::var(y));
      }
      Formula body = subst(a.body(), inner);
      return a.kind() == Kind::Forall ? Formula::forall(y, std::move(body)) : Formula::exists(y, std::move(body));
    }
    case Kind::And:
      return Formula::conj(subst(a.lhs(), s), subst(a.rhs(), s));
    case Kind::Or:
      return Formula::disj(subst(a.lhs(), s), subst(a.rhs(), s));
    case Kind::Imp:
      return Formula::imp(subst(a.lhs(), s), subst(a.rhs(), s));
  }
  return a;
}

}  // namespace detail

// Simultaneous capture-avoiding substitution [t1/x1, ..., tn/xn]. A bound
// variable is renamed only when it would capture an incoming variable.
inline Formula substitute(const Formula& a, const std::vector<std::pair<Term, std::string>>& pairs) {
  TermSubst s;
  for (const auto& [t, x] : pairs) {
    if (!s.emplace(x, t).second) throw std::invalid_argument("substitute: variable '" + x + "' listed twice");
  }
  return detail::subst(a, s);
}

inline Formula substitute(const Formula& a, const Term& t, const std::string& x) { return substitute(a, {{t, x}}); }

// ---------------------------------------------------------------------------
// Alpha-equivalence.

namespace detail {

using Binders = std::vector<std::pair<std::string, std::string>>;

inline bool alpha_terms(const Term& s, const Term& t, const Binders& env) {
  if (s.is_var() != t.is_var()) return false;
  if (!s.is_var()) return s.value() == t.value();
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    const bool l = it->first == s.name();
    const bool r = it->second == t.name();
    if (l || r) return l && r;
  }
  return s.name() == t.name();
}

inline bool alpha(const Formula& a, const Formula& b, Binders& env) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Bottom:
    case Kind::Top:
      return true;
    case Kind::Atom:
      if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i) {
        if (!alpha_terms(a.args()[i], b.args()[i], env)) return false;
      }
      return true;
    case Kind::Forall:
    case Kind::Exists: {
      env.emplace_back(a.name(), b.name());
      const bool ok = alpha(a.body(), b.body(), env);
      env.pop_back();
      return ok;
    }
    default:
      return alpha(a.lhs(), b.lhs(), env) && alpha(a.rhs(), b.rhs(), env);
  }
}

}  // namespace detail

inline bool alpha_equal(const Formula& a, const Formula& b) {
  detail::Binders env;
  return detail::alpha(a, b, env);
}

// Renames every bound variable to v1, v2, ... in binding order, so that
// alpha-equivalent formulas map to syntactically equal ones.
inline Formula alpha_canonical(const Formula& a) {
  std::set<std::string> avoid = free_vars(a);
  std::uint64_t next = 0;
  auto go = [&](auto&& self, const Formula& f) -> Formula {
    switch (f.kind()) {
      case Kind::Bottom:
      case Kind::Top:
      case Kind::Atom:
        return f;
      case Kind::Forall:
      case Kind::Exists: {
        std::string y;
        do y = "v" + std::to_string(++next);
        while (avoid.contains(y));
        Formula body = self(self, substitute(f.body(), Term::var(y), f.name()));
        return f.kind() == Kind::Forall ? Formula::forall(y, std::move(body)) : Formula::exists(y, std::move(body));
      }
      case Kind::And:
        return Formula::conj(self(self, f.lhs()), self(self, f.rhs()));
      case Kind::Or:
        return Formula::disj(self(self, f.lhs()), self(self, f.rhs()));
      case Kind::Imp:
        return Formula::imp(self(self, f.lhs()), self(self, f.rhs()));
    }
    return f;
  };
  return go(go, a);
}

// ---------------------------------------------------------------------------
// Quantifier blocks.

// forall x1..xn (antecedent -> consequent). A body that is not an arrow is
// read as (T -> body).
struct BlockView {
  std::vector<std::string> vars;
  Formula antecedent;
  Formula consequent;
  bool wrapped = false;
};

// The block view of an implication or universal formula, else nullopt.
inline std::optional<BlockView> canonicalize_blocks(const Formula& a) {
  if (a.kind() != Kind::Forall && a.kind() != Kind::Imp) return std::nullopt;
  BlockView v;
  const Formula* f = &a;
  while (f->kind() == Kind::Forall) {
    v.vars.push_back(f->name());
    f = &f->body();
  }
  if (f->kind() == Kind::Imp) {
    v.antecedent = f->lhs();
    v.consequent = f->rhs();
  } else {
    v.antecedent = Formula::top();
    v.consequent = *f;
    v.wrapped = true;
  }
  return v;
}

// Replaces the block variables by constants; a later binder of the same
// name shadows an earlier one.
inline Formula instantiate(const Formula& body, const std::vector<std::string>& vars,
                           const std::vector<std::uint64_t>& values) {
  Formula out = body;
  for (std::size_t i = vars.size(); i-- > 0;) {
    bool shadowed = false;
    for (std::size_t j = i + 1; j < vars.size(); ++j) shadowed = shadowed || vars[j] == vars[i];
    if (!shadowed) out = substitute(out, Term::constant(values[i]), vars[i]);
  }
  return out;
}

// Predicate symbols with the arities they are used at; throws on a clash.
inline std::map<std::string, std::size_t> signature(const Formula& a) {
  std::map<std::string, std::size_t> sig;
  auto walk = [&](auto&& self, const Formula& f) -> void {
    switch (f.kind()) {
      case Kind::Bottom:
      case Kind::Top:
        return;
      case Kind::Atom: {
        auto [it, fresh] = sig.emplace(f.name(), f.args().size());
        if (!fresh && it->second != f.args().size()) {
          throw std::invalid_argument("predicate '" + f.name() + "' used at arities " + std::to_string(it->second) +
                                      " and " + std::to_string(f.args().size()));
        }
        return;
      }
      case Kind::Forall:
      case Kind::Exists:
        self(self, f.body());
        return;
      default:
        self(self, f.lhs());
        self(self, f.rhs());
    }
  };
  walk(walk, a);
  return sig;
}

}  // namespace vreal::logic
