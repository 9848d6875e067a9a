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

// Finite evaluations: a domain M and a realizer set for every atom over M.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vreal/kernel/nat.hpp"
#include "vreal/logic/formula.hpp"
#include "vreal/logic/text.hpp"

namespace vreal::realize {

using kernel::Nat;

class RealizerSet {
 public:
  // Undetermined stands for a set the producer could not decide; checking
  // against it yields Unknown instead of a guess.
  enum class Kind : std::uint8_t { Finite, All, Empty, Undetermined };

  RealizerSet() : kind_(Kind::Empty) {}
  static RealizerSet all() { return RealizerSet(Kind::All); }
  static RealizerSet empty() { return RealizerSet(Kind::Empty); }
  static RealizerSet undetermined() { return RealizerSet(Kind::Undetermined); }
  static RealizerSet finite(std::vector<Nat> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    RealizerSet s(Kind::Finite);
    s.members_ = std::move(members);
    return s;
  }

  Kind kind() const { return kind_; }
  // Sorted, duplicate-free; Finite only.
  const std::vector<Nat>& members() const { return members_; }

  // nullopt when undetermined.
  std::optional<bool> contains(const Nat& e) const {
    switch (kind_) {
      case Kind::All:
        return true;
      case Kind::Empty:
        return false;
      case Kind::Undetermined:
        return std::nullopt;
      case Kind::Finite:
        return std::binary_search(members_.begin(), members_.end(), e);
    }
    return std::nullopt;
  }

  friend bool operator==(const RealizerSet& a, const RealizerSet& b) {
    return a.kind_ == b.kind_ && a.members_ == b.members_;
  }

 private:
  explicit RealizerSet(Kind k) : kind_(k) {}
  Kind kind_;
  std::vector<Nat> members_;
};

using AtomKey = std::pair<std::string, std::vector<std::uint64_t>>;

class Evaluation {
 public:
  explicit Evaluation(std::vector<std::uint64_t> domain) : domain_(std::move(domain)) {
    std::sort(domain_.begin(), domain_.end());
    domain_.erase(std::unique(domain_.begin(), domain_.end()), domain_.end());
    if (domain_.empty()) throw std::invalid_argument("evaluation domain must be nonempty");
  }

  const std::vector<std::uint64_t>& domain() const { return domain_; }
  bool in_domain(std::uint64_t a) const { return std::binary_search(domain_.begin(), domain_.end(), a); }
  bool in_domain(const Nat& a) const {
    auto s = a.small();
    return s && in_domain(*s);
  }

  void set(const std::string& pred, std::vector<std::uint64_t> args, RealizerSet s) {
    for (auto a : args) {
      if (!in_domain(a)) throw std::invalid_argument("atom argument " + std::to_string(a) + " outside the domain");
    }
    atoms_[{pred, std::move(args)}] = std::move(s);
  }

  // Atoms without an entry denote the empty set.
  const RealizerSet& lookup(const std::string& pred, const std::vector<std::uint64_t>& args) const {
    static const RealizerSet kEmpty;
    auto it = atoms_.find({pred, args});
    return it == atoms_.end() ? kEmpty : it->second;
  }

  const std::map<AtomKey, RealizerSet>& atoms() const { return atoms_; }

 private:
  std::vector<std::uint64_t> domain_;
  std::map<AtomKey, RealizerSet> atoms_;
};

// ---------------------------------------------------------------------------
// JSON: {"domain":[1,2], "atoms":{"P(1)":{"finite":[5]}, "P(2)":"empty",
//        "Q(1)":"all", "R(1,2)":"unknown"}}. Large naturals may be given as
// strings in decimal or pair notation.

inline std::string atom_key_text(const AtomKey& k) {
  std::string s = k.first;
  if (!k.second.empty()) {
    s += '(';
    for (std::size_t i = 0; i < k.second.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(k.second[i]);
    }
    s += ')';
  }
  return s;
}

inline AtomKey parse_atom_key(const std::string& text) {
  const logic::Formula f = logic::parse_formula(text);
  if (f.kind() != logic::Kind::Atom) throw std::invalid_argument("atom key '" + text + "' is not an atom");
  AtomKey k{f.name(), {}};
  for (const auto& t : f.args()) {
    if (t.is_var()) throw std::invalid_argument("atom key '" + text + "' has a variable");
    k.second.push_back(t.value());
  }
  return k;
}

inline nlohmann::json nat_to_json(const Nat& n) {
  if (auto s = n.small()) return *s;
  return kernel::to_string(n);
}

inline Nat nat_from_json(const nlohmann::json& j) {
  if (j.is_number_unsigned()) return Nat(j.get<std::uint64_t>());
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return Nat(j.get<std::int64_t>());
  if (j.is_string()) return kernel::parse_nat(j.get<std::string>());
  throw std::invalid_argument("expected a natural, got " + j.dump());
}

inline nlohmann::json realizer_set_to_json(const RealizerSet& s) {
  switch (s.kind()) {
    case RealizerSet::Kind::All:
      return "all";
    case RealizerSet::Kind::Empty:
      return "empty";
    case RealizerSet::Kind::Undetermined:
      return "unknown";
    case RealizerSet::Kind::Finite: {
      nlohmann::json m = nlohmann::json::array();
      for (const auto& e : s.members()) m.push_back(nat_to_json(e));
      return {{"finite", m}};
    }
  }
  return "empty";
}

inline RealizerSet realizer_set_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "all") return RealizerSet::all();
    if (s == "empty") return RealizerSet::empty();
    if (s == "unknown") return RealizerSet::undetermined();
    throw std::invalid_argument("unknown realizer set '" + s + "'");
  }
  if (j.is_object() && j.contains("finite")) {
    std::vector<Nat> m;
    for (const auto& e : j["finite"]) m.push_back(nat_from_json(e));
    return RealizerSet::finite(std::move(m));
  }
  throw std::invalid_argument("bad realizer set " + j.dump());
}

inline nlohmann::json evaluation_to_json(const Evaluation& f) {
  nlohmann::json atoms = nlohmann::json::object();
  for (const auto& [k, s] : f.atoms()) atoms[atom_key_text(k)] = realizer_set_to_json(s);
  return {{"domain", f.domain()}, {"atoms", atoms}};
}

inline Evaluation evaluation_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("domain")) throw std::invalid_argument("evaluation needs a domain");
  Evaluation f(j.at("domain").get<std::vector<std::uint64_t>>());
  if (j.contains("atoms")) {
    for (const auto& [key, val] : j["atoms"].items()) {
      auto k = parse_atom_key(key);
      f.set(k.first, std::move(k.second), realizer_set_from_json(val));
    }
  }
  return f;
}

}  // namespace vreal::realize
