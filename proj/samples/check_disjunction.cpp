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

// Checks a few candidates against a disjunction and an implication on a
// two-element evaluation, printing each verdict and refutation trace.

#include <iostream>

#include "vreal/kernel/combinators.hpp"
#include "vreal/realize/checker.hpp"

int main() {
  using namespace vreal;
  using kernel::Nat;
  using kernel::Program;
  using realize::RealizerSet;

  realize::Evaluation f({1, 2});
  f.set("P", {1}, RealizerSet::finite({4}));
  f.set("Q", {1}, RealizerSet::finite({9}));
  f.set("Q", {2}, RealizerSet::all());

  const auto report = [&](const Nat& e, const std::string& text) {
    const auto a = logic::parse_formula(text);
    const auto v = realize::realizes(e, a, f);
    std::cout << e << " vs " << text << ": " << realize::verdict_name(v) << "\n";
    if (v.is_refuted()) std::cout << "  trace " << realize::verdict_to_json(v)["trace"].dump() << "\n";
  };

  report(kernel::pair(0, 4), "P(1) \\/ Q(1)");  // left branch, 4 in P(1)
  report(kernel::pair(1, 4), "P(1) \\/ Q(1)");  // right branch, 4 not in Q(1)
  report(kernel::pair(1, 123), "P(2) \\/ Q(2)");
  report(kernel::pair(3, 0), "P(1) \\/ Q(1)");

  // P(1) -> Q(1) \/ P(1): inject into the right branch.
  const Program inr = Program::pair(Program::lit(1), Program::proj(1));
  report(inr.code(), "P(1) -> Q(1) \\/ P(1)");
  report(Program::proj(1).code(), "P(1) -> Q(1) \\/ P(1)");
  return 0;
}
