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

// Reads a derivation of forall y. (P(y) -> P(y)) from JSON, extracts its
// closed realizer and checks it on a random evaluation.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "vreal/extract/extract.hpp"
#include "vreal/realize/checker.hpp"

int main(int argc, char** argv) {
  using namespace vreal;
  const std::string path = argc > 1 ? argv[1] : VREAL_SAMPLE_DATA "/identity_derivation.json";
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot read " << path << "\n";
    return 1;
  }
  std::stringstream text;
  text << in.rdbuf();
  const logic::Derivation d = logic::parse_derivation(text.str());
  if (auto ok = logic::check_derivation(d); !ok) {
    std::cerr << "invalid at step " << ok.step << ": " << ok.reason << "\n";
    return 1;
  }
  const auto r = extract::extract(d, {});
  std::cout << "conclusion: " << logic::print_formula(d.conclusion()) << "\n";
  std::cout << "program:    " << r.program.size() << " nodes, " << r.table.size() << " steps\n";
  const kernel::Nat e = extract::closed_realizer(d);
  std::cout << "realizer:   " << e << "\n";

  std::mt19937_64 rng(7);
  realize::Evaluation f({0, 1, 2});
  for (std::uint64_t a : f.domain()) {
    std::vector<kernel::Nat> members;
    for (int k = 0; k < 3; ++k) members.emplace_back(rng() % 33);
    f.set("P", {a}, realize::RealizerSet::finite(members));
  }
  const auto v = realize::realizes(e, d.conclusion(), f);
  std::cout << "verdict:    " << realize::verdict_name(v) << "\n";
  return v.is_refuted() ? 1 : 0;
}
