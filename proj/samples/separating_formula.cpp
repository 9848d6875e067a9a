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

// The separating formula end to end: extract its realizer, feed it the
// left realizer, read off an overuniversal function u and compare u with
// the evaluator. Then refute a TOTAL candidate by diagonalization.

#include <iostream>

#include "vreal/harness/theorem.hpp"

int main() {
  using namespace vreal;
  std::cout << logic::print_formula(harness::formula5(), logic::Notation::Unicode) << "\n";

  harness::AgreementConfig cfg;
  cfg.samples = 25;
  const auto p = harness::theorem_pipeline(cfg);
  std::cout << "derivation steps: " << p.derivation_steps << "\n";
  std::cout << "u agrees with the evaluator on " << p.agreement.agreed << "/" << p.agreement.sampled
            << " sampled applications\n";

  const kernel::Nat succ = kernel::Program::succ(kernel::Program::proj(1)).code();
  const auto r = kernel::eval(kernel::Model::UREC, p.u, {succ, kernel::Nat(41)}, 1'000'000);
  std::cout << "u(succ, 41) = " << kernel::to_string(r) << "\n";

  // Candidate: (a, b) |-> pair(a, b), a total binary program.
  const auto cand = kernel::Program::pair(kernel::Program::proj(1), kernel::Program::proj(2)).code();
  const auto diag = harness::diagonalize(cand);
  if (const auto* c = std::get_if<harness::DiagonalCertificate>(&diag)) {
    std::cout << "candidate differs from the diagonal at its own code: " << c->lhs << " vs " << c->rhs
              << (harness::replay(*c) ? " (replayed)" : " (replay failed)") << "\n";
  }
  return p.agreement.all_agree() ? 0 : 1;
}
