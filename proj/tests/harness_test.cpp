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

#include <gtest/gtest.h>

#include "criteria.hpp"
#include "oracle.hpp"
#include "vreal/harness/theorem.hpp"

namespace {

using namespace vreal;
using kernel::Model;
using kernel::Nat;
using kernel::Program;
using realize::RealizerSet;

const Program kSucc = Program::succ(Program::proj(1));

TEST(SeparatingFormula, PrintsAsExpected) {
  EXPECT_EQ(logic::print_formula(harness::formula5()),
            "forall x. (Q(x) -> forall y. (R(x,y) -> exists z. P(x,y,z))) -> "
            "forall y. forall x. (Q(x) /\\ R(x,y) -> exists z. P(x,y,z))");
  EXPECT_EQ(logic::parse_formula(logic::print_formula(harness::formula5())), harness::formula5());
  EXPECT_TRUE(logic::free_vars(harness::formula5()).empty());
}

TEST(SeparatingFormula, DerivationIsValidAndExtracts) {
  const auto d = harness::derivation5();
  const auto ok = logic::check_derivation(d);
  EXPECT_TRUE(ok) << ok.reason;
  EXPECT_EQ(d.conclusion(), harness::formula5());
  EXPECT_NO_THROW(extract::extract(d, {}));
  EXPECT_THROW(extract::extract(d, {}, Model::TOTAL), kernel::CapabilityError);
}

TEST(Slice, Examples) {
  // The successor program has code 35.
  const auto f = harness::theorem_evaluation(40);
  for (std::uint64_t a = 0; a < 40; ++a) EXPECT_EQ(f.lookup("Q", {a}), RealizerSet::all());
  const auto a = kSucc.code().small();
  ASSERT_TRUE(a && *a < 40) << kSucc.code();
  EXPECT_EQ(f.lookup("R", {*a, 4}), RealizerSet::all());
  EXPECT_EQ(f.lookup("P", {*a, 4, 5}), RealizerSet::all());
  EXPECT_EQ(f.lookup("P", {*a, 4, 6}), RealizerSet::empty());
  // Value 40 leaves the slice.
  EXPECT_EQ(f.lookup("R", {*a, 39}).kind(), RealizerSet::Kind::Undetermined);
}

TEST(Slice, SelfApplicationIsUndetermined) {
  // apply(x, x) on its own code runs past any slice fuel.
  const Program w = Program::apply(Program::proj(1), Program::proj(1));
  const auto code = w.code().small();
  ASSERT_TRUE(code);
  const std::uint64_t slice = *code + 1;
  const auto f = harness::theorem_evaluation(slice);
  EXPECT_EQ(f.lookup("R", {*code, *code}).kind(), RealizerSet::Kind::Undetermined);
}

TEST(Slice, EntriesMatchDirectEvaluationAndGrowMonotonically) {
  const auto small = harness::theorem_evaluation(24);
  const auto big = harness::theorem_evaluation(48);
  std::size_t resolved = 0;
  for (std::uint64_t a = 0; a < 24; ++a) {
    for (std::uint64_t b = 0; b < 24; ++b) {
      const auto& s = small.lookup("R", {a, b});
      const auto& t = big.lookup("R", {a, b});
      if (s.kind() == RealizerSet::Kind::Undetermined) {
        resolved += t.kind() != RealizerSet::Kind::Undetermined;
        continue;
      }
      EXPECT_EQ(s, t) << a << "," << b;
      const auto ref = oracle::eval(Model::UREC, Nat(a), {Nat(b)}, harness::slice_fuel(24));
      EXPECT_EQ(s == RealizerSet::all(), ref.st == oracle::St::Ok);
      if (ref.st == oracle::St::Ok) EXPECT_EQ(small.lookup("P", {a, b, *ref.v.small()}), RealizerSet::all());
    }
  }
  EXPECT_GT(resolved, 0u);
}

TEST(LeftRealizer, Examples) {
  const Nat e = harness::left_realizer();
  const Nat a = kSucc.code();
  auto k = kernel::eval(Model::UREC, e, {a, Nat(0)}, 1000);
  ASSERT_TRUE(k.converged());
  auto v = kernel::eval(Model::UREC, k.value, {Nat(3), Nat(0)}, 1000);
  EXPECT_EQ(v, kernel::EvalOutcome::converged_with(kernel::pair(4, 0)));
  EXPECT_EQ(harness::theorem_evaluation(40).lookup("P", {*a.small(), 3, 4}), RealizerSet::all());
  EXPECT_FALSE(realize::realizes(e, harness::formula5_left(), harness::theorem_evaluation(32)).is_refuted());
}

TEST(LeftRealizer, WrongRealizerIsRefuted) {
  // k'(a) answers pair(phi_a(y) + 1, 0): a wrong witness.
  namespace b = kernel::build;
  const Program wrong_k =
      b::code_pair(b::code_succ(b::code_comp(Program::proj(1), {b::quoted(Program::proj(1))})),
                   b::quoted(Program::lit(Nat(0))));
  const Nat e = Program::comp(wrong_k, {Program::proj(1)}).code();
  const auto f = harness::theorem_evaluation(16);
  const auto v = realize::realizes(e, harness::formula5_left(), f);
  ASSERT_TRUE(v.is_refuted());
  EXPECT_TRUE(realize::replay(e, harness::formula5_left(), f, {}, v.trace));
}

TEST(Overuniversal, PipelineExamples) {
  harness::AgreementConfig cfg;
  cfg.seed = criteria::kSeed;
  const auto p = harness::theorem_pipeline(cfg);
  EXPECT_TRUE(p.agreement.all_agree());
  EXPECT_EQ(p.agreement.agreed, 100u);
  auto r = kernel::eval(Model::UREC, p.u, {kSucc.code(), Nat(9)}, 1'000'000);
  EXPECT_EQ(r, kernel::EvalOutcome::converged_with(10));
}

TEST(Overuniversal, GarbageRealizerIsReportedNotAsserted) {
  harness::AgreementConfig cfg;
  cfg.samples = 20;
  const auto rep = harness::check_agreement(harness::derive_overuniversal(Program::lit(3).code()), cfg);
  EXPECT_EQ(rep.sampled, 20u);
  EXPECT_FALSE(rep.all_agree());
  EXPECT_FALSE(rep.disagreements.empty());
}

TEST(Diagonal, Examples) {
  const Program zero = Program::lit(0);
  auto r = harness::diagonalize(zero.code());
  ASSERT_TRUE(std::holds_alternative<harness::DiagonalCertificate>(r));
  auto c = std::get<harness::DiagonalCertificate>(r);
  EXPECT_EQ(c.lhs, Nat(0));
  EXPECT_EQ(c.rhs, Nat(1));
  EXPECT_EQ(c.point_a, c.diagonal_code);
  EXPECT_TRUE(harness::replay(c));

  r = harness::diagonalize(Program::proj(2).code());
  c = std::get<harness::DiagonalCertificate>(r);
  EXPECT_EQ(c.lhs, c.diagonal_code);
  EXPECT_EQ(c.rhs, c.diagonal_code.succ());
  EXPECT_TRUE(harness::replay(c));

  auto forged = c;
  forged.rhs = forged.lhs.succ().succ();
  EXPECT_FALSE(harness::replay(forged));
}

TEST(Diagonal, RandomCandidates) {
  const auto r = criteria::criterion7();
  EXPECT_TRUE(r.pass) << r.summary;
}

}  // namespace
