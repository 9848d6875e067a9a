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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vreal/extract/extract.hpp"
#include "vreal/harness/theorem.hpp"
#include "vreal/kernel/random.hpp"
#include "vreal/logic/derivation.hpp"
#include "vreal/logic/text.hpp"
#include "vreal/realize/checker.hpp"

namespace {

using namespace vreal;
using nlohmann::json;

enum Exit : int { kOk = 0, kRefuted = 1, kUnknown = 2, kInputError = 3, kCapability = 4 };

struct RunConfig {
  std::string model = "urec";
  std::uint64_t fuel = 100000;
  std::uint64_t bound = 64;
  std::uint64_t seed = 1;
  bool json = false;

  kernel::Model model_id() const { return model == "total" ? kernel::Model::TOTAL : kernel::Model::UREC; }
  realize::CheckConfig check() const { return {fuel, bound, model_id()}; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_trace(const realize::Verdict& v) {
  for (const auto& t : v.trace) {
    std::cout << "  " << realize::trace_op_name(t.op);
    if (t.op == realize::TraceStep::Op::Conj || t.op == realize::TraceStep::Op::Disj) std::cout << " side=" << t.side;
    if (t.op == realize::TraceStep::Op::Exists) std::cout << " witness=" << t.side;
    if (t.op == realize::TraceStep::Op::Call || t.op == realize::TraceStep::Op::PrimeCall) {
      std::cout << " args=(";
      for (std::size_t i = 0; i < t.args.size(); ++i) std::cout << (i ? "," : "") << t.args[i];
      std::cout << ")";
    }
    if (t.op == realize::TraceStep::Op::Call) std::cout << " s=" << t.s;
    std::cout << "\n";
  }
}

int cmd_check(const RunConfig& rc, const std::string& formula_file, const std::string& eval_file,
              const std::string& realizer) {
  logic::Formula a;
  std::optional<realize::Evaluation> f;
  kernel::Nat e;
  try {
    a = logic::parse_formula(read_file(formula_file));
    f.emplace(realize::evaluation_from_json(json::parse(read_file(eval_file))));
    e = kernel::parse_nat(realizer);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kInputError;
  }
  realize::Verdict v;
  try {
    v = realize::realizes(e, a, *f, rc.check());
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kInputError;
  }
  if (rc.json) {
    json j = realize::verdict_to_json(v);
    j["formula"] = logic::print_formula(a);
    j["realizer"] = realize::nat_to_json(e);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << realize::verdict_name(v) << "\n";
    print_trace(v);
  }
  if (v.is_realizes()) return kOk;
  return v.is_refuted() ? kRefuted : kUnknown;
}

logic::Derivation load_derivation(const std::string& path) { return logic::parse_derivation(read_file(path)); }

int cmd_prove(const RunConfig& rc, const std::string& path) {
  logic::Derivation d;
  try {
    d = load_derivation(path);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kInputError;
  }
  const auto res = logic::check_derivation(d);
  if (rc.json) {
    json j{{"valid", res.valid}, {"steps", d.steps.size()}};
    if (res.valid) j["conclusion"] = logic::print_formula(d.conclusion());
    if (!res.valid) j["step"] = res.step, j["reason"] = res.reason;
    std::cout << j.dump(2) << "\n";
  } else if (res.valid) {
    std::cout << "valid: " << logic::print_formula(d.conclusion()) << "\n";
  } else {
    std::cout << "invalid at step " << res.step << ": " << res.reason << "\n";
  }
  return res.valid ? kOk : 1;
}

int cmd_extract(const RunConfig& rc, const std::string& path, const std::vector<std::string>& vars) {
  logic::Derivation d;
  try {
    d = load_derivation(path);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kInputError;
  }
  try {
    const auto r = extract::extract(d, vars, rc.model_id());
    if (rc.json) {
      std::cout << extract::extraction_to_json(r).dump(2) << "\n";
    } else {
      std::cout << "conclusion: " << logic::print_formula(d.conclusion()) << "\n";
      std::cout << "psi: " << r.psi << "\n";
      for (const auto& e : r.table) std::cout << "  step " << e.step << ": " << e.program.code() << "\n";
    }
    return kOk;
  } catch (const kernel::CapabilityError& ex) {
    std::cerr << "capability error: " << ex.what() << "\n";
    return kCapability;
  } catch (const logic::DerivationError& ex) {
    std::cerr << "invalid proof: " << ex.what() << "\n";
    return 1;
  }
}

int cmd_demo(const RunConfig& rc, std::uint64_t slice, std::size_t samples) {
  harness::AgreementConfig cfg;
  cfg.samples = samples;
  cfg.seed = rc.seed;
  json trace;
  trace["slice"] = slice;
  harness::PipelineResult p;
  try {
    p = harness::theorem_pipeline(cfg, rc.model_id());
  } catch (const kernel::CapabilityError& ex) {
    if (rc.json) {
      std::cout << json{{"stage", "extraction"}, {"error", ex.what()}}.dump(2) << "\n";
    } else {
      std::cerr << "extraction: capability error: " << ex.what() << "\n";
    }
    return kCapability;
  }
  const auto f = harness::theorem_evaluation(slice);
  const auto left = realize::realizes(p.left, harness::formula5_left(), f, rc.check());
  trace["pipeline"] = harness::pipeline_to_json(p);
  trace["left_check"] = realize::verdict_to_json(left);
  const bool ok = p.agreement.all_agree() && !left.is_refuted();
  trace["ok"] = ok;
  if (rc.json) {
    std::cout << trace.dump(2) << "\n";
  } else {
    std::cout << "formula:       " << logic::print_formula(harness::formula5(), logic::Notation::Unicode) << "\n";
    std::cout << "derivation:    " << p.derivation_steps << " steps\n";
    std::cout << "left realizer: " << p.left << " (" << realize::verdict_name(left) << " on slice " << slice << ")\n";
    std::cout << "u agreement:   " << p.agreement.agreed << "/" << p.agreement.sampled << "\n";
  }
  return ok ? kOk : 1;
}

int cmd_diagonalize(const RunConfig& rc, const std::string& code) {
  kernel::Nat c;
  try {
    c = kernel::parse_nat(code);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kInputError;
  }
  const auto r = harness::diagonalize(c);
  if (const auto* bad = std::get_if<harness::CandidateNotTotal>(&r)) {
    std::cerr << "candidate not total: " << bad->detail << "\n";
    return 1;
  }
  const auto& cert = std::get<harness::DiagonalCertificate>(r);
  if (rc.json) {
    std::cout << harness::certificate_to_json(cert).dump(2) << "\n";
  } else {
    std::cout << "candidate(" << cert.point_a << ", " << cert.point_b << ") = " << cert.lhs << "\n";
    std::cout << "diagonal(" << cert.point_a << ") = " << cert.rhs << "\n";
    std::cout << "replays: " << (harness::replay(cert) ? "yes" : "no") << "\n";
  }
  return kOk;
}

int cmd_selftest(const RunConfig& rc) {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "pass " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };
  for (const auto& d : {harness::top_derivation(), harness::identity_derivation(), harness::derivation5()}) {
    report("derivation valid: " + logic::print_formula(d.conclusion()), bool(logic::check_derivation(d)));
  }
  realize::Evaluation f({0, 1});
  f.set("P", {0}, realize::RealizerSet::finite({kernel::Nat(3)}));
  const auto id = harness::identity_derivation();
  report("identity realizer not refuted",
         !realize::realizes(extract::closed_realizer(id), id.conclusion(), f, rc.check()).is_refuted());
  harness::AgreementConfig cfg;
  cfg.seed = rc.seed;
  const auto p = harness::theorem_pipeline(cfg);
  report("u agrees " + std::to_string(p.agreement.agreed) + "/" + std::to_string(p.agreement.sampled),
         p.agreement.all_agree());
  std::mt19937_64 rng(rc.seed);
  bool diag = true;
  for (int i = 0; i < 20; ++i) {
    const auto c = kernel::random_program(rng, {}).code();
    const auto r = harness::diagonalize(c);
    diag = diag && std::holds_alternative<harness::DiagonalCertificate>(r) &&
           harness::replay(std::get<harness::DiagonalCertificate>(r));
  }
  report("diagonal certificates replay", diag);
  return failures == 0 ? kOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vreal: realizability checking, realizer extraction and the separating formula"};
  app.require_subcommand(1);
  RunConfig rc;
  app.add_option("--model", rc.model, "urec or total")->check(CLI::IsMember({"urec", "total"}));
  app.add_option("--fuel", rc.fuel, "fuel per program call")->check(CLI::PositiveNumber);
  app.add_option("--bound", rc.bound, "largest antecedent candidate")->check(CLI::PositiveNumber);
  app.add_option("--seed", rc.seed, "seed for sampled checks");
  app.add_flag("--json", rc.json, "machine-readable output");
  app.fallthrough();  // global flags may follow the subcommand

  auto* check = app.add_subcommand("check", "does e realize the formula under the evaluation");
  std::string formula_file, eval_file, realizer;
  check->add_option("formula", formula_file, "formula file")->required();
  check->add_option("evaluation", eval_file, "evaluation JSON file")->required();
  check->add_option("-e,--realizer", realizer, "candidate realizer (decimal or <a,b>)")->required();

  auto* prove = app.add_subcommand("prove", "validate a derivation");
  std::string prove_file;
  prove->add_option("derivation", prove_file, "derivation JSON file")->required();

  auto* ext = app.add_subcommand("extract", "compile a derivation into a realizer");
  std::string ext_file;
  std::vector<std::string> vars;
  ext->add_option("derivation", ext_file, "derivation JSON file")->required();
  ext->add_option("--vars", vars, "variable list z1,...,zm")->delimiter(',');

  auto* demo = app.add_subcommand("demo-theorem", "run the separating-formula pipeline");
  std::uint64_t slice = 32;
  std::size_t samples = 100;
  demo->add_option("--slice", slice, "evaluation slice size")->check(CLI::PositiveNumber);
  demo->add_option("--samples", samples, "sampled applications for u");

  auto* diag = app.add_subcommand("diagonalize", "refute a TOTAL candidate universal function");
  std::string candidate;
  diag->add_option("candidate", candidate, "code of a binary TOTAL program")->required();

  auto* self = app.add_subcommand("selftest", "quick end-to-end checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc_cli = app.exit(e);
    return rc_cli == 0 ? 0 : kInputError;
  }
  if (*check) return cmd_check(rc, formula_file, eval_file, realizer);
  if (*prove) return cmd_prove(rc, prove_file);
  if (*ext) return cmd_extract(rc, ext_file, vars);
  if (*demo) return cmd_demo(rc, slice, samples);
  if (*diag) return cmd_diagonalize(rc, candidate);
  if (*self) return cmd_selftest(rc);
  return kInputError;
}
