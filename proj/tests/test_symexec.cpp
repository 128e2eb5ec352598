#include <gtest/gtest.h>

#include "socv/corpus.hpp"
#include "socv/smtlib.hpp"
#include "socv/solver.hpp"
#include "test_util.hpp"

using namespace socv;
using socv::testing::corpus_path;

namespace {

std::unique_ptr<LoadedModel> model(const std::string& src) { return load_model_source(src, "t.soc"); }

SolverVerdict solve(const VerificationCondition& vc, const std::string& cmd = "z3 -smt2 {file}") {
  SolverJob job;
  job.command = cmd;
  job.smt_text = emit_smtlib(vc);
  job.timeout_seconds = 120;
  return run_solver(job, vc);
}

}  // namespace

TEST(SymExec, StraightLineFoldsToConstants) {
  auto m = model("module Main { mut fn s() { let x = 3u8; assert(x + 1 == 4) } }");
  VerificationCondition vc = sym_exec(m->elab, "s");
  EXPECT_TRUE(vc.registry.empty());
  EXPECT_TRUE(vc.terms->is_false(vc.query));
}

TEST(SymExec, FailingConstantAssertIsTriviallySat) {
  auto m = model("module Main { mut fn s() { assert(1u8 == 2) } }");
  VerificationCondition vc = sym_exec(m->elab, "s");
  EXPECT_TRUE(vc.terms->is_true(vc.query));
}

TEST(SymExec, ChoiceKeysMatchConcreteRun) {
  auto m = model(R"(
    module Leaf { mut fn pick() -> BitInt(4) { any<BitInt(4)> } }
    module Main {
      instance l: Leaf;
      mut fn s() {
        let c = any<Bool>;
        let v = if c { l.pick() } else { l.pick() + 1 };
        assert(v != 5)
      }
    })");
  VerificationCondition vc = sym_exec(m->elab, "s");
  ASSERT_EQ(vc.registry.size(), 3u);
  // Both calls to `pick` have distinct call strings.
  EXPECT_NE(vc.registry[1].key, vc.registry[2].key);

  std::map<ChoiceKey, ConcreteValue> model_values{{vc.registry[0].key, ConcreteValue::boolean(false)},
                                                  {vc.registry[2].key, ConcreteValue::bitvec(4, BigInt(4))}};
  ModelOracle oracle(model_values);
  RunResult concrete = run_scenario(m->elab, "s", oracle);
  RunResult replayed = replay(m->elab, "s", model_values);
  EXPECT_EQ(concrete.verdict.kind, Verdict::Kind::AssertionFailed);
  EXPECT_EQ(replayed.verdict.kind, Verdict::Kind::AssertionFailed);
}

TEST(SymExec, AssumeAfterFailedAssertDoesNotMask) {
  // A concrete run stops at the first failing assert, so the later
  // contradictory assume must not make the VC unsatisfiable.
  if (!socv::testing::z3_available()) GTEST_SKIP() << "z3 not installed";
  auto m = model("module Main { mut fn s() { let x = any<BitInt(4)>; assert(x != 3); assume(x != 3) } }");
  SolverVerdict v = solve(sym_exec(m->elab, "s"));
  ASSERT_EQ(v.kind, SolverVerdict::Kind::Sat);
  EXPECT_EQ(replay(m->elab, "s", v.model).verdict.kind, Verdict::Kind::AssertionFailed);
}

TEST(SymExec, SymbolicIndexAddsBoundsObligation) {
  auto m = model(R"(
    module Main { mut fn s() { let v: [BitInt(8); 3] = [1, 2, 3]; let i = any<BitInt(2)>; assert(v[i] != 0) } })");
  VerificationCondition vc = sym_exec(m->elab, "s");
  ASSERT_EQ(vc.obligations.size(), 2u);
  EXPECT_NE(vc.obligations[0].message.find("out of bounds"), std::string::npos);
  if (!socv::testing::z3_available()) GTEST_SKIP() << "z3 not installed";
  SolverVerdict v = solve(vc);
  ASSERT_EQ(v.kind, SolverVerdict::Kind::Sat);
  EXPECT_EQ(v.model.at(vc.registry[0].key).num, BigInt(3));
}

TEST(SymExec, PrintfHoleObligationsAreRecorded) {
  auto m = model(R"(
    module Main { mut fn s() { let v: [BitInt(8); 3] = [1, 2, 3]; let i = any<BitInt(2)>; printf("{v[i]}\n"); assert(true) } })");
  VerificationCondition vc = sym_exec(m->elab, "s");
  int bounds = 0;
  for (const auto& ob : vc.obligations) bounds += ob.message.find("out of bounds") != std::string::npos;
  EXPECT_EQ(bounds, 1);
}

TEST(SymExec, ReplayOfZeroModelOnFixedCorpusPasses) {
  auto m = load_model_file(corpus_path("mini_tx1_fixed.soc"));
  RunResult r = replay(m->elab, "test_secure_area_unchanged", {});
  EXPECT_EQ(r.verdict.kind, Verdict::Kind::Passed);
  EXPECT_NE(r.transcript.find("ASC: Setting region0.END to 0xff_ffffu64"), std::string::npos);
}

TEST(SymExec, CorpusVerdictsWithZ3) {
  if (!socv::testing::z3_available()) GTEST_SKIP() << "z3 not installed";
  for (const auto& e : corpus_manifest()) {
    auto m = load_model_file((corpus_dir() / e.file).string());
    VerificationCondition vc = sym_exec(m->elab, e.scenario);
    SolverVerdict v = solve(vc);
    ASSERT_NE(v.kind, SolverVerdict::Kind::Error) << e.file << " " << e.scenario << ": " << v.reason;
    EXPECT_EQ(v.kind, e.expect_exploit ? SolverVerdict::Kind::Sat : SolverVerdict::Kind::Unsat)
        << e.file << " " << e.scenario;
    if (v.kind != SolverVerdict::Kind::Sat) continue;
    RunResult r = replay(m->elab, e.scenario, v.model);
    EXPECT_EQ(r.verdict.kind, Verdict::Kind::AssertionFailed) << e.file << " " << e.scenario;
    for (const auto& frag : e.fragments)
      EXPECT_NE(r.transcript.find(frag), std::string::npos) << e.scenario << " lacks `" << frag << "`";
  }
}

TEST(SymExec, SecondSolverAgreesOnCorpus) {
  if (!socv::testing::cvc5_available()) GTEST_SKIP() << "cvc5 bindings not installed";
  std::string cmd = std::string("python3 '") + SOCV_CVC5_WRAPPER + "' {file}";
  for (const auto& e : corpus_manifest()) {
    auto m = load_model_file((corpus_dir() / e.file).string());
    VerificationCondition vc = sym_exec(m->elab, e.scenario);
    SolverVerdict v = solve(vc, cmd);
    ASSERT_NE(v.kind, SolverVerdict::Kind::Error) << e.file << " " << e.scenario << ": " << v.reason;
    EXPECT_EQ(v.kind, e.expect_exploit ? SolverVerdict::Kind::Sat : SolverVerdict::Kind::Unsat)
        << e.file << " " << e.scenario;
    if (v.kind == SolverVerdict::Kind::Sat)
      EXPECT_EQ(replay(m->elab, e.scenario, v.model).verdict.kind, Verdict::Kind::AssertionFailed);
  }
}
