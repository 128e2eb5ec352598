#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "socv/eval.hpp"
#include "test_util.hpp"

using namespace socv;

namespace {

std::unique_ptr<LoadedModel> model(const std::string& src) { return load_model_source(src, "t.soc"); }

RunResult run(const LoadedModel& m, const std::string& scenario, std::vector<ConcreteValue> script = {}) {
  ScriptedSource src(std::move(script));
  return run_scenario(m.elab, scenario, src);
}

ConcreteValue bv(std::uint32_t w, std::uint64_t v) { return ConcreteValue::bitvec(w, BigInt(v)); }

const char* kCounter = R"(
module Counter {
  instance n: State<BitInt(4)>(0);
  mut fn bump(by: BitInt(4)) -> BitInt(4) { n.set(n.get() + by); n.get() }
}
module Main {
  instance c: Counter;
  mut fn wraps() {
    let a = c.bump(any<BitInt(4)>);
    let b = c.bump(any<BitInt(4)>);
    printf("a={a} b={b}\n");
    assert(b >= a)
  }
  mut fn guarded() {
    let x = any<BitInt(4)>;
    assume(x < 3);
    assert(x != 2)
  }
}
)";

}  // namespace

TEST(Eval, TranscriptAndPassingRun) {
  auto m = model(kCounter);
  RunResult r = run(*m, "wraps", {bv(4, 3), bv(4, 4)});
  EXPECT_EQ(r.verdict.kind, Verdict::Kind::Passed);
  EXPECT_EQ(r.transcript, "a=3 b=7\n");
}

TEST(Eval, ArithmeticWrapsAndAssertFails) {
  auto m = model(kCounter);
  RunResult r = run(*m, "wraps", {bv(4, 15), bv(4, 2)});
  EXPECT_EQ(r.verdict.kind, Verdict::Kind::AssertionFailed);
  EXPECT_EQ(r.verdict.site.line, 12u);
  EXPECT_EQ(r.transcript, "a=15 b=1\n");
}

TEST(Eval, AssumeInfeasibleStopsRun) {
  auto m = model(kCounter);
  EXPECT_EQ(run(*m, "guarded", {bv(4, 5)}).verdict.kind, Verdict::Kind::AssumeInfeasible);
  EXPECT_EQ(run(*m, "guarded", {bv(4, 2)}).verdict.kind, Verdict::Kind::AssertionFailed);
  EXPECT_EQ(run(*m, "guarded", {bv(4, 1)}).verdict.kind, Verdict::Kind::Passed);
}

TEST(Eval, UnknownScenarioThrows) {
  auto m = model(kCounter);
  EXPECT_THROW(run(*m, "nope"), std::invalid_argument);
}

TEST(Eval, ScriptedSourceSeesLeafTypes) {
  auto m = model(R"(
    type R = { a: Bool, b: BitInt(3) };
    module Main { mut fn s() { let r = any<R>; let v = any<[BitInt(2); 2]>; assert(true) } })");
  ScriptedSource src({});
  run_scenario(m->elab, "s", src);
  ASSERT_EQ(src.requested().size(), 4u);
  EXPECT_EQ(src.requested()[0]->kind, TypeExpr::Kind::Bool);
  EXPECT_EQ(src.requested()[1]->width, 3u);
  EXPECT_EQ(src.requested()[3]->width, 2u);
}

TEST(Eval, ChoiceKeysFollowCallString) {
  EXPECT_EQ(make_choice_key({}, 7), "@7");
  EXPECT_EQ(make_choice_key({3, 9}, 7), "3,9@7");
}

TEST(Eval, TraceJsonLines) {
  auto m = model(kCounter);
  RunResult r = run(*m, "wraps", {bv(4, 1), bv(4, 1)});
  std::vector<nlohmann::json> lines;
  std::istringstream in(trace_json(r));
  for (std::string l; std::getline(in, l);) lines.push_back(nlohmann::json::parse(l));
  ASSERT_GE(lines.size(), 5u);
  EXPECT_EQ(lines.front()["event"], "call");
  EXPECT_EQ(lines.front()["fn"], "Main.wraps");
  EXPECT_EQ(lines[1]["fn"], "c.bump");
  EXPECT_EQ(lines[1]["args"][0], "1");
  EXPECT_EQ(lines.back()["event"], "verdict");
  EXPECT_EQ(lines.back()["verdict"], "passed");
}

TEST(Eval, HavocAndArrays) {
  auto m = model(R"(
    module Mem { instance a: Array<BitInt(8), BitInt(8)>(1); instance flag: State<Bool>(false); }
    module Main {
      instance mem: Mem;
      mut fn s() {
        mem.a.write(4, 5);
        assert(mem.a.read(4) == 5 && mem.a.read(3) == 1);
        mem.havoc();
        assert(mem.flag.get())
      }
    })");
  SeededRandom rng(1);
  int failed = 0;
  for (int i = 0; i < 20; ++i) {
    RunResult r = run_scenario(m->elab, "s", rng);
    EXPECT_NE(r.verdict.kind, Verdict::Kind::AssumeInfeasible);
    failed += r.verdict.kind == Verdict::Kind::AssertionFailed;
    EXPECT_TRUE(r.verdict.kind == Verdict::Kind::Passed || r.verdict.site.line == 9u);
  }
  EXPECT_GT(failed, 0);
  EXPECT_LT(failed, 20);
}

TEST(Eval, ArrayCapacityIsEnforced) {
  auto m = model(R"(
    module Main {
      instance a: Array<BitInt(8), Bool>;
      mut fn s() { a.write(1, true); a.write(2, true); a.write(1, false); a.write(3, true) }
    })");
  ScriptedSource src({});
  EXPECT_NO_THROW(run_scenario(m->elab, "s", src, 3));
  EXPECT_THROW(run_scenario(m->elab, "s", src, 2), CapacityError);
}

TEST(Eval, VectorIndexOutOfBoundsFails) {
  auto m = model(R"(
    module Main { mut fn s() { let v: [BitInt(8); 3] = [1, 2, 3]; let i = any<BitInt(2)>; assert(v[i] > 0) } })");
  EXPECT_EQ(run(*m, "s", {bv(2, 2)}).verdict.kind, Verdict::Kind::Passed);
  RunResult r = run(*m, "s", {bv(2, 3)});
  EXPECT_EQ(r.verdict.kind, Verdict::Kind::AssertionFailed);
  EXPECT_NE(r.verdict.message.find("out of bounds"), std::string::npos);
}

TEST(Eval, SliceAndUpdate) {
  auto m = model(R"(
    module Main {
      mut fn s() {
        let x = 0xabcdu16;
        let v: [BitInt(4); 4] = [x[15 downto 12], x[11 downto 8], x[7 downto 4], x[3 downto 0]];
        let w = v[1.. := [0u4, 0u4]];
        printf("{v} {w} {v[2 := 1]}\n");
        assert(w[3] == 0xd)
      }
    })");
  RunResult r = run(*m, "s");
  EXPECT_EQ(r.verdict.kind, Verdict::Kind::Passed);
  EXPECT_EQ(r.transcript, "[10, 11, 12, 13] [10, 0, 0, 13] [10, 11, 1, 13]\n");
}

TEST(Eval, ExhaustiveEnumeration) {
  auto m = model(kCounter);
  ExhaustiveResult g = enumerate_choices(m->elab, "guarded", 64, 1000);
  EXPECT_TRUE(g.complete);
  EXPECT_EQ(g.leaves, 16u);
  EXPECT_EQ(g.runs, 17u);
  EXPECT_EQ(g.violations, 1u);
  ASSERT_TRUE(g.witness);
  EXPECT_EQ(g.witness->at(0).num, BigInt(2));

  ExhaustiveResult w = enumerate_choices(m->elab, "wraps", 64, 1000);
  EXPECT_EQ(w.leaves, 256u);
  // b < a exactly when a + by wraps past 15: by in [16 - a, 15] for a >= 1.
  EXPECT_EQ(w.violations, 120u);

  ExhaustiveResult budget = enumerate_choices(m->elab, "wraps", 64, 10);
  EXPECT_FALSE(budget.complete);
}
