#include <gtest/gtest.h>

#include "socv/pipeline.hpp"
#include "test_util.hpp"

using namespace socv;
using socv::testing::corpus_path;

TEST(Elaborate, ThunderXTreeShape) {
  auto m = load_model_file(corpus_path("mini_tx1_vulnerable.soc"));
  const auto& tree = m->elab.tree;
  for (const char* p : {"miniTX1", "miniTX1.cpu", "miniTX1.asc", "miniTX1.dram", "miniTX1.asc.region3.ATTR",
                        "miniTX1.dram.storage", "miniTX1.cpu.is_secure"})
    EXPECT_TRUE(tree.find(p).has_value()) << p;
  EXPECT_FALSE(tree.find("miniTX1.asc.region4").has_value());

  NodeId cpu = *tree.find("miniTX1.cpu");
  NodeId asc = *tree.find("miniTX1.asc");
  NodeId dram = *tree.find("miniTX1.dram");
  EXPECT_EQ(tree.node(cpu).callees.at("asc"), asc);
  EXPECT_EQ(tree.node(asc).callees.at("dram"), dram);
  EXPECT_EQ(tree.walk(cpu, {"asc", "region0"}), *tree.find("miniTX1.asc.region0"));
}

TEST(Elaborate, StateLayoutCoversEveryPrimitive) {
  auto m = load_model_file(corpus_path("mini_tx1_vulnerable.soc"));
  const auto& layout = m->elab.layout;
  // 4 regions x 3 registers, the CPU world flag and the DRAM storage.
  EXPECT_EQ(layout.cells.size(), 14u);
  auto storage = layout.find("miniTX1.dram.storage");
  ASSERT_TRUE(storage);
  EXPECT_EQ(layout.cells[*storage].kind, Cell::Kind::Array);
  EXPECT_EQ(layout.cells[*storage].key_type->width, 31u);
}

TEST(Elaborate, SubtreeIsPreorder) {
  auto m = load_model_file(corpus_path("mini_tx1_vulnerable.soc"));
  const auto& tree = m->elab.tree;
  auto sub = tree.subtree(*tree.find("miniTX1.asc.region1"));
  ASSERT_EQ(sub.size(), 4u);
  EXPECT_EQ(tree.node(sub[0]).path, "miniTX1.asc.region1");
  EXPECT_EQ(tree.node(sub[1]).path, "miniTX1.asc.region1.START");
  EXPECT_EQ(tree.node(sub[3]).path, "miniTX1.asc.region1.ATTR");
}

TEST(Elaborate, DumpListsWiring) {
  auto m = load_model_file(corpus_path("mini_tx1_vulnerable.soc"));
  std::string d = m->elab.tree.dump();
  EXPECT_EQ(d.rfind("Main\n", 0), 0u) << d;
  EXPECT_NE(d.find("miniTX1.cpu: CPU [asc -> miniTX1.asc]"), std::string::npos) << d;
  EXPECT_NE(d.find("miniTX1.dram.storage: Array<BitInt(31), BitInt(64)>"), std::string::npos) << d;
}

namespace {

std::string elab_error(const std::string& src) {
  try {
    load_model_source(src, "t.soc");
  } catch (const CompileError& e) {
    return e.diagnostics().front().message;
  }
  return "";
}

const char* kSink = R"(
module Sink { instance v: State<Bool>(false); mut fn hit() { v.set(true) } }
module User { callee out: Sink; mut fn go() { out.hit() } }
)";

}  // namespace

TEST(Elaborate, WiringErrors) {
  EXPECT_NE(elab_error(std::string(kSink) + "module Main { instance u: User; mut fn s() { u.go() } }")
                .find("unbound callee"),
            std::string::npos);
  EXPECT_NE(elab_error(std::string(kSink) +
                       "module Main { instance u: User; instance k: Sink; u.out -> k; u.out -> k; mut fn s() { u.go() } }"),
            "");
  EXPECT_NE(elab_error(std::string(kSink) + "module Main { instance u: User; u.out -> nowhere; mut fn s() { u.go() } }")
                .find("nonexistent"),
            std::string::npos);
  EXPECT_EQ(elab_error(std::string(kSink) + "module Main { instance u: User; instance k: Sink; u.out -> k; mut fn s() { u.go() } }"),
            "");
}

TEST(Elaborate, SharedCalleeFanIn) {
  auto m = load_model_source(std::string(kSink) + R"(
    module Main {
      instance a: User; instance b: User; instance k: Sink;
      a.out -> k; b.out -> k;
      mut fn s() { a.go(); b.go() }
    })",
                             "t.soc");
  const auto& tree = m->elab.tree;
  EXPECT_EQ(tree.node(*tree.find("a")).callees.at("out"), tree.node(*tree.find("b")).callees.at("out"));
}
