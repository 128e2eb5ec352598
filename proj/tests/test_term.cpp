#include <gtest/gtest.h>

#include "socv/smtlib.hpp"
#include "socv/term.hpp"

using namespace socv;

TEST(Terms, HashConsing) {
  TermStore ts;
  TermId x = ts.var(0, Sort::bv(8));
  TermId a = ts.bv_add(x, ts.bv(8, BigInt(1)));
  TermId b = ts.bv_add(x, ts.bv(8, BigInt(1)));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, ts.bv_add(x, ts.bv(8, BigInt(2))));
}

TEST(Terms, ConstantFolding) {
  TermStore ts;
  TermId s = ts.bv_add(ts.bv(8, BigInt(200)), ts.bv(8, BigInt(100)));
  ASSERT_TRUE(ts.is_const(s));
  EXPECT_EQ(ts.value(s), BigInt(44));
  EXPECT_TRUE(ts.is_true(ts.bv_ult(ts.bv(8, BigInt(3)), ts.bv(8, BigInt(4)))));
  TermId e = ts.extract(ts.bv(16, BigInt(0xabcd)), 11, 4);
  EXPECT_EQ(ts.value(e), BigInt(0xbc));
  EXPECT_EQ(ts.sort(e), Sort::bv(8));
  EXPECT_EQ(ts.value(ts.int2bv(ts.integer(BigInt(-1)), 4)), BigInt(15));
  EXPECT_EQ(ts.value(ts.bv2int(ts.bv(4, BigInt(9)))), BigInt(9));
}

TEST(Terms, BooleanSimplification) {
  TermStore ts;
  TermId p = ts.var(0, Sort::boolean());
  TermId q = ts.var(1, Sort::boolean());
  EXPECT_EQ(ts.mk_and(p, ts.tru()), p);
  EXPECT_TRUE(ts.is_false(ts.mk_and(p, ts.fls())));
  EXPECT_TRUE(ts.is_false(ts.mk_and(p, ts.mk_not(p))));
  EXPECT_TRUE(ts.is_true(ts.mk_or(q, ts.mk_not(q))));
  EXPECT_EQ(ts.mk_not(ts.mk_not(p)), p);
  EXPECT_EQ(ts.mk_ite(ts.tru(), p, q), p);
  EXPECT_EQ(ts.mk_ite(p, q, q), q);
  // Nested conjunctions flatten.
  EXPECT_EQ(ts.mk_and(ts.mk_and(p, q), p), ts.mk_and(p, q));
}

TEST(Terms, SelectThroughStores) {
  TermStore ts;
  TermId base = ts.var(0, Sort::array(4, Sort::bv(8)));
  TermId k = ts.var(1, Sort::bv(4));
  TermId a = ts.store(base, ts.bv(4, BigInt(1)), ts.bv(8, BigInt(10)));
  a = ts.store(a, ts.bv(4, BigInt(2)), ts.bv(8, BigInt(20)));
  EXPECT_EQ(ts.value(ts.select(a, ts.bv(4, BigInt(1)))), BigInt(10));
  EXPECT_EQ(ts.select(a, ts.bv(4, BigInt(3))), ts.select(base, ts.bv(4, BigInt(3))));
  EXPECT_FALSE(ts.is_const(ts.select(a, k)));
  TermId c = ts.const_array(4, ts.bv(8, BigInt(7)));
  EXPECT_EQ(ts.value(ts.select(c, ts.bv(4, BigInt(9)))), BigInt(7));
  // A store to the same constant key replaces the earlier one.
  TermId twice = ts.store(ts.store(c, ts.bv(4, BigInt(1)), ts.bv(8, BigInt(1))), ts.bv(4, BigInt(1)), ts.bv(8, BigInt(2)));
  EXPECT_EQ(twice, ts.store(c, ts.bv(4, BigInt(1)), ts.bv(8, BigInt(2))));
}

TEST(Terms, ExtractOfZeroExtend) {
  TermStore ts;
  TermId x = ts.var(0, Sort::bv(8));
  TermId z = ts.zero_ext(x, 8);
  EXPECT_EQ(ts.extract(z, 7, 0), x);
  EXPECT_TRUE(ts.is_const(ts.extract(z, 15, 8)));
  EXPECT_EQ(ts.extract(ts.extract(z, 11, 2), 3, 0), ts.extract(x, 5, 2));
}

TEST(Terms, SmtRendering) {
  TermStore ts;
  TermId x = ts.var(0, Sort::bv(8));
  TermId t = ts.bv_ule(ts.zero_ext(ts.extract(x, 3, 0), 4), ts.bv(8, BigInt(5)));
  EXPECT_EQ(term_to_smtlib(ts, t), "(bvule ((_ zero_extend 4) ((_ extract 3 0) c0)) #x05)");
  EXPECT_EQ(to_string(Sort::array(31, Sort::bv(64))), "(Array (_ BitVec 31) (_ BitVec 64))");
  EXPECT_EQ(term_to_smtlib(ts, ts.bv(3, BigInt(5))), "#b101");
  EXPECT_EQ(term_to_smtlib(ts, ts.integer(BigInt(-4))), "(- 4)");
}

TEST(Terms, UsesInt) {
  TermStore ts;
  TermId x = ts.var(0, Sort::bv(8));
  EXPECT_FALSE(ts.uses_int(ts.bv_ult(x, ts.bv(8, BigInt(1)))));
  EXPECT_TRUE(ts.uses_int(ts.mk_eq(ts.int2bv(ts.int_add(ts.bv2int(x), ts.integer(BigInt(1))), 8), x)));
}
