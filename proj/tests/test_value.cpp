#include <gtest/gtest.h>

#include <map>
#include <random>

#include "socv/value.hpp"

using namespace socv;

namespace {

ConcreteValue bv(std::uint32_t w, std::uint64_t v) { return ConcreteValue::bitvec(w, BigInt(v)); }

ConcreteValue byte_array(std::size_t cap) {
  auto t = TypeExpr::array_of(TypeExpr::bits(8), TypeExpr::bits(8));
  return zero_value(t, cap);
}

}  // namespace

TEST(Value, BitvecReducesModulo) {
  EXPECT_EQ(bv(8, 0x1ff).num, BigInt(0xff));
  EXPECT_EQ(ConcreteValue::bitvec(4, BigInt(-1)).num, BigInt(15));
}

TEST(Value, FormatHexGroupsDigits) {
  EXPECT_EQ(format_hex(BigInt(0x800000000070ULL), 48), "0x8000_0000_0070u48");
  EXPECT_EQ(format_hex(BigInt(0xffffff), 64), "0xff_ffffu64");
  EXPECT_EQ(format_hex(BigInt(0), 4), "0x0u4");
}

TEST(Value, FormatScalars) {
  EXPECT_EQ(format_value(bv(64, 1)), "1");
  EXPECT_EQ(format_value(bv(8, 200)), "200");
  EXPECT_EQ(format_value(bv(48, 0x17)), "0x17u48");
  EXPECT_EQ(format_value(ConcreteValue::boolean(true)), "true");
  EXPECT_EQ(format_value(ConcreteValue::integer(BigInt(-12))), "-12");
  auto mode = TypeExpr::enumeration("Mode", {"Secure", "NonSecure"});
  EXPECT_EQ(format_value(ConcreteValue::enumeration(mode, 1)), "Mode::NonSecure");
}

TEST(Value, FormatAggregates) {
  auto rt = TypeExpr::record({{"is_write", TypeExpr::boolean()}, {"address", TypeExpr::bits(48)}});
  auto r = ConcreteValue::record(rt, {ConcreteValue::boolean(true), bv(48, 0x800000000070ULL)});
  EXPECT_EQ(format_value(r), "{ is_write: true, address: 0x8000_0000_0070u48 }");
  auto vt = TypeExpr::vector(TypeExpr::bits(8), 3);
  EXPECT_EQ(format_value(ConcreteValue::vector(vt, {bv(8, 1), bv(8, 2), bv(8, 3)})), "[1, 2, 3]");
  auto a = sparse_write(byte_array(4), BigInt(3), bv(8, 9));
  EXPECT_EQ(format_value(a), "[3 => 9, _ => 0]");
}

TEST(Value, ZeroValues) {
  auto rt = TypeExpr::record({{"a", TypeExpr::boolean()}, {"b", TypeExpr::vector(TypeExpr::bits(4), 2)}});
  auto z = zero_value(rt);
  EXPECT_TRUE(value_has_type(z, *rt));
  EXPECT_EQ(format_value(z), "{ a: false, b: [0, 0] }");
}

TEST(Value, StructuralEquality) {
  auto vt = TypeExpr::vector(TypeExpr::bits(8), 2);
  EXPECT_TRUE(values_equal(ConcreteValue::vector(vt, {bv(8, 1), bv(8, 2)}), ConcreteValue::vector(vt, {bv(8, 1), bv(8, 2)})));
  EXPECT_FALSE(values_equal(ConcreteValue::vector(vt, {bv(8, 1), bv(8, 2)}), ConcreteValue::vector(vt, {bv(8, 1), bv(8, 3)})));
  EXPECT_FALSE(value_has_type(bv(8, 1), *TypeExpr::bits(9)));
}

TEST(SparseArray, DuplicateKeysCompactInPlace) {
  auto a = byte_array(2);
  a = sparse_write(a, BigInt(1), bv(8, 10));
  a = sparse_write(a, BigInt(2), bv(8, 20));
  a = sparse_write(a, BigInt(1), bv(8, 11));
  EXPECT_EQ(a.array->entries().size(), 2u);
  EXPECT_EQ(sparse_read(a, BigInt(1)).num, BigInt(11));
  EXPECT_THROW(sparse_write(a, BigInt(3), bv(8, 30)), CapacityError);
}

TEST(SparseArray, SnapshotsAreImmutable) {
  auto a = sparse_write(byte_array(8), BigInt(5), bv(8, 1));
  auto b = sparse_write(a, BigInt(5), bv(8, 2));
  EXPECT_EQ(sparse_read(a, BigInt(5)).num, BigInt(1));
  EXPECT_EQ(sparse_read(b, BigInt(5)).num, BigInt(2));
  EXPECT_EQ(sparse_read(b, BigInt(6)).num, BigInt(0));
}

TEST(SparseArray, AgreesWithMapOnShortRandomRuns) {
  std::mt19937 rng(7);
  for (int run = 0; run < 200; ++run) {
    auto a = byte_array(16);
    std::map<int, int> oracle;
    for (int step = 0; step < 40; ++step) {
      int k = static_cast<int>(rng() % 24), v = static_cast<int>(rng() % 256);
      bool fits = oracle.count(k) || oracle.size() < 16;
      if (fits) {
        a = sparse_write(a, BigInt(k), bv(8, v));
        oracle[k] = v;
      } else {
        EXPECT_THROW(sparse_write(a, BigInt(k), bv(8, v)), CapacityError);
      }
      int q = static_cast<int>(rng() % 24);
      int want = oracle.count(q) ? oracle[q] : 0;
      ASSERT_EQ(sparse_read(a, BigInt(q)).num, BigInt(want));
    }
  }
}
