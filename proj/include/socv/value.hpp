#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "socv/ast.hpp"

namespace socv {

class SparseArray;

// Runtime value. `type` is the resolved static type and drives formatting;
// `num` holds the BitVec/Int value or the enum variant index.
struct ConcreteValue {
  enum class Kind { Unit, Bool, BitVec, Int, Enum, Record, Vector, Array };

  Kind kind = Kind::Unit;
  TypePtr type;
  bool b = false;
  BigInt num;
  std::vector<ConcreteValue> elems;             // record fields (declaration order) / vector
  std::shared_ptr<const SparseArray> array;     // copy-on-write snapshot

  static ConcreteValue unit();
  static ConcreteValue boolean(bool v);
  // Reduces `v` modulo 2^width.
  static ConcreteValue bitvec(std::uint32_t width, const BigInt& v);
  static ConcreteValue integer(const BigInt& v);
  static ConcreteValue enumeration(TypePtr type, std::uint32_t index);
  static ConcreteValue record(TypePtr type, std::vector<ConcreteValue> fields);
  static ConcreteValue vector(TypePtr type, std::vector<ConcreteValue> elems);
  static ConcreteValue of_array(TypePtr type, std::shared_ptr<const SparseArray> a);

  std::uint32_t width() const { return type ? type->width : 0; }
};

// Zero of a type: false, 0, first enum variant, zero-filled aggregates, an
// empty array whose default is zero.
ConcreteValue zero_value(const TypePtr& t, std::size_t array_capacity = 64);

bool values_equal(const ConcreteValue& a, const ConcreteValue& b);

// True when `v` structurally inhabits `t` (widths, lengths, field counts).
bool value_has_type(const ConcreteValue& v, const TypeExpr& t);

// Raised when an array would need more than its capacity of distinct keys.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Array as a default value plus a bounded list of modifications, one per
// distinct key (rewrites of a key replace its entry in place).
class SparseArray {
 public:
  SparseArray(std::uint32_t key_width, ConcreteValue default_value, std::size_t capacity);

  std::uint32_t key_width() const { return key_width_; }
  std::size_t capacity() const { return capacity_; }
  const ConcreteValue& default_value() const { return default_; }
  const std::vector<std::pair<BigInt, ConcreteValue>>& entries() const { return entries_; }

  const ConcreteValue& read(const BigInt& key) const;
  // Throws CapacityError when a new key does not fit.
  SparseArray write(const BigInt& key, ConcreteValue v) const;

 private:
  std::uint32_t key_width_;
  ConcreteValue default_;
  std::size_t capacity_;
  std::vector<std::pair<BigInt, ConcreteValue>> entries_;
};

const ConcreteValue& sparse_read(const ConcreteValue& array, const BigInt& key);
ConcreteValue sparse_write(const ConcreteValue& array, const BigInt& key, ConcreteValue v);

// printf rendering: `true`, `3`, `0x8000_0000_0070u48`, `{ a: 1, b: false }`.
std::string format_value(const ConcreteValue& v);

// Hex with `_` every four digits and the width suffix, e.g. `0x48ad_c33cu32`.
std::string format_hex(const BigInt& v, std::uint32_t width);

}  // namespace socv
