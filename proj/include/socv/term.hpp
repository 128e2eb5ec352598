#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "socv/ast.hpp"

namespace socv {

using TermId = std::uint32_t;
inline constexpr TermId kNoTerm = ~TermId{0};

struct Sort {
  enum class Kind : std::uint8_t { Bool, BitVec, Int, Array };
  Kind kind = Kind::Bool;
  std::uint32_t width = 0;      // BitVec
  std::uint32_t key_width = 0;  // Array (keys are always bitvectors)
  Kind elem_kind = Kind::Bool;  // Array
  std::uint32_t elem_width = 0; // Array with BitVec elements

  static Sort boolean() { return {}; }
  static Sort bv(std::uint32_t w) { return {Kind::BitVec, w, 0, Kind::Bool, 0}; }
  static Sort integer() { return {Kind::Int, 0, 0, Kind::Bool, 0}; }
  static Sort array(std::uint32_t key_width, const Sort& elem) {
    return {Kind::Array, 0, key_width, elem.kind, elem.width};
  }
  Sort elem() const { return {elem_kind, elem_width, 0, Kind::Bool, 0}; }

  bool operator==(const Sort& o) const {
    return kind == o.kind && width == o.width && key_width == o.key_width &&
           elem_kind == o.elem_kind && elem_width == o.elem_width;
  }
  bool operator!=(const Sort& o) const { return !(*this == o); }
};

// SMT-LIB sort syntax.
std::string to_string(const Sort& s);

// Sort of a scalar or array-snapshot type (enums become bitvectors).
Sort sort_of(const TypeExpr& t);

enum class Op : std::uint8_t {
  Const,  // Bool/BitVec/Int literal in `value`
  Var,    // choice variable number `p0`
  Not,
  And,
  Or,
  Ite,
  Eq,
  BvNot,
  BvNeg,
  BvAdd,
  BvSub,
  BvMul,
  BvUlt,
  BvUle,
  IntNeg,
  IntAdd,
  IntSub,
  IntMul,
  IntLt,
  IntLe,
  Extract,    // [p0 downto p1]
  ZeroExt,    // by p0 bits
  Bv2Int,
  Int2Bv,     // to width of the sort
  Select,
  Store,
  ConstArray,
};

struct TermNode {
  Op op;
  Sort sort;
  std::vector<TermId> args;
  BigInt value;
  std::uint32_t p0 = 0;
  std::uint32_t p1 = 0;
};

// Hash-consed term DAG. Every constructor folds constants, so a term built
// only from constants is itself a constant.
class TermStore {
 public:
  const TermNode& node(TermId t) const { return nodes_.at(t); }
  std::size_t size() const { return nodes_.size(); }
  const Sort& sort(TermId t) const { return nodes_.at(t).sort; }

  bool is_const(TermId t) const { return node(t).op == Op::Const; }
  bool is_true(TermId t) const { return is_const(t) && sort(t).kind == Sort::Kind::Bool && node(t).value == 1; }
  bool is_false(TermId t) const { return is_const(t) && sort(t).kind == Sort::Kind::Bool && node(t).value == 0; }
  const BigInt& value(TermId t) const { return node(t).value; }

  TermId tru() { return boolean(true); }
  TermId fls() { return boolean(false); }
  TermId boolean(bool b);
  TermId bv(std::uint32_t width, const BigInt& v);
  TermId integer(const BigInt& v);
  TermId var(std::uint32_t index, const Sort& s);

  TermId mk_not(TermId a);
  TermId mk_and(std::vector<TermId> xs);
  TermId mk_or(std::vector<TermId> xs);
  TermId mk_and(TermId a, TermId b) { return mk_and(std::vector<TermId>{a, b}); }
  TermId mk_or(TermId a, TermId b) { return mk_or(std::vector<TermId>{a, b}); }
  TermId mk_implies(TermId a, TermId b) { return mk_or(mk_not(a), b); }
  TermId mk_ite(TermId c, TermId a, TermId b);
  TermId mk_eq(TermId a, TermId b);

  TermId bv_not(TermId a);
  TermId bv_neg(TermId a);
  TermId bv_add(TermId a, TermId b);
  TermId bv_sub(TermId a, TermId b);
  TermId bv_mul(TermId a, TermId b);
  TermId bv_ult(TermId a, TermId b);
  TermId bv_ule(TermId a, TermId b);
  TermId int_neg(TermId a);
  TermId int_add(TermId a, TermId b);
  TermId int_sub(TermId a, TermId b);
  TermId int_mul(TermId a, TermId b);
  TermId int_lt(TermId a, TermId b);
  TermId int_le(TermId a, TermId b);
  TermId extract(TermId a, std::uint32_t hi, std::uint32_t lo);
  TermId zero_ext(TermId a, std::uint32_t by);
  TermId bv2int(TermId a);
  TermId int2bv(TermId a, std::uint32_t width);

  TermId select(TermId arr, TermId key);
  TermId store(TermId arr, TermId key, TermId val);
  TermId const_array(std::uint32_t key_width, TermId dflt);

  // True when the term mentions an Int-sorted subterm.
  bool uses_int(TermId root) const;

 private:
  TermId intern(TermNode n);
  std::vector<TermNode> nodes_;
  std::unordered_map<std::string, TermId> table_;
};

}  // namespace socv
