#include "socv/value.hpp"

#include <fmt/format.h>

namespace socv {

using Kind = ConcreteValue::Kind;

ConcreteValue ConcreteValue::unit() {
  ConcreteValue v;
  v.type = TypeExpr::unit();
  return v;
}

ConcreteValue ConcreteValue::boolean(bool b) {
  ConcreteValue v;
  v.kind = Kind::Bool;
  v.type = TypeExpr::boolean();
  v.b = b;
  return v;
}

ConcreteValue ConcreteValue::bitvec(std::uint32_t width, const BigInt& x) {
  ConcreteValue v;
  v.kind = Kind::BitVec;
  v.type = TypeExpr::bits(width);
  BigInt mod = BigInt(1) << width;
  v.num = x % mod;
  if (v.num < 0) v.num += mod;
  return v;
}

ConcreteValue ConcreteValue::integer(const BigInt& x) {
  ConcreteValue v;
  v.kind = Kind::Int;
  v.type = TypeExpr::integer();
  v.num = x;
  return v;
}

ConcreteValue ConcreteValue::enumeration(TypePtr type, std::uint32_t index) {
  ConcreteValue v;
  v.kind = Kind::Enum;
  v.type = std::move(type);
  v.num = index;
  return v;
}

ConcreteValue ConcreteValue::record(TypePtr type, std::vector<ConcreteValue> fields) {
  ConcreteValue v;
  v.kind = Kind::Record;
  v.type = std::move(type);
  v.elems = std::move(fields);
  return v;
}

ConcreteValue ConcreteValue::vector(TypePtr type, std::vector<ConcreteValue> elems) {
  ConcreteValue v;
  v.kind = Kind::Vector;
  v.type = std::move(type);
  v.elems = std::move(elems);
  return v;
}

ConcreteValue ConcreteValue::of_array(TypePtr type, std::shared_ptr<const SparseArray> a) {
  ConcreteValue v;
  v.kind = Kind::Array;
  v.type = std::move(type);
  v.array = std::move(a);
  return v;
}

ConcreteValue zero_value(const TypePtr& t, std::size_t array_capacity) {
  switch (t->kind) {
    case TypeExpr::Kind::Unit:
      return ConcreteValue::unit();
    case TypeExpr::Kind::Bool:
      return ConcreteValue::boolean(false);
    case TypeExpr::Kind::BitInt:
      return ConcreteValue::bitvec(t->width, 0);
    case TypeExpr::Kind::Int:
      return ConcreteValue::integer(0);
    case TypeExpr::Kind::Enum:
      return ConcreteValue::enumeration(t, 0);
    case TypeExpr::Kind::Record: {
      std::vector<ConcreteValue> fs;
      for (const auto& f : t->fields) fs.push_back(zero_value(f.type, array_capacity));
      return ConcreteValue::record(t, std::move(fs));
    }
    case TypeExpr::Kind::Vector: {
      std::vector<ConcreteValue> es(t->length, zero_value(t->elem, array_capacity));
      return ConcreteValue::vector(t, std::move(es));
    }
    case TypeExpr::Kind::ArrayOf:
      return ConcreteValue::of_array(
          t, std::make_shared<SparseArray>(t->key->width, zero_value(t->elem), array_capacity));
    case TypeExpr::Kind::Alias:
      break;
  }
  throw std::logic_error("zero_value of unresolved alias " + t->name);
}

bool values_equal(const ConcreteValue& a, const ConcreteValue& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::Unit:
      return true;
    case Kind::Bool:
      return a.b == b.b;
    case Kind::BitVec:
    case Kind::Int:
    case Kind::Enum:
      return a.num == b.num;
    case Kind::Record:
    case Kind::Vector:
      if (a.elems.size() != b.elems.size()) return false;
      for (std::size_t i = 0; i < a.elems.size(); ++i)
        if (!values_equal(a.elems[i], b.elems[i])) return false;
      return true;
    case Kind::Array:
      break;
  }
  throw std::logic_error("equality on arrays");
}

bool value_has_type(const ConcreteValue& v, const TypeExpr& t) {
  switch (t.kind) {
    case TypeExpr::Kind::Unit:
      return v.kind == Kind::Unit;
    case TypeExpr::Kind::Bool:
      return v.kind == Kind::Bool;
    case TypeExpr::Kind::BitInt:
      return v.kind == Kind::BitVec && v.width() == t.width && v.num >= 0 &&
             v.num < (BigInt(1) << t.width);
    case TypeExpr::Kind::Int:
      return v.kind == Kind::Int;
    case TypeExpr::Kind::Enum:
      return v.kind == Kind::Enum && v.type && v.type->name == t.name && v.num >= 0 &&
             v.num < t.variants.size();
    case TypeExpr::Kind::Record:
      if (v.kind != Kind::Record || v.elems.size() != t.fields.size()) return false;
      for (std::size_t i = 0; i < t.fields.size(); ++i)
        if (!value_has_type(v.elems[i], *t.fields[i].type)) return false;
      return true;
    case TypeExpr::Kind::Vector:
      if (v.kind != Kind::Vector || v.elems.size() != t.length) return false;
      for (const auto& e : v.elems)
        if (!value_has_type(e, *t.elem)) return false;
      return true;
    case TypeExpr::Kind::ArrayOf:
      return v.kind == Kind::Array && v.array && v.array->key_width() == t.key->width &&
             value_has_type(v.array->default_value(), *t.elem);
    case TypeExpr::Kind::Alias:
      break;
  }
  return false;
}

SparseArray::SparseArray(std::uint32_t key_width, ConcreteValue default_value, std::size_t capacity)
    : key_width_(key_width), default_(std::move(default_value)), capacity_(capacity) {}

const ConcreteValue& SparseArray::read(const BigInt& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  return default_;
}

SparseArray SparseArray::write(const BigInt& key, ConcreteValue v) const {
  SparseArray out = *this;
  for (auto& [k, old] : out.entries_) {
    if (k == key) {
      old = std::move(v);
      return out;
    }
  }
  if (out.entries_.size() >= capacity_)
    throw CapacityError(fmt::format("array capacity of {} modifications exceeded", capacity_));
  out.entries_.emplace_back(key, std::move(v));
  return out;
}

const ConcreteValue& sparse_read(const ConcreteValue& array, const BigInt& key) {
  return array.array->read(key);
}

ConcreteValue sparse_write(const ConcreteValue& array, const BigInt& key, ConcreteValue v) {
  return ConcreteValue::of_array(array.type,
                                 std::make_shared<SparseArray>(array.array->write(key, std::move(v))));
}

std::string format_hex(const BigInt& v, std::uint32_t width) {
  std::string digits;
  BigInt x = v;
  if (x == 0) digits = "0";
  while (x > 0) {
    int d = static_cast<int>(x & 0xf);
    digits.insert(digits.begin(), "0123456789abcdef"[d]);
    x >>= 4;
  }
  std::string grouped;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i && (digits.size() - i) % 4 == 0) grouped += '_';
    grouped += digits[i];
  }
  return fmt::format("0x{}u{}", grouped, width);
}

std::string format_value(const ConcreteValue& v) {
  switch (v.kind) {
    case Kind::Unit:
      return "()";
    case Kind::Bool:
      return v.b ? "true" : "false";
    case Kind::BitVec:
      // Small numbers read better in decimal, so a 64-bit flag prints as `1`.
      if (v.width() <= 8 || v.num < 10) return v.num.str();
      return format_hex(v.num, v.width());
    case Kind::Int:
      return v.num.str();
    case Kind::Enum: {
      auto idx = static_cast<std::size_t>(v.num);
      return v.type->name + "::" + v.type->variants.at(idx);
    }
    case Kind::Record: {
      if (v.elems.empty()) return "{}";
      std::string out = "{ ";
      for (std::size_t i = 0; i < v.elems.size(); ++i) {
        if (i) out += ", ";
        out += v.type->fields[i].name + ": " + format_value(v.elems[i]);
      }
      return out + " }";
    }
    case Kind::Vector: {
      std::string out = "[";
      for (std::size_t i = 0; i < v.elems.size(); ++i) {
        if (i) out += ", ";
        out += format_value(v.elems[i]);
      }
      return out + "]";
    }
    case Kind::Array: {
      std::string out = "[";
      for (const auto& [k, x] : v.array->entries())
        out += format_value(ConcreteValue::bitvec(v.array->key_width(), k)) + " => " +
               format_value(x) + ", ";
      return out + "_ => " + format_value(v.array->default_value()) + "]";
    }
  }
  return "?";
}

}  // namespace socv
