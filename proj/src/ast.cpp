#include "socv/ast.hpp"

#include <fmt/format.h>

namespace socv {

namespace {
TypePtr make(TypeExpr t) { return std::make_shared<const TypeExpr>(std::move(t)); }
}  // namespace

TypePtr TypeExpr::unit() {
  static const TypePtr t = make(TypeExpr{});
  return t;
}

TypePtr TypeExpr::boolean() {
  static const TypePtr t = [] {
    TypeExpr x;
    x.kind = Kind::Bool;
    return make(std::move(x));
  }();
  return t;
}

TypePtr TypeExpr::integer() {
  static const TypePtr t = [] {
    TypeExpr x;
    x.kind = Kind::Int;
    return make(std::move(x));
  }();
  return t;
}

TypePtr TypeExpr::bits(std::uint32_t width) {
  TypeExpr x;
  x.kind = Kind::BitInt;
  x.width = width;
  return make(std::move(x));
}

TypePtr TypeExpr::vector(TypePtr elem, std::uint64_t length) {
  TypeExpr x;
  x.kind = Kind::Vector;
  x.elem = std::move(elem);
  x.length = length;
  return make(std::move(x));
}

TypePtr TypeExpr::record(std::vector<RecordField> fields) {
  TypeExpr x;
  x.kind = Kind::Record;
  x.fields = std::move(fields);
  return make(std::move(x));
}

TypePtr TypeExpr::alias(std::string name) {
  TypeExpr x;
  x.kind = Kind::Alias;
  x.name = std::move(name);
  return make(std::move(x));
}

TypePtr TypeExpr::array_of(TypePtr key, TypePtr value) {
  TypeExpr x;
  x.kind = Kind::ArrayOf;
  x.key = std::move(key);
  x.elem = std::move(value);
  return make(std::move(x));
}

TypePtr TypeExpr::enumeration(std::string name, std::vector<std::string> variants) {
  TypeExpr x;
  x.kind = Kind::Enum;
  x.name = std::move(name);
  x.variants = std::move(variants);
  return make(std::move(x));
}

int TypeExpr::field_index(const std::string& field) const {
  for (std::size_t i = 0; i < fields.size(); ++i)
    if (fields[i].name == field) return static_cast<int>(i);
  return -1;
}

bool same_type(const TypeExpr& a, const TypeExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TypeExpr::Kind::Unit:
    case TypeExpr::Kind::Bool:
    case TypeExpr::Kind::Int:
      return true;
    case TypeExpr::Kind::BitInt:
      return a.width == b.width;
    case TypeExpr::Kind::Enum:
    case TypeExpr::Kind::Alias:
      return a.name == b.name;
    case TypeExpr::Kind::Vector:
      return a.length == b.length && same_type(*a.elem, *b.elem);
    case TypeExpr::Kind::ArrayOf:
      return same_type(*a.key, *b.key) && same_type(*a.elem, *b.elem);
    case TypeExpr::Kind::Record:
      if (a.fields.size() != b.fields.size()) return false;
      for (std::size_t i = 0; i < a.fields.size(); ++i) {
        if (a.fields[i].name != b.fields[i].name) return false;
        if (!same_type(*a.fields[i].type, *b.fields[i].type)) return false;
      }
      return true;
  }
  return false;
}

bool supports_equality(const TypeExpr& t) {
  if (t.is_scalar()) return true;
  if (t.kind == TypeExpr::Kind::Record) {
    for (const auto& f : t.fields)
      if (!supports_equality(*f.type)) return false;
    return true;
  }
  return false;
}

std::string to_string(const TypeExpr& t) {
  switch (t.kind) {
    case TypeExpr::Kind::Unit:
      return "()";
    case TypeExpr::Kind::Bool:
      return "Bool";
    case TypeExpr::Kind::Int:
      return "Int";
    case TypeExpr::Kind::BitInt:
      return fmt::format("BitInt({})", t.width);
    case TypeExpr::Kind::Enum:
    case TypeExpr::Kind::Alias:
      return t.name;
    case TypeExpr::Kind::Vector:
      return fmt::format("[{}; {}]", to_string(*t.elem), t.length);
    case TypeExpr::Kind::ArrayOf:
      return fmt::format("Array<{}, {}>", to_string(*t.key), to_string(*t.elem));
    case TypeExpr::Kind::Record: {
      std::string s = "{ ";
      for (std::size_t i = 0; i < t.fields.size(); ++i) {
        if (i) s += ", ";
        s += t.fields[i].name + ": " + to_string(*t.fields[i].type);
      }
      return s + " }";
    }
  }
  return "?";
}

std::uint32_t enum_width(std::size_t n) {
  std::uint32_t w = 0;
  std::size_t cap = 1;
  if (n < 2) n = 2;
  while (cap < n) {
    cap <<= 1;
    ++w;
  }
  return w;
}

const char* to_string(UnaryOp op) {
  switch (op) {
    case UnaryOp::Not:
      return "!";
    case UnaryOp::Neg:
      return "-";
  }
  return "?";
}

const char* to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Mul:
      return "*";
    case BinaryOp::Add:
      return "+";
    case BinaryOp::Sub:
      return "-";
    case BinaryOp::Lt:
      return "<";
    case BinaryOp::Le:
      return "<=";
    case BinaryOp::Gt:
      return ">";
    case BinaryOp::Ge:
      return ">=";
    case BinaryOp::Eq:
      return "==";
    case BinaryOp::Ne:
      return "!=";
    case BinaryOp::And:
      return "&&";
    case BinaryOp::Or:
      return "||";
  }
  return "?";
}

const char* to_string(BuiltinFn fn) {
  switch (fn) {
    case BuiltinFn::ZeroExtend:
      return "zero_extend";
    case BuiltinFn::Truncate:
      return "truncate";
    case BuiltinFn::ToInt:
      return "to_int";
    case BuiltinFn::FromInt:
      return "from_int";
  }
  return "?";
}

const InstanceDecl* ModuleDecl::find_instance(const std::string& n) const {
  for (const auto& i : instances)
    if (i.name == n) return &i;
  return nullptr;
}

const CalleeDecl* ModuleDecl::find_callee(const std::string& n) const {
  for (const auto& c : callees)
    if (c.name == n) return &c;
  return nullptr;
}

const FnDecl* ModuleDecl::find_fn(const std::string& n) const {
  for (const auto& f : fns)
    if (f.name == n) return &f;
  return nullptr;
}

const ModuleDecl* Program::find_module(const std::string& n) const {
  for (const auto& m : modules)
    if (m.name == n) return &m;
  return nullptr;
}

const EnumDecl* Program::find_enum(const std::string& n) const {
  for (const auto& e : enums)
    if (e.name == n) return &e;
  return nullptr;
}

const TypeAliasDecl* Program::find_alias(const std::string& n) const {
  for (const auto& a : aliases)
    if (a.name == n) return &a;
  return nullptr;
}

}  // namespace socv
