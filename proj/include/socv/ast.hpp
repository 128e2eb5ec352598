#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "socv/source.hpp"

namespace socv {

using BigInt = boost::multiprecision::cpp_int;

struct TypeExpr;
using TypePtr = std::shared_ptr<const TypeExpr>;

struct RecordField {
  std::string name;
  TypePtr type;
};

// Types are immutable values and may be shared freely between expressions.
// `Alias` only appears in parsed programs; the type checker replaces it by
// the aliased type or by the `Enum` it names.
struct TypeExpr {
  enum class Kind { Unit, Bool, BitInt, Int, Enum, Vector, Record, Alias, ArrayOf };

  Kind kind = Kind::Unit;
  std::uint32_t width = 0;             // BitInt
  std::uint64_t length = 0;            // Vector
  std::string name;                    // Enum, Alias
  std::vector<std::string> variants;   // Enum (filled by the type checker)
  TypePtr elem;                        // Vector element, ArrayOf value
  TypePtr key;                         // ArrayOf key
  std::vector<RecordField> fields;     // Record, declaration order
  SourceSpan span;

  static TypePtr unit();
  static TypePtr boolean();
  static TypePtr integer();
  static TypePtr bits(std::uint32_t width);
  static TypePtr vector(TypePtr elem, std::uint64_t length);
  static TypePtr record(std::vector<RecordField> fields);
  static TypePtr alias(std::string name);
  static TypePtr array_of(TypePtr key, TypePtr value);
  static TypePtr enumeration(std::string name, std::vector<std::string> variants);

  bool is(Kind k) const { return kind == k; }
  // Scalars map to a single solver term.
  bool is_scalar() const {
    return kind == Kind::Bool || kind == Kind::BitInt || kind == Kind::Int || kind == Kind::Enum;
  }
  // Index of a record field, or -1.
  int field_index(const std::string& field) const;
};

// Structural equality; enums compare by name, spans are ignored.
bool same_type(const TypeExpr& a, const TypeExpr& b);
inline bool same_type(const TypePtr& a, const TypePtr& b) { return same_type(*a, *b); }

// Equality is defined on scalars and on records built from them.
bool supports_equality(const TypeExpr& t);

// Source-syntax rendering, e.g. `BitInt(48)` or `{ ok: Bool, value: BitInt(64) }`.
std::string to_string(const TypeExpr& t);

// Bit width a solver needs for an enum with `n` variants.
std::uint32_t enum_width(std::size_t n);

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct ModuleDecl;
struct FnDecl;

enum class UnaryOp { Not, Neg };
enum class BinaryOp { Mul, Add, Sub, Lt, Le, Gt, Ge, Eq, Ne, And, Or };
enum class BuiltinFn { ZeroExtend, Truncate, ToInt, FromInt };

const char* to_string(UnaryOp op);
const char* to_string(BinaryOp op);
const char* to_string(BuiltinFn fn);

// What a call resolves to after type checking.
struct CallTarget {
  enum class Kind {
    Unresolved,
    UserFn,
    StateGet,
    StateSet,
    ArrayGet,
    ArraySet,
    ArrayRead,
    ArrayWrite,
    Havoc,
  };
  Kind kind = Kind::Unresolved;
  const ModuleDecl* module = nullptr;  // module declaring `fn`
  const FnDecl* fn = nullptr;
};

struct IntLit {
  BigInt value;
  std::optional<std::uint32_t> width;  // from a `u<width>` suffix
};
struct BoolLit {
  bool value = false;
};
struct UnitLit {};
struct EnumLit {
  std::string enum_name;
  std::string variant;
  std::uint32_t index = 0;  // resolved
};
struct VarRef {
  std::string name;
};
struct FieldInit {
  std::string name;
  ExprPtr value;
  SourceSpan span;
};
struct RecordLit {
  std::vector<FieldInit> fields;
};
struct VectorLit {
  std::vector<ExprPtr> elems;
};
struct VectorRepeat {
  ExprPtr elem;
  std::uint64_t count = 0;
};
struct FieldAccess {
  ExprPtr base;
  std::string field;
  std::uint32_t index = 0;  // resolved position in the record type
};
struct IndexExpr {
  ExprPtr base;
  ExprPtr index;
};
// `base[hi downto lo]`
struct SliceExpr {
  ExprPtr base;
  std::uint32_t hi = 0;
  std::uint32_t lo = 0;
};
// `base[index := value]` replaces one element; `base[index.. := value]`
// overwrites `value.length` elements starting at a constant index.
struct UpdateExpr {
  ExprPtr base;
  ExprPtr index;
  ExprPtr value;
  bool slice = false;
};
struct UnaryExpr {
  UnaryOp op;
  ExprPtr operand;
};
struct BinaryExpr {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
// `a.b.name(args)`; `path` holds the instance/callee segments before `name`.
struct CallExpr {
  std::vector<std::string> path;
  std::string name;
  std::vector<ExprPtr> args;
  CallTarget target;
};
// `zero_extend<64>(x)` and friends; `width` is unused for `to_int`.
struct BuiltinCall {
  BuiltinFn fn;
  std::uint32_t width = 0;
  std::vector<ExprPtr> args;
};
struct AnyExpr {
  TypePtr type;
};
// Only valid as a statement of a block; scopes over the rest of the block.
struct LetExpr {
  std::string name;
  TypePtr annotation;  // may be null
  ExprPtr init;
};
struct IfExpr {
  ExprPtr cond;
  ExprPtr then_branch;  // BlockExpr
  ExprPtr else_branch;  // BlockExpr, IfExpr, or null
};
struct BlockExpr {
  std::vector<ExprPtr> stmts;
  ExprPtr tail;  // null: block value is ()
};
struct AssumeExpr {
  ExprPtr cond;
};
struct AssertExpr {
  ExprPtr cond;
};
struct PrintfPiece {
  std::string text;  // literal text, escapes already decoded
  ExprPtr hole;      // null for pure text pieces
};
struct PrintfExpr {
  std::string format;  // as written, escapes intact
  std::vector<PrintfPiece> pieces;
};

using ExprNode = std::variant<IntLit, BoolLit, UnitLit, EnumLit, VarRef, RecordLit, VectorLit,
                              VectorRepeat, FieldAccess, IndexExpr, SliceExpr, UpdateExpr,
                              UnaryExpr, BinaryExpr, CallExpr, BuiltinCall, AnyExpr, LetExpr,
                              IfExpr, BlockExpr, AssumeExpr, AssertExpr, PrintfExpr>;

struct Expr {
  ExprNode node;
  SourceSpan span;
  std::uint32_t id = 0;  // unique per program, assigned by the parser
  TypePtr type;          // filled by the type checker

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
  template <class T>
  T* as() {
    return std::get_if<T>(&node);
  }
};

struct Param {
  std::string name;
  TypePtr type;
  SourceSpan span;
};

struct FnDecl {
  std::string name;
  bool is_mut = false;
  std::vector<Param> params;
  TypePtr ret;  // unit when omitted
  ExprPtr body;
  SourceSpan span;
};

struct InstanceDecl {
  enum class Kind { Module, State, Array };
  std::string name;
  Kind kind = Kind::Module;
  std::string module_name;  // Kind::Module
  TypePtr value_type;       // State value / Array element
  TypePtr key_type;         // Array key
  ExprPtr init;             // State initial value / Array default (optional)
  SourceSpan span;

  bool is_primitive() const { return kind != Kind::Module; }
};

struct CalleeDecl {
  std::string name;
  std::string module_name;
  SourceSpan span;
};

// `child.callee -> target;`
struct WiringDecl {
  std::vector<std::string> source;
  std::vector<std::string> target;
  SourceSpan span;
};

struct ModuleDecl {
  std::string name;
  std::vector<InstanceDecl> instances;
  std::vector<CalleeDecl> callees;
  std::vector<WiringDecl> wirings;
  std::vector<FnDecl> fns;
  SourceSpan span;

  const InstanceDecl* find_instance(const std::string& n) const;
  const CalleeDecl* find_callee(const std::string& n) const;
  const FnDecl* find_fn(const std::string& n) const;
};

struct TypeAliasDecl {
  std::string name;
  TypePtr type;
  SourceSpan span;
};

struct EnumDecl {
  std::string name;
  std::vector<std::string> variants;
  SourceSpan span;
};

struct Program {
  std::vector<TypeAliasDecl> aliases;
  std::vector<EnumDecl> enums;
  std::vector<ModuleDecl> modules;
  std::string root = "Main";
  std::shared_ptr<const std::string> file;
  std::uint32_t next_expr_id = 0;

  const ModuleDecl* find_module(const std::string& n) const;
  const EnumDecl* find_enum(const std::string& n) const;
  const TypeAliasDecl* find_alias(const std::string& n) const;
};

inline const SourceSpan& span_of(const Expr& e) { return e.span; }
inline const SourceSpan& span_of(const FnDecl& f) { return f.span; }
inline const SourceSpan& span_of(const ModuleDecl& m) { return m.span; }
inline const SourceSpan& span_of(const InstanceDecl& i) { return i.span; }
inline const SourceSpan& span_of(const CalleeDecl& c) { return c.span; }
inline const SourceSpan& span_of(const WiringDecl& w) { return w.span; }
inline const SourceSpan& span_of(const TypeAliasDecl& t) { return t.span; }
inline const SourceSpan& span_of(const EnumDecl& e) { return e.span; }

// Calls `f(child)` for each direct subexpression of `e`, in evaluation order.
template <class F>
void for_each_child(const Expr& e, F&& f) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, RecordLit>) {
          for (const auto& fi : n.fields) f(*fi.value);
        } else if constexpr (std::is_same_v<T, VectorLit>) {
          for (const auto& x : n.elems) f(*x);
        } else if constexpr (std::is_same_v<T, VectorRepeat>) {
          f(*n.elem);
        } else if constexpr (std::is_same_v<T, FieldAccess> || std::is_same_v<T, SliceExpr>) {
          f(*n.base);
        } else if constexpr (std::is_same_v<T, IndexExpr>) {
          f(*n.base);
          f(*n.index);
        } else if constexpr (std::is_same_v<T, UpdateExpr>) {
          f(*n.base);
          f(*n.index);
          f(*n.value);
        } else if constexpr (std::is_same_v<T, UnaryExpr>) {
          f(*n.operand);
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          f(*n.lhs);
          f(*n.rhs);
        } else if constexpr (std::is_same_v<T, CallExpr> || std::is_same_v<T, BuiltinCall>) {
          for (const auto& a : n.args) f(*a);
        } else if constexpr (std::is_same_v<T, LetExpr>) {
          f(*n.init);
        } else if constexpr (std::is_same_v<T, IfExpr>) {
          f(*n.cond);
          f(*n.then_branch);
          if (n.else_branch) f(*n.else_branch);
        } else if constexpr (std::is_same_v<T, BlockExpr>) {
          for (const auto& s : n.stmts) f(*s);
          if (n.tail) f(*n.tail);
        } else if constexpr (std::is_same_v<T, AssumeExpr> || std::is_same_v<T, AssertExpr>) {
          f(*n.cond);
        } else if constexpr (std::is_same_v<T, PrintfExpr>) {
          for (const auto& p : n.pieces)
            if (p.hole) f(*p.hole);
        }
      },
      e.node);
}

}  // namespace socv
