#include "socv/typecheck.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <functional>
#include <set>

namespace socv {

const std::vector<const FnDecl*>& TypedProgram::callees_of(const FnDecl& fn) const {
  static const std::vector<const FnDecl*> none;
  auto it = call_graph_.find(&fn);
  return it == call_graph_.end() ? none : it->second;
}

std::vector<const FnDecl*> TypedProgram::scenarios() const {
  std::vector<const FnDecl*> out;
  for (const auto& f : root_->fns)
    if (f.is_mut && f.params.empty() && f.ret->is(TypeExpr::Kind::Unit)) out.push_back(&f);
  return out;
}

const FnDecl* TypedProgram::find_scenario(const std::string& name) const {
  for (const FnDecl* f : scenarios())
    if (f->name == name) return f;
  return nullptr;
}

std::string TypedProgram::qualified_name(const FnDecl& fn) const {
  return module_of(fn).name + "." + fn.name;
}

namespace {

using Kind = TypeExpr::Kind;

class Checker {
 public:
  explicit Checker(Program& p) : prog_(p) {}

  std::vector<Diagnostic> diags;
  std::map<const FnDecl*, const ModuleDecl*> fn_module;
  std::map<const FnDecl*, std::vector<const FnDecl*>> call_graph;
  std::map<std::pair<const FnDecl*, const FnDecl*>, SourceSpan> first_call_site;
  const ModuleDecl* root = nullptr;

  void run() {
    check_declarations();
    for (auto& m : prog_.modules)
      for (auto& f : m.fns) fn_module[&f] = &m;
    for (auto& m : prog_.modules) check_module(m);
    check_recursion();
  }

 private:
  Program& prog_;
  std::map<std::string, TypePtr> resolved_aliases_;
  std::set<std::string> resolving_;

  // Per-function state.
  struct Local {
    std::string name;
    TypePtr type;
  };
  const ModuleDecl* module_ = nullptr;
  const FnDecl* fn_ = nullptr;
  bool pure_ = false;
  int hole_depth_ = 0;
  std::vector<Local> locals_;

  void error(const SourceSpan& span, std::string msg) {
    diags.push_back(Diagnostic{span, std::move(msg)});
  }

  // ---- types --------------------------------------------------------------

  TypePtr resolve(const TypePtr& t) {
    if (!t) return nullptr;
    switch (t->kind) {
      case Kind::Unit:
      case Kind::Bool:
      case Kind::Int:
      case Kind::BitInt:
      case Kind::Enum:
        return t;
      case Kind::Alias: {
        if (const EnumDecl* e = prog_.find_enum(t->name))
          return TypeExpr::enumeration(e->name, e->variants);
        auto it = resolved_aliases_.find(t->name);
        if (it != resolved_aliases_.end()) return it->second;
        const TypeAliasDecl* a = prog_.find_alias(t->name);
        if (!a) {
          error(t->span, fmt::format("unknown type `{}`", t->name));
          return nullptr;
        }
        if (!resolving_.insert(a->name).second) {
          error(a->span, fmt::format("type alias `{}` refers to itself", a->name));
          return nullptr;
        }
        TypePtr r = resolve(a->type);
        resolving_.erase(a->name);
        if (r) resolved_aliases_[a->name] = r;
        return r;
      }
      case Kind::Vector: {
        TypePtr e = resolve(t->elem);
        if (!e) return nullptr;
        if (e->is(Kind::ArrayOf) || e->is(Kind::Unit)) {
          error(t->span, "vector elements must be values");
          return nullptr;
        }
        return TypeExpr::vector(e, t->length);
      }
      case Kind::ArrayOf: {
        TypePtr k = resolve(t->key);
        TypePtr v = resolve(t->elem);
        if (!k || !v) return nullptr;
        return TypeExpr::array_of(k, v);
      }
      case Kind::Record: {
        std::vector<RecordField> fs;
        for (const auto& f : t->fields) {
          TypePtr ft = resolve(f.type);
          if (!ft) return nullptr;
          if (ft->is(Kind::ArrayOf) || ft->is(Kind::Unit)) {
            error(t->span, fmt::format("record field `{}` must be a value", f.name));
            return nullptr;
          }
          fs.push_back({f.name, ft});
        }
        return TypeExpr::record(std::move(fs));
      }
    }
    return nullptr;
  }

  static std::string show(const TypePtr& t) { return t ? to_string(*t) : "<error>"; }

  bool expect_same(const SourceSpan& span, const TypePtr& expected, const TypePtr& found) {
    if (!expected || !found) return false;
    if (same_type(expected, found)) return true;
    error(span, fmt::format("type mismatch: expected {}, found {}", show(expected), show(found)));
    return false;
  }

  // ---- declarations -------------------------------------------------------

  void check_declarations() {
    std::set<std::string> type_names;
    for (const auto& e : prog_.enums) {
      if (!type_names.insert(e.name).second)
        error(e.span, fmt::format("duplicate type name `{}`", e.name));
      if (e.variants.empty()) error(e.span, fmt::format("enum `{}` has no variants", e.name));
      std::set<std::string> vs;
      for (const auto& v : e.variants)
        if (!vs.insert(v).second)
          error(e.span, fmt::format("duplicate variant `{}` in enum `{}`", v, e.name));
    }
    for (auto& a : prog_.aliases) {
      if (!type_names.insert(a.name).second)
        error(a.span, fmt::format("duplicate type name `{}`", a.name));
    }
    for (auto& a : prog_.aliases) resolve(TypeExpr::alias(a.name));

    std::set<std::string> mods;
    for (const auto& m : prog_.modules)
      if (!mods.insert(m.name).second)
        error(m.span, fmt::format("duplicate module `{}`", m.name));

    root = prog_.find_module(prog_.root);
    if (!root) {
      SourceSpan s = SourceSpan::synthetic(prog_.file);
      s.line = s.end_line = 1;
      s.col = s.end_col = 1;
      error(s, fmt::format("no root module `{}`", prog_.root));
    } else if (!root->callees.empty()) {
      error(root->callees.front().span,
            fmt::format("root module `{}` cannot declare callees", root->name));
    }

    // Instantiation must be a finite tree.
    std::map<std::string, int> state;
    std::function<void(const ModuleDecl&)> visit = [&](const ModuleDecl& m) {
      state[m.name] = 1;
      for (const auto& i : m.instances) {
        if (i.kind != InstanceDecl::Kind::Module) continue;
        const ModuleDecl* child = prog_.find_module(i.module_name);
        if (!child) continue;
        if (state[child->name] == 1) {
          error(i.span, fmt::format("module `{}` instantiates itself (through `{}`)", child->name,
                                    i.name));
        } else if (state[child->name] == 0) {
          visit(*child);
        }
      }
      state[m.name] = 2;
    };
    for (const auto& m : prog_.modules)
      if (state[m.name] == 0) visit(m);
  }

  void check_module(ModuleDecl& m) {
    module_ = &m;
    std::set<std::string> names;
    auto unique = [&](const std::string& n, const SourceSpan& s) {
      if (!names.insert(n).second) error(s, fmt::format("duplicate name `{}` in module `{}`", n, m.name));
    };
    for (auto& i : m.instances) {
      unique(i.name, i.span);
      check_instance(i);
    }
    for (auto& c : m.callees) {
      unique(c.name, c.span);
      if (!prog_.find_module(c.module_name))
        error(c.span, fmt::format("unknown module `{}`", c.module_name));
    }
    for (auto& f : m.fns) {
      unique(f.name, f.span);
      if (f.name == "havoc") error(f.span, "`havoc` is a built-in operation and cannot be redefined");
    }
    for (auto& f : m.fns) check_fn(m, f);
    module_ = nullptr;
  }

  void check_instance(InstanceDecl& i) {
    switch (i.kind) {
      case InstanceDecl::Kind::Module:
        if (!prog_.find_module(i.module_name))
          error(i.span, fmt::format("unknown module `{}`", i.module_name));
        return;
      case InstanceDecl::Kind::State: {
        i.value_type = resolve(i.value_type);
        if (!i.value_type) return;
        if (i.value_type->is(Kind::Unit)) {
          error(i.span, "State cannot hold ()");
          return;
        }
        check_closed(*i.init, i.value_type);
        return;
      }
      case InstanceDecl::Kind::Array: {
        i.key_type = resolve(i.key_type);
        i.value_type = resolve(i.value_type);
        if (!i.key_type || !i.value_type) return;
        if (!i.key_type->is(Kind::BitInt)) {
          error(i.span, "Array keys must be BitInt");
          return;
        }
        if (!i.value_type->is_scalar()) {
          error(i.span, "Array values must be Bool, BitInt, Int or an enum");
          return;
        }
        if (!i.init) i.init = zero_literal(*i.value_type, i.span);
        check_closed(*i.init, i.value_type);
        return;
      }
    }
  }

  ExprPtr zero_literal(const TypeExpr& t, const SourceSpan& at) {
    auto e = std::make_unique<Expr>();
    e->span = SourceSpan::synthetic(at.file);
    e->span.line = e->span.end_line = at.line;
    e->span.col = e->span.end_col = at.col;
    e->id = prog_.next_expr_id++;
    switch (t.kind) {
      case Kind::Bool:
        e->node = BoolLit{false};
        break;
      case Kind::Enum:
        e->node = EnumLit{t.name, t.variants.front(), 0};
        break;
      default:
        e->node = IntLit{0, std::nullopt};
        break;
    }
    return e;
  }

  // Initial values: no locals, no state, no choices.
  void check_closed(Expr& e, const TypePtr& t) {
    const FnDecl* saved_fn = fn_;
    bool saved_pure = pure_;
    fn_ = nullptr;
    pure_ = true;
    locals_.clear();
    check(e, t);
    fn_ = saved_fn;
    pure_ = saved_pure;
  }

  void check_fn(ModuleDecl& m, FnDecl& f) {
    fn_ = &f;
    pure_ = !f.is_mut;
    locals_.clear();
    std::set<std::string> pnames;
    for (auto& p : f.params) {
      if (!pnames.insert(p.name).second) error(p.span, fmt::format("duplicate parameter `{}`", p.name));
      p.type = resolve(p.type);
      if (p.type && p.type->is(Kind::Unit)) error(p.span, "parameters cannot have type ()");
      locals_.push_back({p.name, p.type});
    }
    f.ret = resolve(f.ret);
    if (f.ret) check(*f.body, f.ret);
    (void)m;
    fn_ = nullptr;
  }

  void check_recursion() {
    std::map<const FnDecl*, int> state;
    std::vector<const FnDecl*> stack;
    std::function<void(const FnDecl*)> dfs = [&](const FnDecl* f) {
      state[f] = 1;
      stack.push_back(f);
      for (const FnDecl* g : call_graph[f]) {
        if (state[g] == 1) {
          std::string cycle;
          bool on = false;
          for (const FnDecl* s : stack) {
            if (s == g) on = true;
            if (on) cycle += fn_module.at(s)->name + "." + s->name + " -> ";
          }
          cycle += fn_module.at(g)->name + "." + g->name;
          // Reported at the call that closes the cycle.
          error(first_call_site.at({f, g}), fmt::format("recursion is not supported: {}", cycle));
        } else if (state[g] == 0) {
          dfs(g);
        }
      }
      stack.pop_back();
      state[f] = 2;
    };
    for (auto& m : prog_.modules)
      for (auto& f : m.fns)
        if (state[&f] == 0) dfs(&f);
  }

  // ---- expressions --------------------------------------------------------

  const TypePtr* lookup(const std::string& n) const {
    for (auto it = locals_.rbegin(); it != locals_.rend(); ++it)
      if (it->name == n) return &it->type;
    return nullptr;
  }

  // True when the expression's type can only come from context.
  static bool needs_context(const Expr& e) {
    if (auto* l = e.as<IntLit>()) return !l->width;
    if (auto* u = e.as<UnaryExpr>()) return u->op == UnaryOp::Neg && needs_context(*u->operand);
    if (auto* b = e.as<BinaryExpr>()) {
      if (b->op == BinaryOp::Add || b->op == BinaryOp::Sub || b->op == BinaryOp::Mul)
        return needs_context(*b->lhs) && needs_context(*b->rhs);
      return false;
    }
    if (auto* v = e.as<VectorLit>()) return v->elems.empty() || needs_context(*v->elems.front());
    if (auto* r = e.as<VectorRepeat>()) return needs_context(*r->elem);
    if (auto* i = e.as<IfExpr>()) {
      if (!i->else_branch) return false;
      return needs_context(*i->then_branch) && needs_context(*i->else_branch);
    }
    if (auto* bl = e.as<BlockExpr>()) return bl->tail && needs_context(*bl->tail);
    return false;
  }

  TypePtr annotate(Expr& e, TypePtr t) {
    e.type = t;
    return t;
  }

  void check(Expr& e, const TypePtr& expected) {
    if (!expected) {
      infer(e);
      return;
    }
    if (auto* lit = e.as<IntLit>()) {
      if (expected->is(Kind::BitInt)) {
        if (lit->width && *lit->width != expected->width) {
          error(e.span, fmt::format("type mismatch: expected {}, found BitInt({})", show(expected),
                                    *lit->width));
          return;
        }
        if (lit->value >> expected->width != 0) {
          error(e.span, fmt::format("literal {} does not fit in {}", lit->value.str(), show(expected)));
          return;
        }
        annotate(e, expected);
        return;
      }
      if (expected->is(Kind::Int) && !lit->width) {
        annotate(e, expected);
        return;
      }
      if (!lit->width) {
        error(e.span, fmt::format("type mismatch: expected {}, found integer literal", show(expected)));
        return;
      }
    } else if (auto* rec = e.as<RecordLit>()) {
      if (expected->is(Kind::Record)) {
        check_record(e, *rec, expected);
        return;
      }
    } else if (auto* vec = e.as<VectorLit>()) {
      if (expected->is(Kind::Vector)) {
        if (vec->elems.size() != expected->length) {
          error(e.span, fmt::format("vector literal has {} elements, expected {}",
                                    vec->elems.size(), expected->length));
          return;
        }
        for (auto& x : vec->elems) check(*x, expected->elem);
        annotate(e, expected);
        return;
      }
    } else if (auto* rep = e.as<VectorRepeat>()) {
      if (expected->is(Kind::Vector)) {
        if (rep->count != expected->length) {
          error(e.span, fmt::format("vector literal has {} elements, expected {}", rep->count,
                                    expected->length));
          return;
        }
        check(*rep->elem, expected->elem);
        annotate(e, expected);
        return;
      }
    } else if (auto* ife = e.as<IfExpr>()) {
      check_if(e, *ife, expected);
      return;
    } else if (auto* blk = e.as<BlockExpr>()) {
      check_block(e, *blk, expected);
      return;
    } else if (auto* un = e.as<UnaryExpr>()) {
      if (un->op == UnaryOp::Neg && (expected->is(Kind::BitInt) || expected->is(Kind::Int))) {
        check(*un->operand, expected);
        annotate(e, expected);
        return;
      }
    } else if (auto* bin = e.as<BinaryExpr>()) {
      if ((bin->op == BinaryOp::Add || bin->op == BinaryOp::Sub || bin->op == BinaryOp::Mul) &&
          (expected->is(Kind::BitInt) || expected->is(Kind::Int))) {
        check(*bin->lhs, expected);
        check(*bin->rhs, expected);
        annotate(e, expected);
        return;
      }
    }
    TypePtr found = infer(e);
    expect_same(e.span, expected, found);
  }

  void check_record(Expr& e, RecordLit& rec, const TypePtr& expected) {
    std::vector<std::string> missing;
    for (const auto& f : expected->fields) {
      bool present = false;
      for (const auto& fi : rec.fields) present = present || fi.name == f.name;
      if (!present) missing.push_back(f.name);
    }
    bool ok = true;
    for (auto& fi : rec.fields) {
      int idx = expected->field_index(fi.name);
      if (idx < 0) {
        error(fi.span, fmt::format("record {} has no field `{}`", show(expected), fi.name));
        ok = false;
        continue;
      }
      check(*fi.value, expected->fields[static_cast<std::size_t>(idx)].type);
    }
    if (!missing.empty()) {
      error(e.span, fmt::format("record literal is missing field(s) {} of {}",
                                fmt::join(missing, ", "), show(expected)));
      ok = false;
    }
    if (ok) annotate(e, expected);
  }

  void check_if(Expr& e, IfExpr& n, const TypePtr& expected) {
    check(*n.cond, TypeExpr::boolean());
    if (!n.else_branch) {
      check(*n.then_branch, TypeExpr::unit());
      if (expected && !expected->is(Kind::Unit)) {
        error(e.span, fmt::format("`if` without `else` has type (), expected {}", show(expected)));
        return;
      }
      annotate(e, TypeExpr::unit());
      return;
    }
    check(*n.then_branch, expected);
    check(*n.else_branch, expected);
    annotate(e, expected);
  }

  void check_block(Expr& e, BlockExpr& b, const TypePtr& expected) {
    std::size_t mark = locals_.size();
    for (auto& s : b.stmts) {
      if (auto* let = s->as<LetExpr>()) {
        TypePtr t;
        if (let->annotation) {
          let->annotation = resolve(let->annotation);
          t = let->annotation;
          if (t) check(*let->init, t);
        } else {
          t = infer(*let->init);
        }
        if (t && (t->is(Kind::Unit))) {
          // Allowed: binding a unit-valued call result.
        }
        annotate(*s, TypeExpr::unit());
        locals_.push_back({let->name, t});
      } else {
        infer(*s);
      }
    }
    TypePtr t;
    if (b.tail) {
      if (expected) {
        check(*b.tail, expected);
        t = expected;
      } else {
        t = infer(*b.tail);
      }
    } else {
      t = TypeExpr::unit();
      if (expected) expect_same(e.span, expected, t);
    }
    locals_.resize(mark);
    annotate(e, t);
  }

  TypePtr infer(Expr& e) {
    return annotate(e, std::visit([&](auto& n) { return infer_node(e, n); }, e.node));
  }

  TypePtr infer_node(Expr& e, IntLit& n) {
    if (n.width) return TypeExpr::bits(*n.width);
    error(e.span, "cannot infer width of integer literal; add a `u<width>` suffix or a type annotation");
    return nullptr;
  }
  TypePtr infer_node(Expr&, BoolLit&) { return TypeExpr::boolean(); }
  TypePtr infer_node(Expr&, UnitLit&) { return TypeExpr::unit(); }
  TypePtr infer_node(Expr& e, EnumLit& n) {
    const EnumDecl* d = prog_.find_enum(n.enum_name);
    if (!d) {
      error(e.span, fmt::format("unknown enum `{}`", n.enum_name));
      return nullptr;
    }
    for (std::size_t i = 0; i < d->variants.size(); ++i) {
      if (d->variants[i] == n.variant) {
        n.index = static_cast<std::uint32_t>(i);
        return TypeExpr::enumeration(d->name, d->variants);
      }
    }
    error(e.span, fmt::format("enum `{}` has no variant `{}`", n.enum_name, n.variant));
    return nullptr;
  }
  TypePtr infer_node(Expr& e, VarRef& n) {
    if (const TypePtr* t = lookup(n.name)) return *t;
    if (module_ && (module_->find_instance(n.name) || module_->find_callee(n.name))) {
      error(e.span, fmt::format("`{}` is an instance, not a value; call one of its functions", n.name));
    } else {
      error(e.span, fmt::format("unknown name `{}`", n.name));
    }
    return nullptr;
  }
  TypePtr infer_node(Expr& e, RecordLit& n) {
    std::vector<RecordField> fs;
    bool ok = true;
    for (auto& fi : n.fields) {
      TypePtr t = infer(*fi.value);
      ok = ok && t;
      fs.push_back({fi.name, t});
    }
    if (!ok) return nullptr;
    (void)e;
    return TypeExpr::record(std::move(fs));
  }
  TypePtr infer_node(Expr& e, VectorLit& n) {
    if (n.elems.empty()) {
      error(e.span, "cannot infer the element type of an empty vector");
      return nullptr;
    }
    TypePtr t = infer(*n.elems.front());
    if (!t) return nullptr;
    for (std::size_t i = 1; i < n.elems.size(); ++i) check(*n.elems[i], t);
    return TypeExpr::vector(t, n.elems.size());
  }
  TypePtr infer_node(Expr&, VectorRepeat& n) {
    TypePtr t = infer(*n.elem);
    if (!t) return nullptr;
    return TypeExpr::vector(t, n.count);
  }
  TypePtr infer_node(Expr& e, FieldAccess& n) {
    TypePtr b = infer(*n.base);
    if (!b) return nullptr;
    if (!b->is(Kind::Record)) {
      error(e.span, fmt::format("field access `.{}` on non-record type {}", n.field, show(b)));
      return nullptr;
    }
    int idx = b->field_index(n.field);
    if (idx < 0) {
      error(e.span, fmt::format("record {} has no field `{}`", show(b), n.field));
      return nullptr;
    }
    n.index = static_cast<std::uint32_t>(idx);
    return b->fields[n.index].type;
  }

  // Index into a vector (any BitInt index; literals are range-checked) or
  // an array snapshot (index must have the key type).
  bool check_index(const TypePtr& base, Expr& index) {
    if (base->is(Kind::ArrayOf)) {
      check(index, base->key);
      return index.type != nullptr;
    }
    if (auto* lit = index.as<IntLit>(); lit && !lit->width) {
      if (lit->value >= base->length) {
        error(index.span, fmt::format("index {} out of range for vector of length {}",
                                      lit->value.str(), base->length));
        return false;
      }
      std::uint32_t w = 1;
      while ((BigInt(1) << w) <= lit->value) ++w;
      annotate(index, TypeExpr::bits(w));
      return true;
    }
    TypePtr t = infer(index);
    if (!t) return false;
    if (!t->is(Kind::BitInt)) {
      error(index.span, fmt::format("vector index must be a BitInt, found {}", show(t)));
      return false;
    }
    return true;
  }

  TypePtr infer_node(Expr& e, IndexExpr& n) {
    TypePtr b = infer(*n.base);
    if (!b) return nullptr;
    if (!b->is(Kind::Vector) && !b->is(Kind::ArrayOf)) {
      error(e.span, fmt::format("cannot index a value of type {}", show(b)));
      return nullptr;
    }
    if (!check_index(b, *n.index)) return nullptr;
    return b->elem;
  }
  TypePtr infer_node(Expr& e, SliceExpr& n) {
    TypePtr b = infer(*n.base);
    if (!b) return nullptr;
    if (!b->is(Kind::BitInt)) {
      error(e.span, fmt::format("bit slice of non-BitInt type {}", show(b)));
      return nullptr;
    }
    if (n.hi >= b->width) {
      error(e.span, fmt::format("slice [{} downto {}] out of range for {}", n.hi, n.lo, show(b)));
      return nullptr;
    }
    return TypeExpr::bits(n.hi - n.lo + 1);
  }
  TypePtr infer_node(Expr& e, UpdateExpr& n) {
    TypePtr b = infer(*n.base);
    if (!b) return nullptr;
    if (!b->is(Kind::Vector) && !b->is(Kind::ArrayOf)) {
      error(e.span, fmt::format("cannot update a value of type {}", show(b)));
      return nullptr;
    }
    if (!n.slice) {
      if (!check_index(b, *n.index)) return nullptr;
      check(*n.value, b->elem);
      return b;
    }
    if (!b->is(Kind::Vector)) {
      error(e.span, "slice update requires a vector");
      return nullptr;
    }
    auto* lit = n.index->as<IntLit>();
    if (!lit || lit->width) {
      error(n.index->span, "slice update start must be an unsuffixed integer literal");
      return nullptr;
    }
    if (!check_index(b, *n.index)) return nullptr;
    TypePtr v = infer(*n.value);
    if (!v) return nullptr;
    if (!v->is(Kind::Vector) || !same_type(v->elem, b->elem)) {
      error(n.value->span, fmt::format("slice update value must be a vector of {}, found {}",
                                       show(b->elem), show(v)));
      return nullptr;
    }
    if (lit->value + v->length > b->length) {
      error(e.span, fmt::format("slice update of {} elements at {} exceeds vector length {}",
                                v->length, lit->value.str(), b->length));
      return nullptr;
    }
    return b;
  }
  TypePtr infer_node(Expr& e, UnaryExpr& n) {
    TypePtr t = infer(*n.operand);
    if (!t) return nullptr;
    if (n.op == UnaryOp::Not) {
      if (t->is(Kind::Bool) || t->is(Kind::BitInt)) return t;
      error(e.span, fmt::format("`!` needs Bool or BitInt, found {}", show(t)));
      return nullptr;
    }
    if (t->is(Kind::BitInt) || t->is(Kind::Int)) return t;
    error(e.span, fmt::format("`-` needs BitInt or Int, found {}", show(t)));
    return nullptr;
  }

  // Synthesizes one operand and checks the other against it; a literal
  // without width takes its width from the other side.
  TypePtr operand_pair(BinaryExpr& n) {
    if (needs_context(*n.lhs) && !needs_context(*n.rhs)) {
      TypePtr t = infer(*n.rhs);
      if (!t) return nullptr;
      check(*n.lhs, t);
      return n.lhs->type ? t : nullptr;
    }
    TypePtr t = infer(*n.lhs);
    if (!t) return nullptr;
    check(*n.rhs, t);
    return n.rhs->type ? t : nullptr;
  }

  TypePtr infer_node(Expr& e, BinaryExpr& n) {
    switch (n.op) {
      case BinaryOp::And:
      case BinaryOp::Or:
        check(*n.lhs, TypeExpr::boolean());
        check(*n.rhs, TypeExpr::boolean());
        return TypeExpr::boolean();
      case BinaryOp::Eq:
      case BinaryOp::Ne: {
        TypePtr t = operand_pair(n);
        if (!t) return nullptr;
        if (!supports_equality(*t)) {
          error(e.span, fmt::format("equality on indexed collections is not supported ({}); "
                                    "compare individual elements instead",
                                    show(t)));
          return nullptr;
        }
        return TypeExpr::boolean();
      }
      case BinaryOp::Lt:
      case BinaryOp::Le:
      case BinaryOp::Gt:
      case BinaryOp::Ge: {
        TypePtr t = operand_pair(n);
        if (!t) return nullptr;
        if (!t->is(Kind::BitInt) && !t->is(Kind::Int)) {
          error(e.span, fmt::format("`{}` needs BitInt or Int operands, found {}", to_string(n.op),
                                    show(t)));
          return nullptr;
        }
        return TypeExpr::boolean();
      }
      case BinaryOp::Add:
      case BinaryOp::Sub:
      case BinaryOp::Mul: {
        TypePtr t = operand_pair(n);
        if (!t) return nullptr;
        if (!t->is(Kind::BitInt) && !t->is(Kind::Int)) {
          error(e.span, fmt::format("`{}` needs BitInt or Int operands, found {}", to_string(n.op),
                                    show(t)));
          return nullptr;
        }
        return t;
      }
    }
    return nullptr;
  }

  TypePtr infer_node(Expr& e, CallExpr& n) { return check_call(e, n); }

  TypePtr infer_node(Expr& e, BuiltinCall& n) {
    if (n.args.size() != 1) {
      error(e.span, fmt::format("`{}` takes 1 argument, found {}", to_string(n.fn), n.args.size()));
      return nullptr;
    }
    Expr& arg = *n.args.front();
    if (n.fn == BuiltinFn::FromInt) {
      check(arg, TypeExpr::integer());
      return arg.type ? TypeExpr::bits(n.width) : nullptr;
    }
    TypePtr t = infer(arg);
    if (!t) return nullptr;
    if (!t->is(Kind::BitInt)) {
      error(arg.span, fmt::format("`{}` needs a BitInt argument, found {}", to_string(n.fn), show(t)));
      return nullptr;
    }
    switch (n.fn) {
      case BuiltinFn::ZeroExtend:
        if (n.width < t->width) {
          error(e.span, fmt::format("zero_extend<{}> cannot narrow {}", n.width, show(t)));
          return nullptr;
        }
        return TypeExpr::bits(n.width);
      case BuiltinFn::Truncate:
        if (n.width > t->width) {
          error(e.span, fmt::format("truncate<{}> cannot widen {}", n.width, show(t)));
          return nullptr;
        }
        return TypeExpr::bits(n.width);
      case BuiltinFn::ToInt:
        return TypeExpr::integer();
      case BuiltinFn::FromInt:
        break;
    }
    return nullptr;
  }

  bool impure_here(const SourceSpan& span, const char* what) {
    if (hole_depth_ > 0) {
      error(span, fmt::format("{} is not allowed inside a printf argument", what));
      return true;
    }
    if (pure_) {
      error(span, fmt::format("{} is not allowed in a pure `fn` (declare it `mut fn`)", what));
      return true;
    }
    return false;
  }

  TypePtr infer_node(Expr& e, AnyExpr& n) {
    n.type = resolve(n.type);
    if (!n.type) return nullptr;
    if (n.type->is(Kind::Unit) || n.type->is(Kind::ArrayOf)) {
      error(e.span, fmt::format("any<{}> is not supported", show(n.type)));
      return nullptr;
    }
    if (impure_here(e.span, "`any`")) return nullptr;
    return n.type;
  }
  TypePtr infer_node(Expr& e, LetExpr&) {
    error(e.span, "`let` is only allowed as a statement inside a block");
    return nullptr;
  }
  TypePtr infer_node(Expr& e, IfExpr& n) {
    check(*n.cond, TypeExpr::boolean());
    if (!n.else_branch) {
      check(*n.then_branch, TypeExpr::unit());
      return TypeExpr::unit();
    }
    if (needs_context(*n.then_branch) && !needs_context(*n.else_branch)) {
      TypePtr t = infer(*n.else_branch);
      if (!t) return nullptr;
      check(*n.then_branch, t);
      return t;
    }
    TypePtr t = infer(*n.then_branch);
    if (!t) return nullptr;
    check(*n.else_branch, t);
    (void)e;
    return t;
  }
  TypePtr infer_node(Expr& e, BlockExpr& n) {
    check_block(e, n, nullptr);
    return e.type;
  }
  TypePtr infer_node(Expr&, AssumeExpr& n) {
    check(*n.cond, TypeExpr::boolean());
    return TypeExpr::unit();
  }
  TypePtr infer_node(Expr&, AssertExpr& n) {
    check(*n.cond, TypeExpr::boolean());
    return TypeExpr::unit();
  }
  TypePtr infer_node(Expr&, PrintfExpr& n) {
    ++hole_depth_;
    for (auto& p : n.pieces)
      if (p.hole) infer(*p.hole);
    --hole_depth_;
    return TypeExpr::unit();
  }

  // ---- calls --------------------------------------------------------------

  TypePtr check_args(Expr& e, CallExpr& n, const std::vector<TypePtr>& params) {
    if (n.args.size() != params.size()) {
      std::string callee = n.name;
      for (auto it = n.path.rbegin(); it != n.path.rend(); ++it) callee = *it + "." + callee;
      error(e.span, fmt::format("`{}` expects {} argument(s), found {}", callee, params.size(),
                                n.args.size()));
      for (auto& a : n.args) infer(*a);
      return nullptr;
    }
    for (std::size_t i = 0; i < params.size(); ++i) check(*n.args[i], params[i]);
    return TypeExpr::unit();
  }

  TypePtr check_call(Expr& e, CallExpr& n) {
    using CK = CallTarget::Kind;
    if (!fn_) {
      error(e.span, "calls are not allowed in initial values");
      return nullptr;
    }
    if (!n.path.empty() && lookup(n.path.front())) {
      error(e.span, fmt::format("`{}` is a value; only instances have functions", n.path.front()));
      return nullptr;
    }
    bool is_root = module_ == root;
    if (n.path.size() > 1 && !is_root) {
      error(e.span, fmt::format("`{}` is not reachable from module `{}`: only its own instances and "
                                "callees can be called",
                                fmt::join(n.path, "."), module_->name));
      return nullptr;
    }

    // Walk the path through the module graph.
    const ModuleDecl* cur = module_;
    const InstanceDecl* prim = nullptr;
    for (std::size_t i = 0; i < n.path.size(); ++i) {
      const std::string& seg = n.path[i];
      if (prim) {
        error(e.span, fmt::format("`{}` is a primitive instance and has no children", n.path[i - 1]));
        return nullptr;
      }
      if (const InstanceDecl* inst = cur->find_instance(seg)) {
        if (inst->is_primitive()) {
          prim = inst;
        } else {
          cur = prog_.find_module(inst->module_name);
        }
      } else if (const CalleeDecl* cal = cur->find_callee(seg)) {
        cur = prog_.find_module(cal->module_name);
      } else {
        error(e.span, fmt::format("`{}` is neither an instance nor a callee of module `{}`", seg,
                                  cur->name));
        return nullptr;
      }
      if (!cur) return nullptr;
    }

    if (n.name == "havoc") {
      n.target.kind = CK::Havoc;
      if (impure_here(e.span, "`havoc`")) return nullptr;
      return check_args(e, n, {});
    }

    if (prim) {
      TypePtr v = resolve(prim->value_type);
      if (!v) return nullptr;
      if (impure_here(e.span, "state access")) return nullptr;
      if (prim->kind == InstanceDecl::Kind::State) {
        if (n.name == "get") {
          n.target.kind = CK::StateGet;
          return check_args(e, n, {}) ? v : nullptr;
        }
        if (n.name == "set") {
          n.target.kind = CK::StateSet;
          return check_args(e, n, {v});
        }
        error(e.span, fmt::format("State has no operation `{}` (expected get, set or havoc)", n.name));
        return nullptr;
      }
      TypePtr k = resolve(prim->key_type);
      if (!k) return nullptr;
      TypePtr snap = TypeExpr::array_of(k, v);
      if (n.name == "get") {
        n.target.kind = CK::ArrayGet;
        return check_args(e, n, {}) ? snap : nullptr;
      }
      if (n.name == "set") {
        n.target.kind = CK::ArraySet;
        return check_args(e, n, {snap});
      }
      if (n.name == "read") {
        n.target.kind = CK::ArrayRead;
        return check_args(e, n, {k}) ? v : nullptr;
      }
      if (n.name == "write") {
        n.target.kind = CK::ArrayWrite;
        return check_args(e, n, {k, v});
      }
      error(e.span, fmt::format("Array has no operation `{}` (expected get, set, read, write or havoc)",
                                n.name));
      return nullptr;
    }

    const FnDecl* f = cur->find_fn(n.name);
    if (!f) {
      error(e.span, fmt::format("module `{}` has no function `{}`", cur->name, n.name));
      return nullptr;
    }
    n.target.kind = CK::UserFn;
    n.target.fn = f;
    n.target.module = cur;
    if (fn_) {
      call_graph[fn_].push_back(f);
      first_call_site.emplace(std::make_pair(fn_, f), e.span);
    }
    if (f->is_mut && impure_here(e.span, fmt::format("call to `mut fn {}`", f->name).c_str()))
      return nullptr;
    std::vector<TypePtr> params;
    for (const auto& p : f->params) {
      TypePtr pt = resolve(p.type);
      if (!pt) return nullptr;
      params.push_back(pt);
    }
    if (!check_args(e, n, params)) return nullptr;
    return resolve(f->ret);
  }
};

}  // namespace

TypedProgram check_program(Program p) {
  TypedProgram tp;
  tp.program_ = std::move(p);
  Checker c(tp.program_);
  c.run();
  if (!c.diags.empty()) {
    std::stable_sort(c.diags.begin(), c.diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
      return std::tie(a.span.line, a.span.col) < std::tie(b.span.line, b.span.col);
    });
    c.diags.erase(std::unique(c.diags.begin(), c.diags.end(),
                              [](const Diagnostic& a, const Diagnostic& b) {
                                return a.message == b.message && a.span.line == b.span.line &&
                                       a.span.col == b.span.col;
                              }),
                  c.diags.end());
    throw CompileError(std::move(c.diags));
  }
  tp.root_ = c.root;
  tp.fn_module_ = std::move(c.fn_module);
  tp.call_graph_ = std::move(c.call_graph);
  return tp;
}

}  // namespace socv
