#include "socv/symexec.hpp"

#include <fmt/format.h>

namespace socv {

namespace {

struct Stop {
  Verdict verdict;
};

SymValue leaf(TypePtr t, TermId term) { return SymValue{std::move(t), term, {}}; }

SymValue lift(TermStore& ts, const ConcreteValue& v, const TypePtr& t) {
  switch (t->kind) {
    case TypeExpr::Kind::Unit:
      return leaf(t, kNoTerm);
    case TypeExpr::Kind::Bool:
      return leaf(t, ts.boolean(v.b));
    case TypeExpr::Kind::BitInt:
      return leaf(t, ts.bv(t->width, v.num));
    case TypeExpr::Kind::Int:
      return leaf(t, ts.integer(v.num));
    case TypeExpr::Kind::Enum:
      return leaf(t, ts.bv(enum_width(t->variants.size()), v.num));
    case TypeExpr::Kind::Record: {
      SymValue out{t, kNoTerm, {}};
      for (std::size_t i = 0; i < t->fields.size(); ++i)
        out.elems.push_back(lift(ts, v.elems[i], t->fields[i].type));
      return out;
    }
    case TypeExpr::Kind::Vector: {
      SymValue out{t, kNoTerm, {}};
      for (const auto& e : v.elems) out.elems.push_back(lift(ts, e, t->elem));
      return out;
    }
    case TypeExpr::Kind::ArrayOf: {
      TermId arr = ts.const_array(t->key->width, lift(ts, v.array->default_value(), t->elem).term);
      for (const auto& [k, x] : v.array->entries())
        arr = ts.store(arr, ts.bv(t->key->width, k), lift(ts, x, t->elem).term);
      return leaf(t, arr);
    }
    case TypeExpr::Kind::Alias:
      break;
  }
  throw std::logic_error("cannot lift value of type " + to_string(*t));
}

SymValue sym_ite(TermStore& ts, TermId c, const SymValue& a, const SymValue& b) {
  SymValue out{a.type, kNoTerm, {}};
  if (a.term != kNoTerm) out.term = ts.mk_ite(c, a.term, b.term);
  for (std::size_t i = 0; i < a.elems.size(); ++i) out.elems.push_back(sym_ite(ts, c, a.elems[i], b.elems[i]));
  return out;
}

TermId sym_eq(TermStore& ts, const SymValue& a, const SymValue& b) {
  if (a.term != kNoTerm) return ts.mk_eq(a.term, b.term);
  std::vector<TermId> parts;
  for (std::size_t i = 0; i < a.elems.size(); ++i) parts.push_back(sym_eq(ts, a.elems[i], b.elems[i]));
  return ts.mk_and(std::move(parts));
}

class Engine {
 public:
  Engine(const Elaboration& el, bool concrete, const std::map<ChoiceKey, ConcreteValue>* model,
         std::size_t capacity)
      : el_(el), concrete_(concrete), model_(model), capacity_(capacity) {
    vc.terms = std::make_shared<TermStore>();
    ts_ = vc.terms.get();
    pc_ = ts_->tru();
    asserts_ok_ = ts_->tru();
  }

  VerificationCondition vc;
  RunResult result;

  void run(const FnDecl& fn) {
    for (const Cell& c : el_.layout.cells) store_.push_back(initial(c));
    try {
      call(fn, InstanceTree::kRoot, {});
      result.verdict.kind = Verdict::Kind::Passed;
    } catch (Stop& s) {
      result.verdict = std::move(s.verdict);
    }
    if (concrete_) {
      for (std::size_t i = 0; i < store_.size(); ++i)
        result.store.cells.push_back(to_concrete(*ts_, store_[i], capacity_));
      return;
    }
    std::vector<TermId> as, vs;
    for (const auto& a : vc.assumptions) as.push_back(ts_->mk_implies(a.guard, a.body));
    for (const auto& o : vc.obligations) vs.push_back(ts_->mk_and(o.guard, ts_->mk_not(o.body)));
    vc.assumes = ts_->mk_and(std::move(as));
    vc.violations = ts_->mk_or(std::move(vs));
    vc.query = ts_->mk_and(vc.assumes, vc.violations);
  }

 private:
  const Elaboration& el_;
  bool concrete_;
  const std::map<ChoiceKey, ConcreteValue>* model_;
  std::size_t capacity_;
  TermStore* ts_ = nullptr;

  std::vector<SymValue> store_;  // per cell
  std::vector<std::pair<std::string, SymValue>> env_;
  NodeId node_ = InstanceTree::kRoot;
  std::vector<std::uint32_t> call_string_;
  std::size_t depth_ = 0;
  TermId pc_;
  TermId asserts_ok_;

  SymValue initial(const Cell& c) {
    // Initial values are closed and pure, so evaluating them folds to constants.
    if (c.kind == Cell::Kind::Scalar) return eval(*c.init);
    TypePtr t = TypeExpr::array_of(c.key_type, c.value_type);
    TermId dflt = c.init ? eval(*c.init).term : lift(*ts_, zero_value(c.value_type), c.value_type).term;
    return leaf(t, ts_->const_array(c.key_type->width, dflt));
  }

  [[noreturn]] void stop(Verdict::Kind k, const SourceSpan& site, std::string msg) {
    throw Stop{Verdict{k, site, std::move(msg)}};
  }

  void obligation(TermId body, const SourceSpan& site, std::string msg) {
    if (concrete_) {
      if (ts_->is_false(body)) stop(Verdict::Kind::AssertionFailed, site, std::move(msg));
      return;
    }
    vc.obligations.push_back(GuardedFact{pc_, body, site, std::move(msg)});
    asserts_ok_ = ts_->mk_and(asserts_ok_, ts_->mk_implies(pc_, body));
  }

  void assumption(TermId body, const SourceSpan& site) {
    if (concrete_) {
      if (ts_->is_false(body)) stop(Verdict::Kind::AssumeInfeasible, site, "assumption does not hold");
      return;
    }
    vc.assumptions.push_back(GuardedFact{ts_->mk_and(pc_, asserts_ok_), body, site, "assume"});
  }

  SymValue choose(const TypePtr& t, const ChoiceKey& key) {
    switch (t->kind) {
      case TypeExpr::Kind::Unit:
        return leaf(t, kNoTerm);
      case TypeExpr::Kind::Record: {
        SymValue out{t, kNoTerm, {}};
        for (const auto& f : t->fields) out.elems.push_back(choose(f.type, key + "." + f.name));
        return out;
      }
      case TypeExpr::Kind::Vector: {
        SymValue out{t, kNoTerm, {}};
        for (std::uint64_t i = 0; i < t->length; ++i)
          out.elems.push_back(choose(t->elem, fmt::format("{}[{}]", key, i)));
        return out;
      }
      default:
        break;
    }
    if (concrete_) {
      auto it = model_->find(key);
      if (it == model_->end()) return lift(*ts_, zero_value(t), t);
      if (!value_has_type(it->second, *t))
        throw ModelError(fmt::format("model value for choice {} does not have type {}", key, to_string(*t)));
      return lift(*ts_, it->second, t);
    }
    auto index = static_cast<std::uint32_t>(vc.registry.size());
    TermId v = ts_->var(index, sort_of(*t));
    vc.registry.push_back(ChoiceVar{key, t, v});
    if (t->is(TypeExpr::Kind::Enum)) {
      std::uint32_t w = enum_width(t->variants.size());
      if ((BigInt(1) << w) > t->variants.size())
        vc.assumptions.push_back(GuardedFact{ts_->tru(), ts_->bv_ult(v, ts_->bv(w, t->variants.size())),
                                             SourceSpan::synthetic(), "enum range"});
    }
    return leaf(t, v);
  }

  // Runs both arms under their path conditions and merges the results.
  template <class Then, class Else>
  SymValue branch(TermId c, Then then_fn, Else else_fn) {
    if (ts_->is_const(c)) return ts_->value(c) == 1 ? then_fn() : else_fn();
    TermId saved_pc = pc_;
    TermId pc_then = ts_->mk_and(saved_pc, c);
    TermId pc_else = ts_->mk_and(saved_pc, ts_->mk_not(c));
    if (ts_->is_false(pc_then)) return else_fn();
    if (ts_->is_false(pc_else)) return then_fn();
    std::vector<SymValue> saved_store = store_;
    pc_ = pc_then;
    SymValue vt = then_fn();
    std::vector<SymValue> then_store = std::move(store_);
    store_ = std::move(saved_store);
    pc_ = pc_else;
    SymValue ve = else_fn();
    pc_ = saved_pc;
    for (std::size_t i = 0; i < store_.size(); ++i) store_[i] = sym_ite(*ts_, c, then_store[i], store_[i]);
    return sym_ite(*ts_, c, vt, ve);
  }

  std::string fn_label(const FnDecl& fn, NodeId node) const {
    const InstanceNode& n = el_.tree.node(node);
    return (n.path.empty() ? n.module->name : n.path) + "." + fn.name;
  }

  SymValue call(const FnDecl& fn, NodeId node, std::vector<SymValue> args) {
    std::string label;
    if (concrete_) {
      label = fn_label(fn, node);
      std::vector<ConcreteValue> cargs;
      for (const auto& a : args) cargs.push_back(to_concrete(*ts_, a, capacity_));
      result.trace.push_back(TraceEvent{TraceEvent::Kind::Call, label, std::move(cargs), std::nullopt, depth_});
    }
    auto saved_env = std::move(env_);
    NodeId saved_node = node_;
    env_.clear();
    for (std::size_t i = 0; i < fn.params.size(); ++i) env_.emplace_back(fn.params[i].name, std::move(args[i]));
    node_ = node;
    ++depth_;
    SymValue ret = eval(*fn.body);
    --depth_;
    node_ = saved_node;
    env_ = std::move(saved_env);
    if (concrete_)
      result.trace.push_back(
          TraceEvent{TraceEvent::Kind::Return, label, {}, to_concrete(*ts_, ret, capacity_), depth_});
    return ret;
  }

 public:
  SymValue eval(const Expr& e) {
    return std::visit([&](const auto& n) { return node(e, n); }, e.node);
  }

 private:
  SymValue node(const Expr& e, const IntLit& n) {
    if (e.type->is(TypeExpr::Kind::Int)) return leaf(e.type, ts_->integer(n.value));
    return leaf(e.type, ts_->bv(e.type->width, n.value));
  }
  SymValue node(const Expr& e, const BoolLit& n) { return leaf(e.type, ts_->boolean(n.value)); }
  SymValue node(const Expr& e, const UnitLit&) { return leaf(e.type, kNoTerm); }
  SymValue node(const Expr& e, const EnumLit& n) {
    return leaf(e.type, ts_->bv(enum_width(e.type->variants.size()), n.index));
  }
  SymValue node(const Expr& e, const VarRef& n) {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == n.name) return it->second;
    throw std::logic_error(fmt::format("{}: unbound variable {}", e.span.location(), n.name));
  }
  SymValue node(const Expr& e, const RecordLit& n) {
    std::vector<std::pair<std::string, SymValue>> vals;
    for (const auto& fi : n.fields) vals.emplace_back(fi.name, eval(*fi.value));
    SymValue out{e.type, kNoTerm, {}};
    for (const auto& f : e.type->fields)
      for (auto& [name, v] : vals)
        if (name == f.name) out.elems.push_back(v);
    return out;
  }
  SymValue node(const Expr& e, const VectorLit& n) {
    SymValue out{e.type, kNoTerm, {}};
    for (const auto& x : n.elems) out.elems.push_back(eval(*x));
    return out;
  }
  SymValue node(const Expr& e, const VectorRepeat& n) {
    SymValue v = eval(*n.elem);
    return SymValue{e.type, kNoTerm, std::vector<SymValue>(n.count, v)};
  }
  SymValue node(const Expr&, const FieldAccess& n) { return eval(*n.base).elems.at(n.index); }

  // Records the bounds obligation for a vector index and returns the
  // constant position when the index is constant.
  std::optional<std::size_t> check_bounds(const SymValue& vec, TermId idx, const Expr& at) {
    std::size_t len = vec.elems.size();
    std::uint32_t w = ts_->sort(idx).width;
    if (ts_->is_const(idx)) {
      if (ts_->value(idx) >= len) {
        obligation(ts_->fls(), at.span,
                   fmt::format("index {} out of bounds for length {}", ts_->value(idx).str(), len));
        return std::nullopt;
      }
      return static_cast<std::size_t>(ts_->value(idx));
    }
    if ((BigInt(1) << w) > len)
      obligation(ts_->bv_ult(idx, ts_->bv(w, len)), at.span, fmt::format("index out of bounds for length {}", len));
    return std::nullopt;
  }

  SymValue node(const Expr& e, const IndexExpr& n) {
    SymValue b = eval(*n.base);
    TermId i = eval(*n.index).term;
    if (b.type->is(TypeExpr::Kind::ArrayOf)) return leaf(b.type->elem, ts_->select(b.term, i));
    auto pos = check_bounds(b, i, e);
    if (pos) return b.elems[*pos];
    if (b.elems.empty() || ts_->is_const(i)) return lift(*ts_, zero_value(e.type), e.type);
    std::uint32_t w = ts_->sort(i).width;
    SymValue r = b.elems.back();
    for (std::size_t k = b.elems.size() - 1; k-- > 0;)
      r = sym_ite(*ts_, ts_->mk_eq(i, ts_->bv(w, k)), b.elems[k], r);
    return r;
  }
  SymValue node(const Expr& e, const SliceExpr& n) {
    return leaf(e.type, ts_->extract(eval(*n.base).term, n.hi, n.lo));
  }
  SymValue node(const Expr& e, const UpdateExpr& n) {
    SymValue b = eval(*n.base);
    TermId i = eval(*n.index).term;
    SymValue v = eval(*n.value);
    if (b.type->is(TypeExpr::Kind::ArrayOf)) return leaf(b.type, ts_->store(b.term, i, v.term));
    if (n.slice) {
      auto start = static_cast<std::size_t>(ts_->value(i));
      for (std::size_t k = 0; k < v.elems.size(); ++k) b.elems[start + k] = v.elems[k];
      return b;
    }
    auto pos = check_bounds(b, i, e);
    if (pos) {
      b.elems[*pos] = std::move(v);
      return b;
    }
    if (ts_->is_const(i)) return b;
    std::uint32_t w = ts_->sort(i).width;
    for (std::size_t k = 0; k < b.elems.size(); ++k)
      b.elems[k] = sym_ite(*ts_, ts_->mk_eq(i, ts_->bv(w, k)), v, b.elems[k]);
    return b;
  }
  SymValue node(const Expr& e, const UnaryExpr& n) {
    TermId a = eval(*n.operand).term;
    switch (e.type->kind) {
      case TypeExpr::Kind::Bool:
        return leaf(e.type, ts_->mk_not(a));
      case TypeExpr::Kind::BitInt:
        return leaf(e.type, n.op == UnaryOp::Not ? ts_->bv_not(a) : ts_->bv_neg(a));
      default:
        return leaf(e.type, ts_->int_neg(a));
    }
  }
  SymValue node(const Expr& e, const BinaryExpr& n) {
    if (n.op == BinaryOp::And || n.op == BinaryOp::Or) {
      TermId a = eval(*n.lhs).term;
      bool is_and = n.op == BinaryOp::And;
      return branch(
          a, [&] { return is_and ? eval(*n.rhs) : leaf(e.type, ts_->tru()); },
          [&] { return is_and ? leaf(e.type, ts_->fls()) : eval(*n.rhs); });
    }
    SymValue a = eval(*n.lhs);
    SymValue b = eval(*n.rhs);
    bool bv = a.type->is(TypeExpr::Kind::BitInt);
    TermStore& t = *ts_;
    switch (n.op) {
      case BinaryOp::Eq: return leaf(e.type, sym_eq(t, a, b));
      case BinaryOp::Ne: return leaf(e.type, t.mk_not(sym_eq(t, a, b)));
      case BinaryOp::Add: return leaf(e.type, bv ? t.bv_add(a.term, b.term) : t.int_add(a.term, b.term));
      case BinaryOp::Sub: return leaf(e.type, bv ? t.bv_sub(a.term, b.term) : t.int_sub(a.term, b.term));
      case BinaryOp::Mul: return leaf(e.type, bv ? t.bv_mul(a.term, b.term) : t.int_mul(a.term, b.term));
      case BinaryOp::Lt: return leaf(e.type, bv ? t.bv_ult(a.term, b.term) : t.int_lt(a.term, b.term));
      case BinaryOp::Le: return leaf(e.type, bv ? t.bv_ule(a.term, b.term) : t.int_le(a.term, b.term));
      case BinaryOp::Gt: return leaf(e.type, bv ? t.bv_ult(b.term, a.term) : t.int_lt(b.term, a.term));
      case BinaryOp::Ge: return leaf(e.type, bv ? t.bv_ule(b.term, a.term) : t.int_le(b.term, a.term));
      default: break;
    }
    throw std::logic_error(e.span.location() + ": bad binary operator");
  }
  SymValue node(const Expr& e, const CallExpr& n) {
    std::vector<SymValue> args;
    for (const auto& a : n.args) args.push_back(eval(*a));
    NodeId target = el_.tree.walk(node_, n.path);
    using K = CallTarget::Kind;
    auto cell = [&]() -> SymValue& { return store_.at(*el_.tree.node(target).cell); };
    switch (n.target.kind) {
      case K::UserFn: {
        call_string_.push_back(e.id);
        SymValue r = call(*n.target.fn, target, std::move(args));
        call_string_.pop_back();
        return r;
      }
      case K::StateGet:
      case K::ArrayGet:
        return cell();
      case K::StateSet:
      case K::ArraySet:
        cell() = std::move(args[0]);
        return leaf(e.type, kNoTerm);
      case K::ArrayRead: {
        SymValue& c = cell();
        return leaf(e.type, ts_->select(c.term, args[0].term));
      }
      case K::ArrayWrite: {
        SymValue& c = cell();
        c.term = ts_->store(c.term, args[0].term, args[1].term);
        return leaf(e.type, kNoTerm);
      }
      case K::Havoc: {
        ChoiceKey base = make_choice_key(call_string_, e.id);
        for (NodeId id : el_.tree.subtree(target)) {
          const InstanceNode& in = el_.tree.node(id);
          if (!in.cell) continue;
          const Cell& c = el_.layout.cells[*in.cell];
          TypePtr t = c.kind == Cell::Kind::Scalar ? c.value_type : TypeExpr::array_of(c.key_type, c.value_type);
          store_[*in.cell] = choose(t, base + "/" + c.path);
        }
        return leaf(e.type, kNoTerm);
      }
      case K::Unresolved:
        break;
    }
    throw std::logic_error(e.span.location() + ": unresolved call");
  }
  SymValue node(const Expr& e, const BuiltinCall& n) {
    TermId a = eval(*n.args[0]).term;
    switch (n.fn) {
      case BuiltinFn::ZeroExtend:
        return leaf(e.type, ts_->zero_ext(a, n.width - ts_->sort(a).width));
      case BuiltinFn::Truncate:
        return leaf(e.type, ts_->extract(a, n.width - 1, 0));
      case BuiltinFn::ToInt:
        return leaf(e.type, ts_->bv2int(a));
      case BuiltinFn::FromInt:
        return leaf(e.type, ts_->int2bv(a, n.width));
    }
    throw std::logic_error("bad builtin");
  }
  SymValue node(const Expr& e, const AnyExpr& n) { return choose(n.type, make_choice_key(call_string_, e.id)); }
  SymValue node(const Expr& e, const LetExpr&) { throw std::logic_error(e.span.location() + ": stray let"); }
  SymValue node(const Expr& e, const IfExpr& n) {
    TermId c = eval(*n.cond).term;
    return branch(
        c, [&] { return eval(*n.then_branch); },
        [&] { return n.else_branch ? eval(*n.else_branch) : leaf(e.type, kNoTerm); });
  }
  SymValue node(const Expr& e, const BlockExpr& n) {
    std::size_t mark = env_.size();
    for (const auto& s : n.stmts) {
      if (auto* let = s->as<LetExpr>()) {
        SymValue v = eval(*let->init);
        env_.emplace_back(let->name, std::move(v));
      } else {
        eval(*s);
      }
    }
    SymValue r = n.tail ? eval(*n.tail) : leaf(e.type, kNoTerm);
    env_.resize(mark);
    return r;
  }
  SymValue node(const Expr& e, const AssumeExpr& n) {
    assumption(eval(*n.cond).term, e.span);
    return leaf(e.type, kNoTerm);
  }
  SymValue node(const Expr& e, const AssertExpr& n) {
    obligation(eval(*n.cond).term, e.span, "assertion failed");
    return leaf(e.type, kNoTerm);
  }
  SymValue node(const Expr& e, const PrintfExpr& n) {
    // Holes are evaluated symbolically too, for their bounds obligations.
    std::string text;
    for (const auto& p : n.pieces) {
      if (!p.hole) {
        text += p.text;
        continue;
      }
      SymValue v = eval(*p.hole);
      if (concrete_) text += format_value(to_concrete(*ts_, v, capacity_));
    }
    if (concrete_) result.transcript += text;
    return leaf(e.type, kNoTerm);
  }
};

const FnDecl& find_scenario_or_throw(const Elaboration& el, const std::string& scenario) {
  const FnDecl* fn = el.program->find_scenario(scenario);
  if (!fn)
    throw std::invalid_argument(
        fmt::format("no scenario `{}` in module `{}`", scenario, el.program->root().name));
  return *fn;
}

}  // namespace

ConcreteValue to_concrete(const TermStore& ts, const SymValue& v, std::size_t array_capacity) {
  const TypePtr& t = v.type;
  auto constant = [&](TermId id) -> const BigInt& {
    if (!ts.is_const(id)) throw std::logic_error("value is not constant");
    return ts.value(id);
  };
  switch (t->kind) {
    case TypeExpr::Kind::Unit:
      return ConcreteValue::unit();
    case TypeExpr::Kind::Bool:
      return ConcreteValue::boolean(constant(v.term) == 1);
    case TypeExpr::Kind::BitInt:
      return ConcreteValue::bitvec(t->width, constant(v.term));
    case TypeExpr::Kind::Int:
      return ConcreteValue::integer(constant(v.term));
    case TypeExpr::Kind::Enum:
      return ConcreteValue::enumeration(t, static_cast<std::uint32_t>(constant(v.term)));
    case TypeExpr::Kind::Record: {
      std::vector<ConcreteValue> fs;
      for (const auto& e : v.elems) fs.push_back(to_concrete(ts, e, array_capacity));
      return ConcreteValue::record(t, std::move(fs));
    }
    case TypeExpr::Kind::Vector: {
      std::vector<ConcreteValue> es;
      for (const auto& e : v.elems) es.push_back(to_concrete(ts, e, array_capacity));
      return ConcreteValue::vector(t, std::move(es));
    }
    case TypeExpr::Kind::ArrayOf: {
      std::vector<std::pair<TermId, TermId>> writes;
      TermId cur = v.term;
      while (ts.node(cur).op == Op::Store) {
        writes.emplace_back(ts.node(cur).args[1], ts.node(cur).args[2]);
        cur = ts.node(cur).args[0];
      }
      if (ts.node(cur).op != Op::ConstArray) throw std::logic_error("array value is not constant");
      auto elem = [&](TermId id) { return to_concrete(ts, SymValue{t->elem, id, {}}, array_capacity); };
      std::size_t cap = std::max(array_capacity, writes.size());
      SparseArray a(t->key->width, elem(ts.node(cur).args[0]), cap);
      for (auto it = writes.rbegin(); it != writes.rend(); ++it) a = a.write(constant(it->first), elem(it->second));
      return ConcreteValue::of_array(t, std::make_shared<SparseArray>(std::move(a)));
    }
    case TypeExpr::Kind::Alias:
      break;
  }
  throw std::logic_error("to_concrete of alias");
}

VerificationCondition sym_exec(const Elaboration& el, const std::string& scenario) {
  const FnDecl& fn = find_scenario_or_throw(el, scenario);
  Engine eng(el, false, nullptr, 64);
  eng.run(fn);
  return std::move(eng.vc);
}

RunResult replay(const Elaboration& el, const std::string& scenario,
                 const std::map<ChoiceKey, ConcreteValue>& model, std::size_t array_capacity) {
  const FnDecl& fn = find_scenario_or_throw(el, scenario);
  Engine eng(el, true, &model, array_capacity);
  eng.run(fn);
  return std::move(eng.result);
}

}  // namespace socv
