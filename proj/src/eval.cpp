#include "socv/eval.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace socv {

ChoiceKey make_choice_key(const std::vector<std::uint32_t>& call_string, std::uint32_t site) {
  return fmt::format("{}@{}", fmt::join(call_string, ","), site);
}

const char* to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Passed: return "passed";
    case Verdict::Kind::AssertionFailed: return "assertion_failed";
    case Verdict::Kind::AssumeInfeasible: return "assume_infeasible";
  }
  return "?";
}

ConcreteValue SeededRandom::choose(const ChoiceKey&, const TypePtr& leaf) {
  switch (leaf->kind) {
    case TypeExpr::Kind::Bool:
      return ConcreteValue::boolean(rng_() & 1);
    case TypeExpr::Kind::BitInt: {
      BigInt v = 0;
      for (std::uint32_t got = 0; got < leaf->width; got += 64) v = (v << 64) | BigInt(rng_());
      return ConcreteValue::bitvec(leaf->width, v);
    }
    case TypeExpr::Kind::Int:
      return ConcreteValue::integer(static_cast<long long>(rng_() % 2001) - 1000);
    case TypeExpr::Kind::Enum:
      return ConcreteValue::enumeration(
          leaf, static_cast<std::uint32_t>(rng_() % leaf->variants.size()));
    case TypeExpr::Kind::ArrayOf: {
      ConcreteValue arr = zero_value(leaf);
      SparseArray a(leaf->key->width, choose("", leaf->elem), 64);
      arr.array = std::make_shared<SparseArray>(std::move(a));
      return arr;
    }
    default:
      break;
  }
  throw std::logic_error("choice of non-scalar type " + to_string(*leaf));
}

ConcreteValue ModelOracle::choose(const ChoiceKey& key, const TypePtr& leaf) {
  auto it = values_.find(key);
  if (it == values_.end()) return zero_value(leaf);
  if (!value_has_type(it->second, *leaf))
    throw ModelError(fmt::format("model value for choice {} does not have type {}", key,
                                 to_string(*leaf)));
  ConcreteValue v = it->second;
  v.type = leaf;  // enum values from a model carry no enum name
  return v;
}

ConcreteValue ScriptedSource::choose(const ChoiceKey&, const TypePtr& leaf) {
  std::size_t i = requested_.size();
  requested_.push_back(leaf);
  if (i < script_.size()) return script_[i];
  return zero_value(leaf);
}

namespace {

ConcreteValue eval_closed(const Expr& e);

}  // namespace

StateStore init_store(const Elaboration& el, std::size_t array_capacity) {
  StateStore s;
  for (const Cell& c : el.layout.cells) {
    if (c.kind == Cell::Kind::Scalar) {
      s.cells.push_back(eval_closed(*c.init));
    } else {
      TypePtr t = TypeExpr::array_of(c.key_type, c.value_type);
      ConcreteValue dflt = c.init ? eval_closed(*c.init) : zero_value(c.value_type);
      s.cells.push_back(ConcreteValue::of_array(
          t, std::make_shared<SparseArray>(c.key_type->width, std::move(dflt), array_capacity)));
    }
  }
  return s;
}

namespace {

struct Stop {
  Verdict verdict;
};

class Interpreter {
 public:
  Interpreter(const Elaboration* el, AnySource* anys, std::size_t capacity)
      : el_(el), anys_(anys), capacity_(capacity) {}

  RunResult result;

  void run(const FnDecl& fn) {
    result.store = init_store(*el_, capacity_);
    try {
      call(fn, InstanceTree::kRoot, {});
      result.verdict.kind = Verdict::Kind::Passed;
    } catch (Stop& s) {
      result.verdict = std::move(s.verdict);
    }
  }

  ConcreteValue eval(const Expr& e) {
    ConcreteValue v = std::visit([&](const auto& n) { return node(e, n); }, e.node);
#ifndef NDEBUG
    if (e.type && !value_has_type(v, *e.type))
      throw std::logic_error(fmt::format("{}: value {} does not match static type {}",
                                         e.span.location(), format_value(v), to_string(*e.type)));
#endif
    return v;
  }

 private:
  const Elaboration* el_ = nullptr;
  AnySource* anys_ = nullptr;
  std::size_t capacity_ = 64;

  NodeId node_ = InstanceTree::kRoot;
  std::vector<std::uint32_t> call_string_;
  std::vector<std::pair<std::string, ConcreteValue>> env_;
  std::size_t depth_ = 0;

  [[noreturn]] void stop(Verdict::Kind k, const SourceSpan& site, std::string msg) {
    throw Stop{Verdict{k, site, std::move(msg)}};
  }

  std::string fn_label(const FnDecl& fn, NodeId node) const {
    const InstanceNode& n = el_->tree.node(node);
    return (n.path.empty() ? n.module->name : n.path) + "." + fn.name;
  }

  ConcreteValue call(const FnDecl& fn, NodeId node, std::vector<ConcreteValue> args) {
    std::string label = fn_label(fn, node);
    result.trace.push_back(TraceEvent{TraceEvent::Kind::Call, label, args, std::nullopt, depth_});
    auto saved_env = std::move(env_);
    NodeId saved_node = node_;
    env_.clear();
    for (std::size_t i = 0; i < fn.params.size(); ++i) env_.emplace_back(fn.params[i].name, std::move(args[i]));
    node_ = node;
    ++depth_;
    ConcreteValue ret = eval(*fn.body);
    --depth_;
    node_ = saved_node;
    env_ = std::move(saved_env);
    result.trace.push_back(TraceEvent{TraceEvent::Kind::Return, label, {}, ret, depth_});
    return ret;
  }

  ConcreteValue choose(const TypePtr& t, const ChoiceKey& key) {
    switch (t->kind) {
      case TypeExpr::Kind::Record: {
        std::vector<ConcreteValue> fs;
        for (const auto& f : t->fields) fs.push_back(choose(f.type, key + "." + f.name));
        return ConcreteValue::record(t, std::move(fs));
      }
      case TypeExpr::Kind::Vector: {
        std::vector<ConcreteValue> es;
        for (std::uint64_t i = 0; i < t->length; ++i)
          es.push_back(choose(t->elem, fmt::format("{}[{}]", key, i)));
        return ConcreteValue::vector(t, std::move(es));
      }
      case TypeExpr::Kind::Unit:
        return ConcreteValue::unit();
      case TypeExpr::Kind::ArrayOf: {
        ConcreteValue v = anys_->choose(key, t);
        // Re-home the chosen array under this run's capacity.
        SparseArray a(t->key->width, v.array->default_value(), capacity_);
        for (const auto& [k, x] : v.array->entries()) a = a.write(k, x);
        return ConcreteValue::of_array(t, std::make_shared<SparseArray>(std::move(a)));
      }
      default:
        return anys_->choose(key, t);
    }
  }

  // --- expression forms ---

  ConcreteValue node(const Expr& e, const IntLit& n) {
    if (e.type->is(TypeExpr::Kind::Int)) return ConcreteValue::integer(n.value);
    return ConcreteValue::bitvec(e.type->width, n.value);
  }
  ConcreteValue node(const Expr&, const BoolLit& n) { return ConcreteValue::boolean(n.value); }
  ConcreteValue node(const Expr&, const UnitLit&) { return ConcreteValue::unit(); }
  ConcreteValue node(const Expr& e, const EnumLit& n) { return ConcreteValue::enumeration(e.type, n.index); }
  ConcreteValue node(const Expr& e, const VarRef& n) {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == n.name) return it->second;
    throw std::logic_error(fmt::format("{}: unbound variable {}", e.span.location(), n.name));
  }
  ConcreteValue node(const Expr& e, const RecordLit& n) {
    // Evaluate in source order, store in declaration order.
    std::vector<std::pair<std::string, ConcreteValue>> vals;
    for (const auto& fi : n.fields) vals.emplace_back(fi.name, eval(*fi.value));
    std::vector<ConcreteValue> fs;
    for (const auto& f : e.type->fields)
      for (auto& [name, v] : vals)
        if (name == f.name) fs.push_back(v);
    return ConcreteValue::record(e.type, std::move(fs));
  }
  ConcreteValue node(const Expr& e, const VectorLit& n) {
    std::vector<ConcreteValue> es;
    for (const auto& x : n.elems) es.push_back(eval(*x));
    return ConcreteValue::vector(e.type, std::move(es));
  }
  ConcreteValue node(const Expr& e, const VectorRepeat& n) {
    ConcreteValue v = eval(*n.elem);
    return ConcreteValue::vector(e.type, std::vector<ConcreteValue>(n.count, v));
  }
  ConcreteValue node(const Expr&, const FieldAccess& n) { return eval(*n.base).elems.at(n.index); }

  std::size_t vector_index(const ConcreteValue& vec, const ConcreteValue& idx, const Expr& at) {
    if (idx.num >= vec.elems.size())
      stop(Verdict::Kind::AssertionFailed, at.span,
           fmt::format("index {} out of bounds for length {}", idx.num.str(), vec.elems.size()));
    return static_cast<std::size_t>(idx.num);
  }

  ConcreteValue node(const Expr& e, const IndexExpr& n) {
    ConcreteValue b = eval(*n.base);
    ConcreteValue i = eval(*n.index);
    if (b.kind == ConcreteValue::Kind::Array) return sparse_read(b, i.num);
    return b.elems[vector_index(b, i, e)];
  }
  ConcreteValue node(const Expr&, const SliceExpr& n) {
    ConcreteValue b = eval(*n.base);
    return ConcreteValue::bitvec(n.hi - n.lo + 1, b.num >> n.lo);
  }
  ConcreteValue node(const Expr& e, const UpdateExpr& n) {
    ConcreteValue b = eval(*n.base);
    ConcreteValue i = eval(*n.index);
    ConcreteValue v = eval(*n.value);
    if (b.kind == ConcreteValue::Kind::Array) return sparse_write(b, i.num, std::move(v));
    if (!n.slice) {
      b.elems[vector_index(b, i, e)] = std::move(v);
      return b;
    }
    auto start = static_cast<std::size_t>(i.num);
    for (std::size_t k = 0; k < v.elems.size(); ++k) b.elems[start + k] = v.elems[k];
    return b;
  }
  ConcreteValue node(const Expr& e, const UnaryExpr& n) {
    ConcreteValue v = eval(*n.operand);
    switch (v.kind) {
      case ConcreteValue::Kind::Bool:
        return ConcreteValue::boolean(!v.b);
      case ConcreteValue::Kind::BitVec: {
        BigInt mask = (BigInt(1) << v.width()) - 1;
        if (n.op == UnaryOp::Not) return ConcreteValue::bitvec(v.width(), mask ^ v.num);
        return ConcreteValue::bitvec(v.width(), -v.num);
      }
      case ConcreteValue::Kind::Int:
        return ConcreteValue::integer(-v.num);
      default:
        throw std::logic_error(e.span.location() + ": bad unary operand");
    }
  }
  ConcreteValue node(const Expr& e, const BinaryExpr& n) {
    if (n.op == BinaryOp::And) {
      if (!eval(*n.lhs).b) return ConcreteValue::boolean(false);
      return eval(*n.rhs);
    }
    if (n.op == BinaryOp::Or) {
      if (eval(*n.lhs).b) return ConcreteValue::boolean(true);
      return eval(*n.rhs);
    }
    ConcreteValue a = eval(*n.lhs);
    ConcreteValue b = eval(*n.rhs);
    bool bv = a.kind == ConcreteValue::Kind::BitVec;
    auto arith = [&](BigInt r) {
      return bv ? ConcreteValue::bitvec(a.width(), r) : ConcreteValue::integer(r);
    };
    switch (n.op) {
      case BinaryOp::Add: return arith(a.num + b.num);
      case BinaryOp::Sub: return arith(a.num - b.num);
      case BinaryOp::Mul: return arith(a.num * b.num);
      case BinaryOp::Lt: return ConcreteValue::boolean(a.num < b.num);
      case BinaryOp::Le: return ConcreteValue::boolean(a.num <= b.num);
      case BinaryOp::Gt: return ConcreteValue::boolean(a.num > b.num);
      case BinaryOp::Ge: return ConcreteValue::boolean(a.num >= b.num);
      case BinaryOp::Eq: return ConcreteValue::boolean(values_equal(a, b));
      case BinaryOp::Ne: return ConcreteValue::boolean(!values_equal(a, b));
      default: break;
    }
    throw std::logic_error(e.span.location() + ": bad binary operator");
  }
  ConcreteValue node(const Expr& e, const CallExpr& n) {
    std::vector<ConcreteValue> args;
    for (const auto& a : n.args) args.push_back(eval(*a));
    NodeId target = el_->tree.walk(node_, n.path);
    using K = CallTarget::Kind;
    auto cell = [&]() -> ConcreteValue& { return result.store.cells.at(*el_->tree.node(target).cell); };
    switch (n.target.kind) {
      case K::UserFn: {
        call_string_.push_back(e.id);
        ConcreteValue r = call(*n.target.fn, target, std::move(args));
        call_string_.pop_back();
        return r;
      }
      case K::StateGet:
      case K::ArrayGet:
        return cell();
      case K::StateSet:
      case K::ArraySet:
        cell() = std::move(args[0]);
        return ConcreteValue::unit();
      case K::ArrayRead:
        return sparse_read(cell(), args[0].num);
      case K::ArrayWrite:
        cell() = sparse_write(cell(), args[0].num, std::move(args[1]));
        return ConcreteValue::unit();
      case K::Havoc: {
        ChoiceKey base = make_choice_key(call_string_, e.id);
        for (NodeId id : el_->tree.subtree(target)) {
          const InstanceNode& in = el_->tree.node(id);
          if (!in.cell) continue;
          const Cell& c = el_->layout.cells[*in.cell];
          TypePtr t = c.kind == Cell::Kind::Scalar ? c.value_type
                                                   : TypeExpr::array_of(c.key_type, c.value_type);
          result.store.cells[*in.cell] = choose(t, base + "/" + c.path);
        }
        return ConcreteValue::unit();
      }
      case K::Unresolved:
        break;
    }
    throw std::logic_error(e.span.location() + ": unresolved call");
  }
  ConcreteValue node(const Expr&, const BuiltinCall& n) {
    ConcreteValue a = eval(*n.args[0]);
    switch (n.fn) {
      case BuiltinFn::ZeroExtend:
      case BuiltinFn::Truncate:
      case BuiltinFn::FromInt:
        return ConcreteValue::bitvec(n.width, a.num);
      case BuiltinFn::ToInt:
        return ConcreteValue::integer(a.num);
    }
    return a;
  }
  ConcreteValue node(const Expr& e, const AnyExpr& n) {
    return choose(n.type, make_choice_key(call_string_, e.id));
  }
  ConcreteValue node(const Expr& e, const LetExpr&) {
    throw std::logic_error(e.span.location() + ": stray let");
  }
  ConcreteValue node(const Expr&, const IfExpr& n) {
    if (eval(*n.cond).b) return eval(*n.then_branch);
    if (n.else_branch) return eval(*n.else_branch);
    return ConcreteValue::unit();
  }
  ConcreteValue node(const Expr&, const BlockExpr& n) {
    std::size_t mark = env_.size();
    for (const auto& s : n.stmts) {
      if (auto* let = s->as<LetExpr>()) {
        ConcreteValue v = eval(*let->init);
        env_.emplace_back(let->name, std::move(v));
      } else {
        eval(*s);
      }
    }
    ConcreteValue r = n.tail ? eval(*n.tail) : ConcreteValue::unit();
    env_.resize(mark);
    return r;
  }
  ConcreteValue node(const Expr& e, const AssumeExpr& n) {
    if (!eval(*n.cond).b) stop(Verdict::Kind::AssumeInfeasible, e.span, "assumption does not hold");
    return ConcreteValue::unit();
  }
  ConcreteValue node(const Expr& e, const AssertExpr& n) {
    if (!eval(*n.cond).b) stop(Verdict::Kind::AssertionFailed, e.span, "assertion failed");
    return ConcreteValue::unit();
  }
  ConcreteValue node(const Expr&, const PrintfExpr& n) {
    for (const auto& p : n.pieces) result.transcript += p.hole ? format_value(eval(*p.hole)) : p.text;
    return ConcreteValue::unit();
  }
};

// Initial values are closed pure expressions.
ConcreteValue eval_closed(const Expr& e) {
  Interpreter in(nullptr, nullptr, 64);
  return in.eval(e);
}

}  // namespace

RunResult run_scenario(const Elaboration& el, const std::string& scenario, AnySource& anys,
                       std::size_t array_capacity) {
  const FnDecl* fn = el.program->find_scenario(scenario);
  if (!fn) throw std::invalid_argument(fmt::format("no scenario `{}` in module `{}`", scenario,
                                                   el.program->root().name));
  Interpreter in(&el, &anys, array_capacity);
  in.run(*fn);
  return std::move(in.result);
}

std::string trace_json(const RunResult& r) {
  std::string out;
  for (const auto& ev : r.trace) {
    nlohmann::json j;
    if (ev.kind == TraceEvent::Kind::Call) {
      j["event"] = "call";
      j["fn"] = ev.fn;
      j["args"] = nlohmann::json::array();
      for (const auto& a : ev.args) j["args"].push_back(format_value(a));
    } else {
      j["event"] = "return";
      j["fn"] = ev.fn;
      j["value"] = format_value(*ev.value);
    }
    j["depth"] = ev.depth;
    out += j.dump() + "\n";
  }
  nlohmann::json v;
  v["event"] = "verdict";
  v["verdict"] = to_string(r.verdict.kind);
  if (r.verdict.kind != Verdict::Kind::Passed) {
    v["site"] = r.verdict.site.location();
    v["message"] = r.verdict.message;
  }
  out += v.dump() + "\n";
  return out;
}

std::optional<std::uint64_t> domain_size(const TypeExpr& t) {
  switch (t.kind) {
    case TypeExpr::Kind::Bool: return 2;
    case TypeExpr::Kind::BitInt:
      if (t.width <= 16) return std::uint64_t{1} << t.width;
      return std::nullopt;
    case TypeExpr::Kind::Enum: return t.variants.size();
    default: return std::nullopt;
  }
}

ConcreteValue domain_value(const TypePtr& t, std::uint64_t i) {
  switch (t->kind) {
    case TypeExpr::Kind::Bool: return ConcreteValue::boolean(i != 0);
    case TypeExpr::Kind::BitInt: return ConcreteValue::bitvec(t->width, BigInt(i));
    case TypeExpr::Kind::Enum: return ConcreteValue::enumeration(t, static_cast<std::uint32_t>(i));
    default: break;
  }
  throw std::logic_error("domain_value of " + to_string(*t));
}

namespace {

void explore(const Elaboration& el, const std::string& scenario, std::size_t capacity,
             std::vector<ConcreteValue>& prefix, std::uint64_t max_runs, ExhaustiveResult& out) {
  if (out.runs >= max_runs) {
    out.complete = false;
    return;
  }
  ScriptedSource src(prefix);
  RunResult r = run_scenario(el, scenario, src, capacity);
  ++out.runs;
  if (src.requested().size() <= prefix.size()) {
    ++out.leaves;
    if (r.verdict.kind == Verdict::Kind::AssertionFailed) {
      ++out.violations;
      if (!out.witness) out.witness = prefix;
    }
    return;
  }
  const TypePtr& next = src.requested()[prefix.size()];
  auto n = domain_size(*next);
  if (!n) {
    out.complete = false;
    return;
  }
  for (std::uint64_t i = 0; i < *n; ++i) {
    prefix.push_back(domain_value(next, i));
    explore(el, scenario, capacity, prefix, max_runs, out);
    prefix.pop_back();
  }
}

}  // namespace

ExhaustiveResult enumerate_choices(const Elaboration& el, const std::string& scenario,
                                   std::size_t array_capacity, std::uint64_t max_runs) {
  ExhaustiveResult out;
  std::vector<ConcreteValue> prefix;
  explore(el, scenario, array_capacity, prefix, max_runs, out);
  return out;
}

}  // namespace socv
