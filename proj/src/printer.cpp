#include <fmt/format.h>

#include "socv/parser.hpp"

namespace socv {

namespace {

int precedence(const Expr& e) {
  if (auto* b = e.as<BinaryExpr>()) {
    switch (b->op) {
      case BinaryOp::Or: return 1;
      case BinaryOp::And: return 2;
      case BinaryOp::Eq:
      case BinaryOp::Ne: return 3;
      case BinaryOp::Lt:
      case BinaryOp::Le:
      case BinaryOp::Gt:
      case BinaryOp::Ge: return 4;
      case BinaryOp::Add:
      case BinaryOp::Sub: return 5;
      case BinaryOp::Mul: return 6;
    }
  }
  if (e.as<UnaryExpr>()) return 7;
  return 9;
}

class Printer {
 public:
  std::string out;

  void program(const Program& p) {
    for (const auto& a : p.aliases) out += fmt::format("type {} = {};\n\n", a.name, to_string(*a.type));
    for (const auto& e : p.enums) {
      out += fmt::format("enum {} {{", e.name);
      for (std::size_t i = 0; i < e.variants.size(); ++i)
        out += (i ? ", " : " ") + e.variants[i];
      out += " }\n\n";
    }
    for (const auto& m : p.modules) module(m);
  }

  void module(const ModuleDecl& m) {
    out += fmt::format("module {} {{\n", m.name);
    for (const auto& i : m.instances) {
      out += fmt::format("  instance {}: ", i.name);
      switch (i.kind) {
        case InstanceDecl::Kind::Module:
          out += i.module_name;
          break;
        case InstanceDecl::Kind::State:
          out += fmt::format("State<{}>(", to_string(*i.value_type));
          expr(*i.init, 1);
          out += ")";
          break;
        case InstanceDecl::Kind::Array:
          out += fmt::format("Array<{}, {}>", to_string(*i.key_type), to_string(*i.value_type));
          if (i.init && !i.init->span.generated) {
            out += "(";
            expr(*i.init, 1);
            out += ")";
          }
          break;
      }
      out += ";\n";
    }
    for (const auto& c : m.callees) out += fmt::format("  callee {}: {};\n", c.name, c.module_name);
    for (const auto& w : m.wirings)
      out += fmt::format("  {} -> {};\n", fmt::join(w.source, "."), fmt::join(w.target, "."));
    for (const auto& f : m.fns) {
      out += "\n  ";
      if (f.is_mut) out += "mut ";
      out += fmt::format("fn {}(", f.name);
      for (std::size_t i = 0; i < f.params.size(); ++i) {
        if (i) out += ", ";
        out += f.params[i].name + ": " + to_string(*f.params[i].type);
      }
      out += ")";
      if (f.ret && !f.ret->is(TypeExpr::Kind::Unit)) out += " -> " + to_string(*f.ret);
      out += " ";
      block(*f.body->as<BlockExpr>(), 1);
      out += "\n";
    }
    out += "}\n\n";
  }

  void indent(int depth) { out.append(static_cast<std::size_t>(depth) * 2, ' '); }

  void block(const BlockExpr& b, int depth) {
    if (b.stmts.empty() && !b.tail) {
      out += "{}";
      return;
    }
    out += "{\n";
    for (const auto& s : b.stmts) {
      indent(depth + 1);
      expr(*s, depth + 1);
      out += ";\n";
    }
    if (b.tail) {
      indent(depth + 1);
      expr(*b.tail, depth + 1);
      out += "\n";
    }
    indent(depth);
    out += "}";
  }

  void operand(const Expr& e, int min_prec, int depth) {
    bool paren = precedence(e) < min_prec;
    if (paren) out += "(";
    expr(e, depth);
    if (paren) out += ")";
  }

  void expr(const Expr& e, int depth) {
    std::visit([&](const auto& n) { node(n, depth); }, e.node);
  }

  void node(const IntLit& n, int) {
    out += n.value.str();
    if (n.width) out += fmt::format("u{}", *n.width);
  }
  void node(const BoolLit& n, int) { out += n.value ? "true" : "false"; }
  void node(const UnitLit&, int) { out += "()"; }
  void node(const EnumLit& n, int) { out += n.enum_name + "::" + n.variant; }
  void node(const VarRef& n, int) { out += n.name; }
  void node(const RecordLit& n, int depth) {
    out += "{ ";
    for (std::size_t i = 0; i < n.fields.size(); ++i) {
      if (i) out += ", ";
      out += n.fields[i].name + ": ";
      expr(*n.fields[i].value, depth);
    }
    out += " }";
  }
  void node(const VectorLit& n, int depth) {
    out += "[";
    for (std::size_t i = 0; i < n.elems.size(); ++i) {
      if (i) out += ", ";
      expr(*n.elems[i], depth);
    }
    out += "]";
  }
  void node(const VectorRepeat& n, int depth) {
    out += "[";
    expr(*n.elem, depth);
    out += fmt::format("; {}]", n.count);
  }
  void node(const FieldAccess& n, int depth) {
    operand(*n.base, 8, depth);
    out += "." + n.field;
  }
  void node(const IndexExpr& n, int depth) {
    operand(*n.base, 8, depth);
    out += "[";
    expr(*n.index, depth);
    out += "]";
  }
  void node(const SliceExpr& n, int depth) {
    operand(*n.base, 8, depth);
    out += fmt::format("[{} downto {}]", n.hi, n.lo);
  }
  void node(const UpdateExpr& n, int depth) {
    operand(*n.base, 8, depth);
    out += "[";
    expr(*n.index, depth);
    out += n.slice ? ".. := " : " := ";
    expr(*n.value, depth);
    out += "]";
  }
  void node(const UnaryExpr& n, int depth) {
    out += to_string(n.op);
    operand(*n.operand, 7, depth);
  }
  void node(const BinaryExpr& n, int depth) {
    int p = 0;
    switch (n.op) {
      case BinaryOp::Or: p = 1; break;
      case BinaryOp::And: p = 2; break;
      case BinaryOp::Eq:
      case BinaryOp::Ne: p = 3; break;
      case BinaryOp::Lt:
      case BinaryOp::Le:
      case BinaryOp::Gt:
      case BinaryOp::Ge: p = 4; break;
      case BinaryOp::Add:
      case BinaryOp::Sub: p = 5; break;
      case BinaryOp::Mul: p = 6; break;
    }
    operand(*n.lhs, p, depth);
    out += fmt::format(" {} ", to_string(n.op));
    operand(*n.rhs, p + 1, depth);
  }
  void args(const std::vector<ExprPtr>& as, int depth) {
    out += "(";
    for (std::size_t i = 0; i < as.size(); ++i) {
      if (i) out += ", ";
      expr(*as[i], depth);
    }
    out += ")";
  }
  void node(const CallExpr& n, int depth) {
    for (const auto& s : n.path) out += s + ".";
    out += n.name;
    args(n.args, depth);
  }
  void node(const BuiltinCall& n, int depth) {
    out += to_string(n.fn);
    if (n.fn != BuiltinFn::ToInt) out += fmt::format("<{}>", n.width);
    args(n.args, depth);
  }
  void node(const AnyExpr& n, int) { out += fmt::format("any<{}>", to_string(*n.type)); }
  void node(const LetExpr& n, int depth) {
    out += "let " + n.name;
    if (n.annotation) out += ": " + to_string(*n.annotation);
    out += " = ";
    expr(*n.init, depth);
  }
  void node(const IfExpr& n, int depth) {
    out += "if ";
    expr(*n.cond, depth);
    out += " ";
    block(*n.then_branch->as<BlockExpr>(), depth);
    if (n.else_branch) {
      out += " else ";
      if (auto* b = n.else_branch->as<BlockExpr>()) {
        block(*b, depth);
      } else {
        expr(*n.else_branch, depth);
      }
    }
  }
  void node(const BlockExpr& n, int depth) { block(n, depth); }
  void node(const AssumeExpr& n, int depth) {
    out += "assume(";
    expr(*n.cond, depth);
    out += ")";
  }
  void node(const AssertExpr& n, int depth) {
    out += "assert(";
    expr(*n.cond, depth);
    out += ")";
  }
  void node(const PrintfExpr& n, int) { out += "printf(\"" + n.format + "\")"; }
};

}  // namespace

std::string pretty_print(const Program& p) {
  Printer pr;
  pr.program(p);
  return pr.out;
}

std::string pretty_print(const Expr& e) {
  Printer pr;
  pr.expr(e, 0);
  return pr.out;
}

}  // namespace socv
