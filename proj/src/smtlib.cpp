#include "socv/smtlib.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <set>

namespace socv {

namespace {

std::string bv_literal(const BigInt& v, std::uint32_t width) {
  std::string out;
  if (width % 4 == 0) {
    for (std::uint32_t i = width / 4; i-- > 0;)
      out += "0123456789abcdef"[static_cast<int>((v >> (4 * i)) & 0xf)];
    return "#x" + out;
  }
  for (std::uint32_t i = width; i-- > 0;) out += ((v >> i) & 1) != 0 ? '1' : '0';
  return "#b" + out;
}

std::string const_literal(const TermNode& n) {
  switch (n.sort.kind) {
    case Sort::Kind::Bool: return n.value == 1 ? "true" : "false";
    case Sort::Kind::BitVec: return bv_literal(n.value, n.sort.width);
    case Sort::Kind::Int: return n.value < 0 ? fmt::format("(- {})", BigInt(-n.value).str()) : n.value.str();
    case Sort::Kind::Array: break;
  }
  throw std::logic_error("array constant");
}

class Printer {
 public:
  Printer(const TermStore& ts, const std::map<TermId, std::string>& names) : ts_(ts), names_(names) {}

  // Renders `t`; subterms with a name are referenced, not inlined. The
  // root itself is always expanded.
  std::string render(TermId t, bool root) {
    if (!root) {
      auto it = names_.find(t);
      if (it != names_.end()) return it->second;
    }
    const TermNode& n = ts_.node(t);
    auto args = [&](const char* head) {
      std::string s = std::string("(") + head;
      for (TermId a : n.args) s += " " + render(a, false);
      return s + ")";
    };
    switch (n.op) {
      case Op::Const: return const_literal(n);
      case Op::Var: return fmt::format("c{}", n.p0);
      case Op::Not: return args("not");
      case Op::And: return args("and");
      case Op::Or: return args("or");
      case Op::Ite: return args("ite");
      case Op::Eq: return args("=");
      case Op::BvNot: return args("bvnot");
      case Op::BvNeg: return args("bvneg");
      case Op::BvAdd: return args("bvadd");
      case Op::BvSub: return args("bvsub");
      case Op::BvMul: return args("bvmul");
      case Op::BvUlt: return args("bvult");
      case Op::BvUle: return args("bvule");
      case Op::IntNeg: return args("-");
      case Op::IntAdd: return args("+");
      case Op::IntSub: return args("-");
      case Op::IntMul: return args("*");
      case Op::IntLt: return args("<");
      case Op::IntLe: return args("<=");
      case Op::Extract: return args(fmt::format("(_ extract {} {})", n.p0, n.p1).c_str());
      case Op::ZeroExt: return args(fmt::format("(_ zero_extend {})", n.p0).c_str());
      case Op::Bv2Int: return args("bv2nat");
      case Op::Int2Bv: return args(fmt::format("(_ int2bv {})", n.sort.width).c_str());
      case Op::Select: return args("select");
      case Op::Store: return args("store");
      case Op::ConstArray: return args(fmt::format("(as const {})", to_string(n.sort)).c_str());
    }
    return "?";
  }

 private:
  const TermStore& ts_;
  const std::map<TermId, std::string>& names_;
};

}  // namespace

std::string term_to_smtlib(const TermStore& ts, TermId t) {
  std::map<TermId, std::string> none;
  return Printer(ts, none).render(t, true);
}

std::string emit_smtlib(const VerificationCondition& vc) {
  const TermStore& ts = *vc.terms;
  // Post-order walk (iterative) with parent counts.
  std::vector<std::uint32_t> refs(ts.size(), 0);
  std::vector<TermId> order;
  {
    std::vector<std::pair<TermId, bool>> stack{{vc.query, false}};
    std::vector<bool> seen(ts.size(), false);
    while (!stack.empty()) {
      auto [t, expanded] = stack.back();
      stack.pop_back();
      if (expanded) {
        order.push_back(t);
        continue;
      }
      if (seen[t]) continue;
      seen[t] = true;
      stack.push_back({t, true});
      const auto& args = ts.node(t).args;
      for (auto it = args.rbegin(); it != args.rend(); ++it) {
        ++refs[*it];
        if (!seen[*it]) stack.push_back({*it, false});
      }
    }
  }
  std::map<TermId, std::string> names;
  std::string defs;
  Printer pr(ts, names);
  std::size_t k = 0;
  for (TermId t : order) {
    const TermNode& n = ts.node(t);
    if (t == vc.query || refs[t] < 2 || n.op == Op::Const || n.op == Op::Var) continue;
    std::string name = fmt::format("t{}", k++);
    defs += fmt::format("(define-fun {} () {} {})\n", name, to_string(n.sort), pr.render(t, true));
    names.emplace(t, name);
  }

  std::string out;
  out += "(set-option :produce-models true)\n";
  out += fmt::format("(set-logic {})\n", ts.uses_int(vc.query) ? "ALL" : "QF_ABV");
  for (std::size_t i = 0; i < vc.registry.size(); ++i) {
    const ChoiceVar& c = vc.registry[i];
    out += fmt::format("(declare-const {} {}) ; {} : {}\n", vc.var_name(i), to_string(ts.sort(c.term)),
                       c.key, to_string(*c.type));
  }
  out += defs;
  out += fmt::format("(assert {})\n", pr.render(vc.query, true));
  out += "(check-sat)\n(get-model)\n";
  return out;
}

std::string SExpr::str() const {
  if (is_atom) return atom;
  std::string s = "(";
  for (std::size_t i = 0; i < list.size(); ++i) s += (i ? " " : "") + list[i].str();
  return s + ")";
}

std::vector<SExpr> parse_sexprs(std::string_view text) {
  std::vector<std::vector<SExpr>> stack(1);
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '(') {
      stack.emplace_back();
      ++i;
    } else if (c == ')') {
      if (stack.size() < 2) throw ModelError("unbalanced `)` in solver output");
      SExpr e;
      e.is_atom = false;
      e.list = std::move(stack.back());
      stack.pop_back();
      stack.back().push_back(std::move(e));
      ++i;
    } else if (c == '"' || c == '|') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != c) ++j;
      if (j >= text.size()) throw ModelError("unterminated literal in solver output");
      stack.back().push_back(SExpr{true, std::string(text.substr(i, j + 1 - i)), {}});
      i = j + 1;
    } else {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '(' &&
             text[j] != ')' && text[j] != ';')
        ++j;
      stack.back().push_back(SExpr{true, std::string(text.substr(i, j - i)), {}});
      i = j;
    }
  }
  if (stack.size() != 1) throw ModelError("unbalanced `(` in solver output");
  return std::move(stack.front());
}

namespace {

struct FunDef {
  std::vector<std::string> params;
  SExpr body;
};

class ModelReader {
 public:
  std::map<std::string, FunDef> defs;

  ConcreteValue value(const SExpr& e, const TypePtr& t, const std::string& name) {
    switch (t->kind) {
      case TypeExpr::Kind::Bool:
        if (e.is_atom && (e.atom == "true" || e.atom == "false")) return ConcreteValue::boolean(e.atom == "true");
        break;
      case TypeExpr::Kind::BitInt: {
        auto [v, w] = bitvec(e, name);
        if (w != t->width) break;
        return ConcreteValue::bitvec(w, v);
      }
      case TypeExpr::Kind::Enum: {
        auto [v, w] = bitvec(e, name);
        if (w != enum_width(t->variants.size()) || v >= t->variants.size()) break;
        return ConcreteValue::enumeration(t, static_cast<std::uint32_t>(v));
      }
      case TypeExpr::Kind::Int:
        return ConcreteValue::integer(integer(e, name));
      case TypeExpr::Kind::ArrayOf:
        return array(e, t, name);
      default:
        break;
    }
    throw ModelError(fmt::format("model value `{}` for {} does not have sort {}", e.str(), name,
                                 to_string(sort_of(*t))));
  }

 private:
  std::pair<BigInt, std::uint32_t> bitvec(const SExpr& e, const std::string& name) {
    if (e.is_atom && e.atom.size() > 2 && e.atom[0] == '#') {
      BigInt v = 0;
      std::string digits = e.atom.substr(2);
      if (e.atom[1] == 'b') {
        for (char c : digits) v = v * 2 + (c == '1' ? 1 : 0);
        return {v, static_cast<std::uint32_t>(digits.size())};
      }
      if (e.atom[1] == 'x') {
        for (char c : digits) v = v * 16 + std::stoi(std::string(1, c), nullptr, 16);
        return {v, static_cast<std::uint32_t>(digits.size() * 4)};
      }
    }
    // (_ bvN w)
    if (!e.is_atom && e.list.size() == 3 && e.list[0].atom == "_" && e.list[1].atom.rfind("bv", 0) == 0)
      return {BigInt(e.list[1].atom.substr(2)), static_cast<std::uint32_t>(std::stoul(e.list[2].atom))};
    throw ModelError(fmt::format("expected a bitvector for {}, found `{}`", name, e.str()));
  }

  BigInt integer(const SExpr& e, const std::string& name) {
    auto numeral = [](const std::string& s) {
      return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    if (e.is_atom && numeral(e.atom)) return BigInt(e.atom);
    if (!e.is_atom && e.list.size() == 2 && e.list[0].atom == "-" && e.list[1].is_atom && numeral(e.list[1].atom))
      return -BigInt(e.list[1].atom);
    throw ModelError(fmt::format("expected an integer for {}, found `{}`", name, e.str()));
  }

  ConcreteValue array(const SExpr& e, const TypePtr& t, const std::string& name) {
    auto elem = [&](const SExpr& x) { return value(x, t->elem, name); };
    auto key = [&](const SExpr& x) {
      auto [v, w] = bitvec(x, name);
      if (w != t->key->width) throw ModelError(fmt::format("array key width mismatch in {}", name));
      return v;
    };
    if (!e.is_atom && e.list.size() == 2 && !e.list[0].is_atom && e.list[0].list.size() == 3 &&
        e.list[0].list[0].atom == "as" && e.list[0].list[1].atom == "const") {
      return ConcreteValue::of_array(t, std::make_shared<SparseArray>(t->key->width, elem(e.list[1]), SIZE_MAX));
    }
    if (!e.is_atom && e.list.size() == 4 && e.list[0].atom == "store") {
      ConcreteValue base = array(e.list[1], t, name);
      return sparse_write(base, key(e.list[2]), elem(e.list[3]));
    }
    if (!e.is_atom && e.list.size() == 3 && e.list[0].atom == "_" && e.list[1].atom == "as-array") {
      auto it = defs.find(e.list[2].atom);
      if (it == defs.end() || it->second.params.size() != 1)
        throw ModelError(fmt::format("unknown array function `{}` in model", e.list[2].atom));
      return function(it->second.params[0], it->second.body, t, name);
    }
    if (!e.is_atom && e.list.size() == 3 && e.list[0].atom == "lambda" && !e.list[1].is_atom &&
        e.list[1].list.size() == 1 && !e.list[1].list[0].is_atom) {
      return function(e.list[1].list[0].list[0].atom, e.list[2], t, name);
    }
    throw ModelError(fmt::format("unsupported array value `{}` for {}", e.str(), name));
  }

  // `(ite (= x k) v rest)` chains ending in a default value.
  ConcreteValue function(const std::string& param, const SExpr& body, const TypePtr& t, const std::string& name) {
    std::vector<std::pair<BigInt, ConcreteValue>> points;
    const SExpr* cur = &body;
    while (!cur->is_atom && cur->list.size() == 4 && cur->list[0].atom == "ite") {
      const SExpr& cond = cur->list[1];
      if (cond.is_atom || cond.list.size() != 3 || cond.list[0].atom != "=")
        throw ModelError(fmt::format("unsupported array function body in {}", name));
      const SExpr& k = cond.list[1].is_atom && cond.list[1].atom == param ? cond.list[2] : cond.list[1];
      auto [kv, kw] = bitvec(k, name);
      (void)kw;
      points.emplace_back(kv, value(cur->list[2], t->elem, name));
      cur = &cur->list[3];
    }
    ConcreteValue arr = ConcreteValue::of_array(
        t, std::make_shared<SparseArray>(t->key->width, value(*cur, t->elem, name), SIZE_MAX));
    for (auto it = points.rbegin(); it != points.rend(); ++it) arr = sparse_write(arr, it->first, it->second);
    return arr;
  }
};

void collect_defs(const SExpr& e, std::map<std::string, FunDef>& out) {
  if (e.is_atom) return;
  if (e.list.size() == 5 && e.list[0].atom == "define-fun") {
    FunDef d;
    for (const auto& p : e.list[2].list)
      if (!p.is_atom && !p.list.empty()) d.params.push_back(p.list[0].atom);
    d.body = e.list[4];
    out[e.list[1].atom] = std::move(d);
    return;
  }
  for (const auto& x : e.list) collect_defs(x, out);
}

}  // namespace

// Some solvers echo the script's own `define-fun t<k>` macros in the model.
static bool is_shared_term_name(const std::string& name) {
  return name.size() > 1 && name[0] == 't' &&
         std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::map<ChoiceKey, ConcreteValue> parse_model(std::string_view output, const VerificationCondition& vc) {
  ModelReader rd;
  for (const auto& e : parse_sexprs(output)) {
    if (!e.is_atom && !e.list.empty() && e.list[0].atom == "error") continue;
    collect_defs(e, rd.defs);
  }
  std::map<ChoiceKey, ConcreteValue> out;
  for (const auto& [name, def] : rd.defs) {
    std::size_t idx = 0;
    bool ours = name.size() > 1 && name[0] == 'c' &&
                std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (ours) idx = std::stoul(name.substr(1));
    if (!ours || idx >= vc.registry.size()) {
      if (name.find('!') != std::string::npos || is_shared_term_name(name)) continue;
      throw ModelError(fmt::format("model assigns `{}`, which is not a choice of this scenario", name));
    }
    if (!def.params.empty()) throw ModelError(fmt::format("model entry `{}` is a function", name));
    const ChoiceVar& cv = vc.registry[idx];
    ConcreteValue v = rd.value(def.body, cv.type, name);
    if (v.kind == ConcreteValue::Kind::Array) {
      // Tighten the capacity sentinel used while parsing.
      const SparseArray& a = *v.array;
      SparseArray fixed(a.key_width(), a.default_value(), std::max<std::size_t>(64, a.entries().size()));
      for (const auto& [k, x] : a.entries()) fixed = fixed.write(k, x);
      v.array = std::make_shared<SparseArray>(std::move(fixed));
    }
    out.emplace(cv.key, std::move(v));
  }
  return out;
}

}  // namespace socv
