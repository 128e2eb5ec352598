#include "socv/term.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace socv {

std::string to_string(const Sort& s) {
  switch (s.kind) {
    case Sort::Kind::Bool: return "Bool";
    case Sort::Kind::BitVec: return fmt::format("(_ BitVec {})", s.width);
    case Sort::Kind::Int: return "Int";
    case Sort::Kind::Array:
      return fmt::format("(Array (_ BitVec {}) {})", s.key_width, to_string(s.elem()));
  }
  return "?";
}

Sort sort_of(const TypeExpr& t) {
  switch (t.kind) {
    case TypeExpr::Kind::Bool: return Sort::boolean();
    case TypeExpr::Kind::BitInt: return Sort::bv(t.width);
    case TypeExpr::Kind::Int: return Sort::integer();
    case TypeExpr::Kind::Enum: return Sort::bv(enum_width(t.variants.size()));
    case TypeExpr::Kind::ArrayOf: return Sort::array(t.key->width, sort_of(*t.elem));
    default: break;
  }
  throw std::logic_error("no solver sort for " + to_string(t));
}

namespace {

BigInt mask(std::uint32_t w) { return (BigInt(1) << w) - 1; }

BigInt wrap(const BigInt& v, std::uint32_t w) {
  BigInt m = BigInt(1) << w;
  BigInt r = v % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

TermId TermStore::intern(TermNode n) {
  std::string key = fmt::format("{}|{}|{}|{}|{}|{}|{}|{}|{}|", static_cast<int>(n.op),
                                static_cast<int>(n.sort.kind), n.sort.width, n.sort.key_width,
                                static_cast<int>(n.sort.elem_kind), n.sort.elem_width, n.p0, n.p1,
                                n.value.str());
  for (TermId a : n.args) key += fmt::format("{},", a);
  auto it = table_.find(key);
  if (it != table_.end()) return it->second;
  auto id = static_cast<TermId>(nodes_.size());
  nodes_.push_back(std::move(n));
  table_.emplace(std::move(key), id);
  return id;
}

TermId TermStore::boolean(bool b) { return intern({Op::Const, Sort::boolean(), {}, b ? 1 : 0}); }
TermId TermStore::bv(std::uint32_t width, const BigInt& v) {
  return intern({Op::Const, Sort::bv(width), {}, wrap(v, width)});
}
TermId TermStore::integer(const BigInt& v) { return intern({Op::Const, Sort::integer(), {}, v}); }
TermId TermStore::var(std::uint32_t index, const Sort& s) {
  TermNode n{Op::Var, s, {}, 0};
  n.p0 = index;
  return intern(std::move(n));
}

TermId TermStore::mk_not(TermId a) {
  if (is_const(a)) return boolean(value(a) == 0);
  if (node(a).op == Op::Not) return node(a).args[0];
  return intern({Op::Not, Sort::boolean(), {a}, 0});
}

TermId TermStore::mk_and(std::vector<TermId> xs) {
  std::vector<TermId> keep;
  std::set<TermId> seen;
  for (TermId x : xs) {
    if (is_false(x)) return fls();
    if (is_true(x)) continue;
    if (node(x).op == Op::And) {
      for (TermId y : node(x).args)
        if (seen.insert(y).second) keep.push_back(y);
      continue;
    }
    if (seen.insert(x).second) keep.push_back(x);
  }
  for (TermId x : keep)
    if (node(x).op == Op::Not && seen.count(node(x).args[0])) return fls();
  if (keep.empty()) return tru();
  if (keep.size() == 1) return keep[0];
  return intern({Op::And, Sort::boolean(), std::move(keep), 0});
}

TermId TermStore::mk_or(std::vector<TermId> xs) {
  std::vector<TermId> keep;
  std::set<TermId> seen;
  for (TermId x : xs) {
    if (is_true(x)) return tru();
    if (is_false(x)) continue;
    if (node(x).op == Op::Or) {
      for (TermId y : node(x).args)
        if (seen.insert(y).second) keep.push_back(y);
      continue;
    }
    if (seen.insert(x).second) keep.push_back(x);
  }
  for (TermId x : keep)
    if (node(x).op == Op::Not && seen.count(node(x).args[0])) return tru();
  if (keep.empty()) return fls();
  if (keep.size() == 1) return keep[0];
  return intern({Op::Or, Sort::boolean(), std::move(keep), 0});
}

TermId TermStore::mk_ite(TermId c, TermId a, TermId b) {
  if (is_const(c)) return value(c) == 1 ? a : b;
  if (a == b) return a;
  if (sort(a).kind == Sort::Kind::Bool) {
    if (is_true(a) && is_false(b)) return c;
    if (is_false(a) && is_true(b)) return mk_not(c);
    if (is_true(a)) return mk_or(c, b);
    if (is_false(b)) return mk_and(c, a);
  }
  return intern({Op::Ite, sort(a), {c, a, b}, 0});
}

TermId TermStore::mk_eq(TermId a, TermId b) {
  if (a == b) return tru();
  if (is_const(a) && is_const(b)) return boolean(value(a) == value(b));
  if (sort(a).kind == Sort::Kind::Bool) {
    if (is_const(a)) return value(a) == 1 ? b : mk_not(b);
    if (is_const(b)) return value(b) == 1 ? a : mk_not(a);
  }
  if (b < a) std::swap(a, b);
  return intern({Op::Eq, Sort::boolean(), {a, b}, 0});
}

TermId TermStore::bv_not(TermId a) {
  std::uint32_t w = sort(a).width;
  if (is_const(a)) return bv(w, mask(w) ^ value(a));
  return intern({Op::BvNot, sort(a), {a}, 0});
}
TermId TermStore::bv_neg(TermId a) {
  if (is_const(a)) return bv(sort(a).width, -value(a));
  return intern({Op::BvNeg, sort(a), {a}, 0});
}
TermId TermStore::bv_add(TermId a, TermId b) {
  std::uint32_t w = sort(a).width;
  if (is_const(a) && is_const(b)) return bv(w, value(a) + value(b));
  if (is_const(a) && value(a) == 0) return b;
  if (is_const(b) && value(b) == 0) return a;
  return intern({Op::BvAdd, sort(a), {a, b}, 0});
}
TermId TermStore::bv_sub(TermId a, TermId b) {
  std::uint32_t w = sort(a).width;
  if (is_const(a) && is_const(b)) return bv(w, value(a) - value(b));
  if (is_const(b) && value(b) == 0) return a;
  if (a == b) return bv(w, 0);
  return intern({Op::BvSub, sort(a), {a, b}, 0});
}
TermId TermStore::bv_mul(TermId a, TermId b) {
  std::uint32_t w = sort(a).width;
  if (is_const(a) && is_const(b)) return bv(w, value(a) * value(b));
  return intern({Op::BvMul, sort(a), {a, b}, 0});
}
TermId TermStore::bv_ult(TermId a, TermId b) {
  if (is_const(a) && is_const(b)) return boolean(value(a) < value(b));
  if (is_const(b) && value(b) == 0) return fls();
  if (a == b) return fls();
  return intern({Op::BvUlt, Sort::boolean(), {a, b}, 0});
}
TermId TermStore::bv_ule(TermId a, TermId b) {
  if (is_const(a) && is_const(b)) return boolean(value(a) <= value(b));
  if (is_const(a) && value(a) == 0) return tru();
  if (is_const(b) && value(b) == mask(sort(b).width)) return tru();
  if (a == b) return tru();
  return intern({Op::BvUle, Sort::boolean(), {a, b}, 0});
}
TermId TermStore::int_neg(TermId a) {
  if (is_const(a)) return integer(-value(a));
  return intern({Op::IntNeg, Sort::integer(), {a}, 0});
}
TermId TermStore::int_add(TermId a, TermId b) {
  if (is_const(a) && is_const(b)) return integer(value(a) + value(b));
  return intern({Op::IntAdd, Sort::integer(), {a, b}, 0});
}
TermId TermStore::int_sub(TermId a, TermId b) {
  if (is_const(a) && is_const(b)) return integer(value(a) - value(b));
  return intern({Op::IntSub, Sort::integer(), {a, b}, 0});
}
TermId TermStore::int_mul(TermId a, TermId b) {
  if (is_const(a) && is_const(b)) return integer(value(a) * value(b));
  return intern({Op::IntMul, Sort::integer(), {a, b}, 0});
}
TermId TermStore::int_lt(TermId a, TermId b) {
  if (is_const(a) && is_const(b)) return boolean(value(a) < value(b));
  if (a == b) return fls();
  return intern({Op::IntLt, Sort::boolean(), {a, b}, 0});
}
TermId TermStore::int_le(TermId a, TermId b) {
  if (is_const(a) && is_const(b)) return boolean(value(a) <= value(b));
  if (a == b) return tru();
  return intern({Op::IntLe, Sort::boolean(), {a, b}, 0});
}

TermId TermStore::extract(TermId a, std::uint32_t hi, std::uint32_t lo) {
  std::uint32_t w = hi - lo + 1;
  if (is_const(a)) return bv(w, value(a) >> lo);
  if (lo == 0 && w == sort(a).width) return a;
  const TermNode& n = node(a);
  if (n.op == Op::Extract) return extract(n.args[0], hi + n.p1, lo + n.p1);
  if (n.op == Op::ZeroExt) {
    std::uint32_t inner = sort(n.args[0]).width;
    if (hi < inner) return extract(n.args[0], hi, lo);
    if (lo >= inner) return bv(w, 0);
  }
  TermNode t{Op::Extract, Sort::bv(w), {a}, 0};
  t.p0 = hi;
  t.p1 = lo;
  return intern(std::move(t));
}

TermId TermStore::zero_ext(TermId a, std::uint32_t by) {
  std::uint32_t w = sort(a).width + by;
  if (by == 0) return a;
  if (is_const(a)) return bv(w, value(a));
  TermNode t{Op::ZeroExt, Sort::bv(w), {a}, 0};
  t.p0 = by;
  return intern(std::move(t));
}

TermId TermStore::bv2int(TermId a) {
  if (is_const(a)) return integer(value(a));
  return intern({Op::Bv2Int, Sort::integer(), {a}, 0});
}

TermId TermStore::int2bv(TermId a, std::uint32_t width) {
  if (is_const(a)) return bv(width, value(a));
  return intern({Op::Int2Bv, Sort::bv(width), {a}, 0});
}

TermId TermStore::select(TermId arr, TermId key) {
  TermId cur = arr;
  for (;;) {
    const TermNode& n = node(cur);
    if (n.op == Op::ConstArray) return n.args[0];
    if (n.op != Op::Store) break;
    TermId k = n.args[1];
    if (k == key) return n.args[2];
    if (is_const(k) && is_const(key)) {
      cur = n.args[0];
      continue;
    }
    break;
  }
  return intern({Op::Select, sort(arr).elem(), {cur, key}, 0});
}

TermId TermStore::store(TermId arr, TermId key, TermId val) {
  const TermNode& n = node(arr);
  // Overwriting the same key drops the shadowed store.
  if (n.op == Op::Store && n.args[1] == key) return store(n.args[0], key, val);
  return intern({Op::Store, sort(arr), {arr, key, val}, 0});
}

TermId TermStore::const_array(std::uint32_t key_width, TermId dflt) {
  return intern({Op::ConstArray, Sort::array(key_width, sort(dflt)), {dflt}, 0});
}

bool TermStore::uses_int(TermId root) const {
  std::vector<TermId> stack{root};
  std::vector<bool> seen(nodes_.size(), false);
  while (!stack.empty()) {
    TermId t = stack.back();
    stack.pop_back();
    if (seen[t]) continue;
    seen[t] = true;
    const TermNode& n = nodes_[t];
    if (n.sort.kind == Sort::Kind::Int ||
        (n.sort.kind == Sort::Kind::Array && n.sort.elem_kind == Sort::Kind::Int))
      return true;
    for (TermId a : n.args) stack.push_back(a);
  }
  return false;
}

}  // namespace socv
