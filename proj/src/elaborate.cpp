#include "socv/elaborate.hpp"

#include <fmt/format.h>

#include <set>

namespace socv {

std::optional<NodeId> InstanceTree::find(const std::string& path) const {
  for (NodeId i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].path == path) return i;
  return std::nullopt;
}

NodeId InstanceTree::walk(NodeId from, const std::vector<std::string>& segments) const {
  NodeId cur = from;
  for (const auto& s : segments) {
    const InstanceNode& n = nodes_.at(cur);
    if (auto it = n.child_by_name.find(s); it != n.child_by_name.end()) {
      cur = it->second;
    } else {
      cur = n.callees.at(s);
    }
  }
  return cur;
}

std::vector<NodeId> InstanceTree::subtree(NodeId id) const {
  std::vector<NodeId> out;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    out.push_back(n);
    const auto& ch = nodes_.at(n).children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::string InstanceTree::dump() const {
  std::string out;
  for (NodeId id : subtree(kRoot)) {
    const InstanceNode& n = nodes_[id];
    std::size_t depth = 0;
    for (auto p = n.parent; p; p = nodes_[*p].parent) ++depth;
    out.append(depth * 2, ' ');
    if (id == kRoot) {
      out += n.module->name;
    } else if (n.is_primitive()) {
      const InstanceDecl& d = *n.decl;
      if (d.kind == InstanceDecl::Kind::State) {
        out += fmt::format("{}: State<{}>", n.path, to_string(*d.value_type));
      } else {
        out += fmt::format("{}: Array<{}, {}>", n.path, to_string(*d.key_type),
                           to_string(*d.value_type));
      }
    } else {
      out += fmt::format("{}: {}", n.path, n.module->name);
      if (!n.callees.empty()) {
        std::vector<std::string> bs;
        for (const auto& [name, target] : n.callees)
          bs.push_back(fmt::format("{} -> {}", name, nodes_[target].path));
        out += fmt::format(" [{}]", fmt::join(bs, ", "));
      }
    }
    out += '\n';
  }
  return out;
}

std::optional<CellId> StateLayout::find(const std::string& path) const {
  for (CellId i = 0; i < cells.size(); ++i)
    if (cells[i].path == path) return i;
  return std::nullopt;
}

class Elaborator {
 public:
  explicit Elaborator(const TypedProgram& tp) : tp_(tp) {}

  Elaboration run() {
    Elaboration el;
    el.program = &tp_;
    tree_ = &el.tree;
    layout_ = &el.layout;
    InstanceNode root;
    root.module = &tp_.root();
    tree_->nodes_.push_back(std::move(root));
    instantiate(InstanceTree::kRoot);
    for (NodeId id = 0; id < tree_->nodes_.size(); ++id) {
      const InstanceNode& n = tree_->nodes_[id];
      if (!n.module) continue;
      for (const auto& c : n.module->callees) {
        if (n.callees.count(c.name) || miswired_.count({id, c.name})) continue;
        SourceSpan at = n.decl ? n.decl->span : c.span;
        error(at, fmt::format("unbound callee `{}` of instance `{}` (module `{}` needs a wiring "
                              "`{}.{} -> ...;`)",
                              c.name, n.path, n.module->name, n.name, c.name));
      }
    }
    if (!diags_.empty()) throw CompileError(std::move(diags_));
    for (CellId c = 0; c < layout_->cells.size(); ++c) tree_->nodes_[layout_->cells[c].node].cell = c;
    return el;
  }

 private:
  const TypedProgram& tp_;
  InstanceTree* tree_ = nullptr;
  StateLayout* layout_ = nullptr;
  std::vector<Diagnostic> diags_;
  std::set<std::pair<std::uint32_t, std::uint32_t>> reported_;
  std::set<std::pair<NodeId, std::string>> miswired_;  // already reported, not also "unbound"

  void error(const SourceSpan& s, std::string msg) {
    if (!reported_.insert({s.line, s.col}).second) return;
    diags_.push_back(Diagnostic{s, std::move(msg)});
  }

  void instantiate(NodeId id) {
    const ModuleDecl* m = tree_->nodes_[id].module;
    for (const auto& inst : m->instances) {
      InstanceNode child;
      child.name = inst.name;
      child.path = tree_->nodes_[id].path.empty() ? inst.name
                                                  : tree_->nodes_[id].path + "." + inst.name;
      child.decl = &inst;
      child.parent = id;
      if (inst.kind == InstanceDecl::Kind::Module)
        child.module = tp_.program().find_module(inst.module_name);
      NodeId cid = tree_->nodes_.size();
      tree_->nodes_.push_back(std::move(child));
      tree_->nodes_[id].children.push_back(cid);
      tree_->nodes_[id].child_by_name[inst.name] = cid;
      if (inst.is_primitive()) {
        Cell cell;
        cell.path = tree_->nodes_[cid].path;
        cell.kind = inst.kind == InstanceDecl::Kind::State ? Cell::Kind::Scalar : Cell::Kind::Array;
        cell.value_type = inst.value_type;
        cell.key_type = inst.key_type;
        cell.init = inst.init.get();
        cell.node = cid;
        layout_->cells.push_back(std::move(cell));
      } else {
        instantiate(cid);
      }
    }
    wire(id);
  }

  void wire(NodeId id) {
    const ModuleDecl* m = tree_->nodes_[id].module;
    for (const auto& w : m->wirings) {
      if (w.source.size() != 2) {
        error(w.span, "wiring source must be `instance.callee`");
        continue;
      }
      if (w.target.size() != 1) {
        error(w.span, fmt::format("wiring target must be an instance of module `{}`", m->name));
        continue;
      }
      auto& self = tree_->nodes_[id];
      auto src = self.child_by_name.find(w.source[0]);
      if (src == self.child_by_name.end() || tree_->nodes_[src->second].is_primitive()) {
        error(w.span, fmt::format("wiring references nonexistent instance `{}` in module `{}`",
                                  w.source[0], m->name));
        continue;
      }
      auto tgt = self.child_by_name.find(w.target[0]);
      if (tgt == self.child_by_name.end()) {
        error(w.span, fmt::format("wiring references nonexistent instance `{}` in module `{}`",
                                  w.target[0], m->name));
        continue;
      }
      InstanceNode& child = tree_->nodes_[src->second];
      const CalleeDecl* callee = child.module->find_callee(w.source[1]);
      if (!callee) {
        error(w.span, fmt::format("module `{}` has no callee `{}`", child.module->name, w.source[1]));
        continue;
      }
      const InstanceNode& target = tree_->nodes_[tgt->second];
      std::string target_module = target.module ? target.module->name : "<primitive>";
      if (target_module != callee->module_name) {
        error(w.span, fmt::format("callee `{}.{}` expects module `{}`, but `{}` is a `{}`",
                                  w.source[0], w.source[1], callee->module_name, w.target[0],
                                  target_module));
        miswired_.insert({src->second, callee->name});
        continue;
      }
      if (child.callees.count(callee->name)) {
        error(w.span, fmt::format("duplicate wiring for callee `{}.{}`", w.source[0], w.source[1]));
        continue;
      }
      child.callees[callee->name] = tgt->second;
    }
  }
};

Elaboration elaborate(const TypedProgram& tp) { return Elaborator(tp).run(); }

PathRef resolve_path(const Elaboration& el, NodeId from, const std::vector<std::string>& dotted) {
  const InstanceTree& tree = el.tree;
  auto fail = [&](const std::string& msg) -> PathRef {
    SourceSpan s = SourceSpan::synthetic();
    throw CompileError({Diagnostic{s, msg}});
  };
  bool deep = from == InstanceTree::kRoot;
  PathRef ref;
  ref.node = from;
  for (std::size_t i = 0; i < dotted.size(); ++i) {
    const std::string& seg = dotted[i];
    const InstanceNode& n = tree.node(ref.node);
    bool last = i + 1 == dotted.size();
    if (ref.kind != PathRef::Kind::Instance && ref.kind != PathRef::Kind::Cell)
      return fail(fmt::format("`{}` cannot be followed by `{}`", dotted[i - 1], seg));
    if (!deep && i >= 1 && !(last && i == 1))
      return fail(fmt::format("`{}` is not reachable from `{}`", fmt::join(dotted, "."),
                              tree.node(from).path.empty() ? "root" : tree.node(from).path));
    if (n.is_primitive()) {
      static const std::set<std::string> state_ops{"get", "set", "havoc"};
      static const std::set<std::string> array_ops{"get", "set", "read", "write", "havoc"};
      const auto& ops = n.decl->kind == InstanceDecl::Kind::State ? state_ops : array_ops;
      if (last && ops.count(seg)) {
        ref.kind = PathRef::Kind::PrimitiveOp;
        ref.op = seg;
        continue;
      }
      return fail(fmt::format("primitive instance `{}` has no member `{}`", n.path, seg));
    }
    if (auto it = n.child_by_name.find(seg); it != n.child_by_name.end()) {
      ref.node = it->second;
    } else if (auto cit = n.callees.find(seg); cit != n.callees.end()) {
      ref.node = cit->second;
    } else if (last && seg == "havoc") {
      ref.kind = PathRef::Kind::PrimitiveOp;
      ref.op = seg;
      continue;
    } else if (last && n.module->find_fn(seg)) {
      ref.kind = PathRef::Kind::Function;
      ref.fn = n.module->find_fn(seg);
      continue;
    } else {
      return fail(fmt::format("`{}` is neither an instance, a callee nor a function of `{}`", seg,
                              n.path.empty() ? n.module->name : n.path));
    }
    const InstanceNode& reached = tree.node(ref.node);
    if (reached.cell) {
      ref.kind = PathRef::Kind::Cell;
      ref.cell = reached.cell;
    } else {
      ref.kind = PathRef::Kind::Instance;
    }
  }
  return ref;
}

}  // namespace socv
