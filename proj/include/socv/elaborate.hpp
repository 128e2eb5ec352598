#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "socv/typecheck.hpp"

namespace socv {

using NodeId = std::size_t;
using CellId = std::size_t;

struct InstanceNode {
  std::string name;                   // local name; empty for the root
  std::string path;                   // dot-separated from the root; empty for the root
  const ModuleDecl* module = nullptr; // null for primitive instances
  const InstanceDecl* decl = nullptr; // null for the root
  std::optional<NodeId> parent;
  std::vector<NodeId> children;       // declaration order
  std::map<std::string, NodeId> child_by_name;
  std::map<std::string, NodeId> callees;  // callee name -> bound instance
  std::optional<CellId> cell;         // primitive instances only

  bool is_primitive() const { return module == nullptr && decl != nullptr; }
};

class InstanceTree {
 public:
  static constexpr NodeId kRoot = 0;

  const InstanceNode& node(NodeId id) const { return nodes_.at(id); }
  std::size_t size() const { return nodes_.size(); }
  std::optional<NodeId> find(const std::string& path) const;

  // Follows instance/callee segments from `from`. Only valid for paths the
  // type checker accepted; throws std::out_of_range otherwise.
  NodeId walk(NodeId from, const std::vector<std::string>& segments) const;

  // All nodes below (and including) `id`, preorder.
  std::vector<NodeId> subtree(NodeId id) const;

  // Indented listing, one instance path per line.
  std::string dump() const;

 private:
  friend class Elaborator;
  std::vector<InstanceNode> nodes_;
};

struct Cell {
  enum class Kind { Scalar, Array };
  std::string path;
  Kind kind = Kind::Scalar;
  TypePtr value_type;
  TypePtr key_type;          // arrays only
  const Expr* init = nullptr; // State initial value / Array default element
  NodeId node = 0;
};

struct StateLayout {
  std::vector<Cell> cells;  // preorder over the instance tree
  std::optional<CellId> find(const std::string& path) const;
};

// Result of resolving a dotted name from some instance.
struct PathRef {
  enum class Kind { Instance, Cell, Function, PrimitiveOp };
  Kind kind = Kind::Instance;
  NodeId node = 0;            // instance reached (owner for Function / PrimitiveOp)
  std::optional<CellId> cell; // Cell
  const FnDecl* fn = nullptr; // Function
  std::string op;             // PrimitiveOp: get/set/read/write/havoc
};

struct Elaboration {
  const TypedProgram* program = nullptr;
  InstanceTree tree;
  StateLayout layout;
};

// Instantiates the module tree below the root module and binds callees.
// Throws CompileError listing every wiring problem.
Elaboration elaborate(const TypedProgram& tp);

// Scenario code in the root module may descend freely; ordinary module code
// may name only its own instances and callees (plus a function or operation
// on them). Throws CompileError for unresolvable segments.
PathRef resolve_path(const Elaboration& el, NodeId from, const std::vector<std::string>& dotted);

}  // namespace socv
