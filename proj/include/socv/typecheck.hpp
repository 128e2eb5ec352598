#pragma once

#include <map>
#include <string>
#include <vector>

#include "socv/ast.hpp"

namespace socv {

// A program whose expressions all carry resolved types, whose calls are
// resolved, and whose declarations no longer mention aliases.
class TypedProgram {
 public:
  const Program& program() const { return program_; }
  const ModuleDecl& root() const { return *root_; }

  // Module that declares `fn`.
  const ModuleDecl& module_of(const FnDecl& fn) const { return *fn_module_.at(&fn); }

  // Direct callees of `fn` (user functions only).
  const std::vector<const FnDecl*>& callees_of(const FnDecl& fn) const;

  // Zero-parameter `mut fn`s of the root module, in declaration order.
  std::vector<const FnDecl*> scenarios() const;
  const FnDecl* find_scenario(const std::string& name) const;

  // "Module.fn", used in traces.
  std::string qualified_name(const FnDecl& fn) const;

 private:
  friend TypedProgram check_program(Program p);
  Program program_;
  const ModuleDecl* root_ = nullptr;
  std::map<const FnDecl*, const ModuleDecl*> fn_module_;
  std::map<const FnDecl*, std::vector<const FnDecl*>> call_graph_;
};

// Bidirectional type checking with exact bit widths. Throws CompileError
// carrying every located error found.
TypedProgram check_program(Program p);

}  // namespace socv
