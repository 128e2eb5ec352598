#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "socv/eval.hpp"
#include "socv/term.hpp"

namespace socv {

// A value as a tree of terms: scalars and array snapshots carry one term,
// records and vectors one child per field/element.
struct SymValue {
  TypePtr type;
  TermId term = kNoTerm;
  std::vector<SymValue> elems;
};

// One nondeterministic choice. Its SMT name is `c<index in registry>`.
struct ChoiceVar {
  ChoiceKey key;
  TypePtr type;  // scalar or ArrayOf
  TermId term = kNoTerm;
};

struct GuardedFact {
  TermId guard = kNoTerm;
  TermId body = kNoTerm;
  SourceSpan site;
  std::string message;
};

struct VerificationCondition {
  std::shared_ptr<TermStore> terms;
  std::vector<ChoiceVar> registry;
  std::vector<GuardedFact> assumptions;  // includes enum range constraints
  std::vector<GuardedFact> obligations;  // asserts and implicit bounds checks
  TermId assumes = kNoTerm;              // AND of (guard => body)
  TermId violations = kNoTerm;           // OR of (guard AND NOT body)
  TermId query = kNoTerm;                // assumes AND violations

  std::string var_name(std::size_t i) const { return "c" + std::to_string(i); }
};

// Merged symbolic execution of a scenario. Guards are strengthened so that
// the query is satisfiable exactly when some concrete run ends in its first
// failing assertion: an assumption only binds while no earlier assertion
// has failed.
VerificationCondition sym_exec(const Elaboration& el, const std::string& scenario);

// Re-runs the symbolic engine with every choice replaced by its model value
// (zero when absent). Throws ModelError for ill-sorted model values.
RunResult replay(const Elaboration& el, const std::string& scenario,
                 const std::map<ChoiceKey, ConcreteValue>& model, std::size_t array_capacity = 64);

// Converts a constant term tree back to a concrete value.
ConcreteValue to_concrete(const TermStore& ts, const SymValue& v, std::size_t array_capacity = 64);

}  // namespace socv
