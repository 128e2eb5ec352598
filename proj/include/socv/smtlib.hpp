#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "socv/symexec.hpp"

namespace socv {

// Self-contained SMT-LIB v2 script: options, logic, one declaration per
// registered choice, shared subterms as `define-fun`, a single assert,
// `(check-sat)` and `(get-model)`. Deterministic for a given VC.
std::string emit_smtlib(const VerificationCondition& vc);

// Term rendering with every subterm inlined (used by tests and --dump-vc
// summaries).
std::string term_to_smtlib(const TermStore& ts, TermId t);

struct SExpr {
  bool is_atom = true;
  std::string atom;
  std::vector<SExpr> list;

  std::string str() const;
};

// Parses a sequence of s-expressions; `;` starts a line comment. Throws
// ModelError on unbalanced input.
std::vector<SExpr> parse_sexprs(std::string_view text);

// Reads `(define-fun c<i> () Sort value)` entries from get-model output and
// maps them to choice keys through the VC's registry. Entries whose name
// is not a registered choice are rejected unless they are auxiliary
// functions (names containing `!`) referenced by array values.
std::map<ChoiceKey, ConcreteValue> parse_model(std::string_view output, const VerificationCondition& vc);

}  // namespace socv
