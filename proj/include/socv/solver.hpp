#pragma once

#include <map>
#include <string>

#include "socv/smtlib.hpp"

namespace socv {

struct SolverJob {
  std::string command;        // `{file}` is replaced by the script path (appended if absent)
  double timeout_seconds = 60;
  std::string smt_text;
  std::string smt_path;       // where the script is written; a temp file when empty
};

struct SolverVerdict {
  enum class Kind { Unsat, Sat, Unknown, Error };
  Kind kind = Kind::Error;
  std::map<ChoiceKey, ConcreteValue> model;  // Sat
  std::string model_text;                    // Sat: raw get-model output
  std::string reason;                        // Unknown / Error
  int exit_code = 0;
  std::string stdout_text;
  std::string stderr_text;
};

// `SOC_SOLVER` if set, else `z3 -smt2 {file}`.
std::string default_solver_command();

// Runs the solver as a child process. The verdict is read from the first
// output line; anything the solver prints after `unsat` is ignored.
SolverVerdict run_solver(const SolverJob& job, const VerificationCondition& vc);

// Classifies raw solver output (exposed for tests).
SolverVerdict interpret_solver_output(const std::string& out, const std::string& err, int exit_code,
                                      const VerificationCondition& vc);

}  // namespace socv
