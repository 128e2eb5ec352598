// socv: check, run, verify and trace hardware security scenarios.
//
// Exit codes. verify: 0 proven, 2 counterexample, 3 unknown/timeout,
// 1 tool error. run/trace: 0 passed, 2 assertion failed, 4 assume
// infeasible, 1 tool error.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "socv/pipeline.hpp"
#include "socv/smtlib.hpp"
#include "socv/solver.hpp"
#include "socv/symexec.hpp"

namespace fs = std::filesystem;
using namespace socv;

namespace {

constexpr int kExitError = 1;

struct Options {
  std::string file;
  std::string scenario;
  std::uint64_t seed = 0;
  std::size_t capacity = 64;
  bool trace_json = false;
  std::string solver;
  double timeout = 60;
  std::string dump_smt;
  std::string dump_model;
  bool dump_vc = false;
  std::string model;
};

void report(const CompileError& e) {
  for (const auto& d : e.diagnostics()) std::cerr << d.render() << "\n";
}

std::string site_of(const SourceSpan& s) { return fmt::format("{}:{}", s.file_name(), s.line); }

// Shared by run, trace and the counterexample path of verify so that the
// transcripts are byte-identical.
int print_run(const RunResult& r, bool json) {
  std::cout << r.transcript;
  if (json) std::cout << trace_json(r);
  switch (r.verdict.kind) {
    case Verdict::Kind::Passed:
      std::cout << "PASSED\n";
      return 0;
    case Verdict::Kind::AssertionFailed:
      std::cout << "FAILED ASSERTION at " << site_of(r.verdict.site);
      if (!r.verdict.message.empty()) std::cout << ": " << r.verdict.message;
      std::cout << "\n";
      return 2;
    case Verdict::Kind::AssumeInfeasible:
      std::cout << "ASSUME INFEASIBLE at " << site_of(r.verdict.site) << "\n";
      return 4;
  }
  return kExitError;
}

std::unique_ptr<LoadedModel> load_checked(const Options& o) {
  auto m = load_model_file(o.file);
  if (!o.scenario.empty() && !m->typed.find_scenario(o.scenario)) {
    std::string names;
    for (const FnDecl* f : m->typed.scenarios()) names += (names.empty() ? "" : ", ") + f->name;
    throw std::invalid_argument(
        fmt::format("no scenario `{}` in {} (available: {})", o.scenario, o.file, names.empty() ? "none" : names));
  }
  return m;
}

int cmd_check(const Options& o, bool dump_tree) {
  auto m = load_checked(o);
  if (dump_tree) std::cout << m->elab.tree.dump();
  std::cout << fmt::format("{}: ok ({} scenario{})\n", o.file, m->typed.scenarios().size(),
                           m->typed.scenarios().size() == 1 ? "" : "s");
  return 0;
}

int cmd_run(const Options& o) {
  auto m = load_checked(o);
  SeededRandom rng(o.seed);
  return print_run(run_scenario(m->elab, o.scenario, rng, o.capacity), o.trace_json);
}

std::string default_model_path(const Options& o) {
  if (!o.dump_model.empty()) return o.dump_model;
  if (!o.dump_smt.empty()) {
    fs::path p(o.dump_smt);
    return (p.parent_path() / (p.stem().string() + ".model.smt2")).string();
  }
  return o.scenario + ".model.smt2";
}

void print_vc(const VerificationCondition& vc) {
  std::cout << fmt::format("; {} choice(s), {} assumption(s), {} obligation(s)\n", vc.registry.size(),
                           vc.assumptions.size(), vc.obligations.size());
  for (std::size_t i = 0; i < vc.registry.size(); ++i)
    std::cout << fmt::format(";   {} = {} : {}\n", vc.var_name(i), vc.registry[i].key,
                             to_string(*vc.registry[i].type));
  for (const auto& ob : vc.obligations)
    std::cout << fmt::format(";   obligation at {}: {}\n", site_of(ob.site), ob.message);
}

bool uses_havoc(const VerificationCondition& vc) {
  for (const auto& c : vc.registry)
    if (c.key.find('/') != std::string::npos) return true;
  return false;
}

int cmd_verify(const Options& o) {
  auto m = load_checked(o);
  auto t0 = std::chrono::steady_clock::now();
  VerificationCondition vc = sym_exec(m->elab, o.scenario);
  if (o.dump_vc) print_vc(vc);
  SolverJob job;
  job.command = o.solver.empty() ? default_solver_command() : o.solver;
  job.timeout_seconds = o.timeout;
  job.smt_text = emit_smtlib(vc);
  job.smt_path = o.dump_smt;
  SolverVerdict sv = run_solver(job, vc);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  switch (sv.kind) {
    case SolverVerdict::Kind::Unsat:
      std::cout << fmt::format("PROVEN: no assertion of `{}` can fail ({:.2f}s)\n", o.scenario, secs);
      if (uses_havoc(vc))
        std::cout << "note: this scenario starts from a havocked state. If it is one step of an induction "
                     "argument, concluding the unbounded property still requires checking by hand that "
                     "base case, inductive step and invariant usefulness together imply it.\n";
      return 0;
    case SolverVerdict::Kind::Unknown:
      std::cout << fmt::format("UNKNOWN: {} ({:.2f}s)\n", sv.reason, secs);
      return 3;
    case SolverVerdict::Kind::Error:
      std::cerr << "error: " << sv.reason << "\n";
      return kExitError;
    case SolverVerdict::Kind::Sat:
      break;
  }

  std::string model_path = default_model_path(o);
  {
    std::ofstream f(model_path);
    if (!f) throw std::runtime_error("cannot write " + model_path);
    f << sv.model_text;
  }
  RunResult r = replay(m->elab, o.scenario, sv.model, o.capacity);
  std::cout << fmt::format("COUNTEREXAMPLE found ({:.2f}s), model saved to {}\n", secs, model_path);
  int code = print_run(r, false);
  if (code != 2) {
    std::cerr << "error: the solver model does not reproduce an assertion failure when replayed\n";
    return kExitError;
  }
  return 2;
}

int cmd_trace(const Options& o) {
  auto m = load_checked(o);
  std::ifstream in(o.model);
  if (!in) throw std::runtime_error("cannot read model file " + o.model);
  std::stringstream text;
  text << in.rdbuf();
  // The solver names choices by registry index, so the registry is rebuilt
  // by running the symbolic engine again.
  VerificationCondition vc = sym_exec(m->elab, o.scenario);
  auto model = parse_model(text.str(), vc);
  return print_run(replay(m->elab, o.scenario, model, o.capacity), o.trace_json);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic verification of SoC security scenarios"};
  app.require_subcommand(1);
  Options o;
  bool check_dump_tree = false;

  auto* check = app.add_subcommand("check", "Parse, type check and elaborate a model");
  check->add_option("file", o.file, "Model file")->required();
  check->add_flag("--dump-tree", check_dump_tree, "Print the instance tree");

  auto* run = app.add_subcommand("run", "Run a scenario concretely with random choices");
  run->add_option("file", o.file, "Model file")->required();
  run->add_option("--scenario", o.scenario, "Scenario name")->required();
  run->add_option("--seed", o.seed, "Random seed");
  run->add_option("--capacity", o.capacity, "Sparse array capacity");
  run->add_flag("--trace-json", o.trace_json, "Print the call trace as JSON lines");

  auto* verify = app.add_subcommand("verify", "Search for an assertion violation with an SMT solver");
  verify->add_option("file", o.file, "Model file")->required();
  verify->add_option("--scenario", o.scenario, "Scenario name")->required();
  verify->add_option("--solver", o.solver, "Solver command; {file} is replaced by the script path");
  verify->add_option("--timeout", o.timeout, "Solver timeout in seconds");
  verify->add_option("--dump-smt", o.dump_smt, "Keep the SMT-LIB script at this path");
  verify->add_option("--dump-model", o.dump_model, "Where to save a counterexample model");
  verify->add_option("--capacity", o.capacity, "Sparse array capacity for replay");
  verify->add_flag("--dump-vc", o.dump_vc, "Print a summary of the verification condition");

  auto* trace = app.add_subcommand("trace", "Replay a saved counterexample model");
  trace->add_option("file", o.file, "Model file")->required();
  trace->add_option("--scenario", o.scenario, "Scenario name")->required();
  trace->add_option("--model", o.model, "Model saved by verify")->required();
  trace->add_option("--capacity", o.capacity, "Sparse array capacity");
  trace->add_flag("--trace-json", o.trace_json, "Print the call trace as JSON lines");

  auto* tree = app.add_subcommand("dump-tree", "Print the elaborated instance tree");
  tree->add_option("file", o.file, "Model file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (check->parsed()) return cmd_check(o, check_dump_tree);
    if (run->parsed()) return cmd_run(o);
    if (verify->parsed()) return cmd_verify(o);
    if (trace->parsed()) return cmd_trace(o);
    if (tree->parsed()) {
      auto m = load_checked(o);
      std::cout << m->elab.tree.dump();
      return 0;
    }
  } catch (const CompileError& e) {
    report(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitError;
}
