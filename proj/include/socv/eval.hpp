#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "socv/elaborate.hpp"
#include "socv/value.hpp"

namespace socv {

// Identifies one nondeterministic scalar (or havocked array) in a run:
// the call-site ids leading to the current function, the `any`/`havoc`
// site, and a leaf suffix (`.field`, `[i]`, `/cell.path`). Merged symbolic
// execution and concrete runs produce identical keys for the same path.
using ChoiceKey = std::string;
ChoiceKey make_choice_key(const std::vector<std::uint32_t>& call_string, std::uint32_t site);

// Thrown for malformed or ill-sorted solver models.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AnySource {
 public:
  virtual ~AnySource() = default;
  // `leaf` is a scalar type or an ArrayOf type (havocked arrays).
  virtual ConcreteValue choose(const ChoiceKey& key, const TypePtr& leaf) = 0;
};

class SeededRandom : public AnySource {
 public:
  explicit SeededRandom(std::uint64_t seed) : rng_(seed) {}
  ConcreteValue choose(const ChoiceKey& key, const TypePtr& leaf) override;

 private:
  std::mt19937_64 rng_;
};

// Values from a solver model; absent keys read as zero.
class ModelOracle : public AnySource {
 public:
  explicit ModelOracle(std::map<ChoiceKey, ConcreteValue> values) : values_(std::move(values)) {}
  ConcreteValue choose(const ChoiceKey& key, const TypePtr& leaf) override;

 private:
  std::map<ChoiceKey, ConcreteValue> values_;
};

// Hands out a fixed sequence of values in request order (zero beyond it)
// and records the type of every request.
class ScriptedSource : public AnySource {
 public:
  explicit ScriptedSource(std::vector<ConcreteValue> script) : script_(std::move(script)) {}
  ConcreteValue choose(const ChoiceKey& key, const TypePtr& leaf) override;
  const std::vector<TypePtr>& requested() const { return requested_; }

 private:
  std::vector<ConcreteValue> script_;
  std::vector<TypePtr> requested_;
};

struct StateStore {
  std::vector<ConcreteValue> cells;  // indexed by CellId
};

StateStore init_store(const Elaboration& el, std::size_t array_capacity);

struct Verdict {
  enum class Kind { Passed, AssertionFailed, AssumeInfeasible };
  Kind kind = Kind::Passed;
  SourceSpan site;
  std::string message;
};

const char* to_string(Verdict::Kind k);

struct TraceEvent {
  enum class Kind { Call, Return };
  Kind kind = Kind::Call;
  std::string fn;                   // `instance.path.fn`, or `Main.fn` for the root
  std::vector<ConcreteValue> args;  // Call
  std::optional<ConcreteValue> value;  // Return
  std::size_t depth = 0;
};

struct RunResult {
  Verdict verdict;
  std::string transcript;  // concatenated printf output
  std::vector<TraceEvent> trace;
  StateStore store;
};

// Concrete execution of a zero-parameter `mut fn` of the root module.
// Throws CapacityError when an array outgrows `array_capacity`.
RunResult run_scenario(const Elaboration& el, const std::string& scenario, AnySource& anys,
                       std::size_t array_capacity = 64);

// JSON lines: one object per call/return plus a final verdict object.
std::string trace_json(const RunResult& r);

// Number of distinct values of a scalar type, if it is small enough to
// enumerate (BitInt up to 16 bits, Bool, enums).
std::optional<std::uint64_t> domain_size(const TypeExpr& t);
ConcreteValue domain_value(const TypePtr& t, std::uint64_t i);

struct ExhaustiveResult {
  std::uint64_t runs = 0;          // interpreter executions, including prefix probes
  std::uint64_t leaves = 0;        // complete assignments explored
  std::uint64_t violations = 0;  // leaves ending in AssertionFailed
  std::optional<std::vector<ConcreteValue>> witness;
  bool complete = true;  // false when a choice had an unenumerable domain or the budget ran out
};

// Enumerates every assignment of the choices a scenario actually makes
// (depth-first over request order), running the interpreter at each leaf.
ExhaustiveResult enumerate_choices(const Elaboration& el, const std::string& scenario,
                                   std::size_t array_capacity, std::uint64_t max_runs);

}  // namespace socv
