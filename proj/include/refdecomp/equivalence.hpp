#pragma once

#include "refdecomp/ast.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace refdecomp {

struct ArrayValue;
using ArrayRef = std::shared_ptr<ArrayValue>;

/// A runtime value. Arrays have reference semantics.
using Value = std::variant<std::int32_t, std::int64_t, double, bool, std::string,
                           ArrayRef>;

struct ArrayValue {
  Type element;
  std::vector<Value> items;
};

/// Java-style rendering: 5, 5L, 1.0E10, "s", {1, 2}.
std::string display(const Value &v);
/// Double.toString formatting.
std::string java_double_string(double d);
/// Deep copy (arrays are duplicated).
Value deep_copy(const Value &v);
/// Type-directed comparison: doubles bitwise with one canonical NaN, arrays
/// element-wise.
bool same_value(const Value &a, const Value &b);

using InputVector = std::vector<Value>;

enum class RuntimeErrorKind : std::uint8_t {
  DivByZero,
  IndexOutOfBounds,
  NegativeArraySize,
  SwitchFallthroughViolation,
};
const char *to_string(RuntimeErrorKind k);

struct Outcome {
  enum class Kind : std::uint8_t { Value, RuntimeError, BudgetExhausted };

  Kind kind = Kind::Value;
  Value value;
  RuntimeErrorKind error = RuntimeErrorKind::DivByZero;

  static Outcome of_value(Value v) { return {Kind::Value, std::move(v), {}}; }
  static Outcome of_error(RuntimeErrorKind e) { return {Kind::RuntimeError, {}, e}; }
  static Outcome exhausted() { return {Kind::BudgetExhausted, {}, {}}; }

  std::string str() const;
};

bool same_outcome(const Outcome &a, const Outcome &b);

constexpr std::uint64_t kDefaultStepBudget = 100000;
constexpr std::size_t kDefaultSamples = 200;

/// A method lowered to slot-resolved form for repeated evaluation.
class CompiledMethod {
public:
  explicit CompiledMethod(const MethodAst &method);
  ~CompiledMethod();
  CompiledMethod(CompiledMethod &&) noexcept;
  CompiledMethod &operator=(CompiledMethod &&) noexcept;

  /// Input arrays are copied; the caller's values are never mutated.
  Outcome run(const InputVector &input,
              std::uint64_t step_budget = kDefaultStepBudget) const;
  const std::vector<Type> &signature() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Outcome evaluate(const MethodAst &method, const InputVector &input,
                 std::uint64_t step_budget = kDefaultStepBudget);

std::vector<Type> signature_of(const MethodAst &method);

/// Deterministic inputs: a per-type boundary prefix, rotated by parameter
/// position, followed by pseudo-random values. Supported parameter types are
/// int, long, double, boolean, String and int[]. Throws UnsupportedType or
/// InvalidArgument (n == 0).
std::vector<InputVector> sample_inputs(const std::vector<Type> &signature,
                                       std::size_t n, std::uint64_t seed);

struct Counterexample {
  InputVector input;
  Outcome outcome_a;
  Outcome outcome_b;
};

struct Verdict {
  std::optional<Counterexample> counterexample;

  bool consistent() const { return !counterexample; }
};

/// Throws SignatureMismatch unless return and parameter types agree
/// positionally.
Verdict check_equivalent(const MethodAst &a, const MethodAst &b,
                         std::size_t n = kDefaultSamples, std::uint64_t seed = 0,
                         std::uint64_t step_budget = kDefaultStepBudget);

/// Differential gate against a fixed reference method; the reference
/// outcomes are computed once.
class EquivalenceGate {
public:
  EquivalenceGate(const MethodAst &reference, std::size_t n, std::uint64_t seed,
                  std::uint64_t step_budget = kDefaultStepBudget);

  Verdict check(const MethodAst &candidate) const;
  bool accepts(const MethodAst &candidate) const {
    return check(candidate).consistent();
  }

private:
  std::vector<Type> signature_;
  Type return_type_;
  std::vector<InputVector> inputs_;
  std::vector<Outcome> expected_;
  std::uint64_t budget_;
};

} // namespace refdecomp
