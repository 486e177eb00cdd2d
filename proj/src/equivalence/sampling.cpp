#include "refdecomp/equivalence.hpp"
#include "refdecomp/error.hpp"

#include <limits>
#include <random>

namespace refdecomp {

namespace {

using Rng = std::mt19937_64;

std::int64_t in_range(Rng &rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Half small magnitudes, a quarter medium, a quarter anywhere in range.
template <typename I> I random_integral(Rng &rng) {
  int bucket = static_cast<int>(in_range(rng, 0, 3));
  if (bucket <= 1)
    return static_cast<I>(in_range(rng, -10, 10));
  if (bucket == 2)
    return static_cast<I>(in_range(rng, -1000, 1000));
  return static_cast<I>(in_range(rng, std::numeric_limits<I>::min(),
                                 std::numeric_limits<I>::max()));
}

double random_double(Rng &rng) {
  int bucket = static_cast<int>(in_range(rng, 0, 7));
  if (bucket <= 3)
    return static_cast<double>(in_range(rng, -10, 10)) / (bucket == 0 ? 4.0 : 1.0);
  if (bucket <= 5)
    return std::uniform_real_distribution<double>(-1000.0, 1000.0)(rng);
  if (bucket == 6)
    return std::uniform_real_distribution<double>(-1e12, 1e12)(rng);
  static const double special[] = {std::numeric_limits<double>::quiet_NaN(),
                                   std::numeric_limits<double>::infinity(),
                                   -std::numeric_limits<double>::infinity(),
                                   -0.0, 1e-300, 1e300};
  return special[in_range(rng, 0, 5)];
}

std::string random_string(Rng &rng) {
  static const char *pool[] = {"", "a", "b", "ab", "x=", "abc", "A"};
  if (in_range(rng, 0, 2) < 2)
    return pool[in_range(rng, 0, 6)];
  std::string s;
  auto len = in_range(rng, 0, 5);
  for (std::int64_t i = 0; i < len; ++i)
    s.push_back(static_cast<char>('a' + in_range(rng, 0, 3)));
  return s;
}

Value random_int_array(Rng &rng) {
  auto a = std::make_shared<ArrayValue>();
  a->element = Type::int_();
  auto len = in_range(rng, 0, 6);
  for (std::int64_t i = 0; i < len; ++i)
    a->items.emplace_back(in_range(rng, 0, 4) == 0 ? random_integral<std::int32_t>(rng)
                                                   : static_cast<std::int32_t>(in_range(rng, -5, 5)));
  return a;
}

std::vector<Value> boundary_values(Type t) {
  if (t.array) {
    auto empty = std::make_shared<ArrayValue>();
    empty->element = Type::int_();
    auto one = std::make_shared<ArrayValue>();
    one->element = Type::int_();
    one->items.emplace_back(std::int32_t{0});
    return {empty, one};
  }
  switch (t.base) {
  case BaseType::Int:
    return {std::int32_t{0}, std::int32_t{1}, std::int32_t{-1},
            std::numeric_limits<std::int32_t>::min(),
            std::numeric_limits<std::int32_t>::max()};
  case BaseType::Long:
    return {std::int64_t{0}, std::int64_t{1}, std::int64_t{-1},
            std::numeric_limits<std::int64_t>::min(),
            std::numeric_limits<std::int64_t>::max()};
  case BaseType::Double:
    return {0.0, 1.0, -1.0, -0.0, std::numeric_limits<double>::quiet_NaN(),
            std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity()};
  case BaseType::Boolean:
    return {false, true};
  case BaseType::String:
    return {std::string(), std::string("a")};
  }
  return {};
}

Value random_value(Type t, Rng &rng) {
  if (t.array)
    return random_int_array(rng);
  switch (t.base) {
  case BaseType::Int: return random_integral<std::int32_t>(rng);
  case BaseType::Long: return random_integral<std::int64_t>(rng);
  case BaseType::Double: return random_double(rng);
  case BaseType::Boolean: return in_range(rng, 0, 1) == 1;
  case BaseType::String: return random_string(rng);
  }
  return std::int32_t{0};
}

} // namespace

std::vector<InputVector> sample_inputs(const std::vector<Type> &signature,
                                       std::size_t n, std::uint64_t seed) {
  if (n == 0)
    throw Error(ErrorKind::InvalidArgument, "sample count must be positive");
  std::vector<std::vector<Value>> boundaries;
  std::size_t prefix = 0;
  for (const auto &t : signature) {
    if (t.array && t.base != BaseType::Int)
      throw Error(ErrorKind::UnsupportedType,
                  "unsupported parameter type " + to_string(t));
    boundaries.push_back(boundary_values(t));
    prefix = std::max(prefix, boundaries.back().size());
  }
  Rng rng(seed);
  std::vector<InputVector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    InputVector input;
    for (std::size_t p = 0; p < signature.size(); ++p) {
      const auto &b = boundaries[p];
      input.push_back(i < prefix ? deep_copy(b[(i + p) % b.size()])
                                 : random_value(signature[p], rng));
    }
    out.push_back(std::move(input));
    if (signature.empty())
      break;
  }
  return out;
}

namespace {

void require_same_signature(const MethodAst &a, const MethodAst &b) {
  if (!(a.return_type == b.return_type) || signature_of(a) != signature_of(b))
    throw Error(ErrorKind::SignatureMismatch,
                "methods '" + a.name + "' and '" + b.name +
                    "' differ in return or parameter types");
}

} // namespace

Verdict check_equivalent(const MethodAst &a, const MethodAst &b, std::size_t n,
                         std::uint64_t seed, std::uint64_t step_budget) {
  require_same_signature(a, b);
  CompiledMethod ca(a), cb(b);
  for (auto &input : sample_inputs(signature_of(a), n, seed)) {
    Outcome oa = ca.run(input, step_budget);
    Outcome ob = cb.run(input, step_budget);
    if (!same_outcome(oa, ob))
      return Verdict{Counterexample{std::move(input), std::move(oa), std::move(ob)}};
  }
  return Verdict{};
}

EquivalenceGate::EquivalenceGate(const MethodAst &reference, std::size_t n,
                                 std::uint64_t seed, std::uint64_t step_budget)
    : signature_(signature_of(reference)), return_type_(reference.return_type),
      inputs_(sample_inputs(signature_, n, seed)), budget_(step_budget) {
  CompiledMethod compiled(reference);
  expected_.reserve(inputs_.size());
  for (const auto &input : inputs_)
    expected_.push_back(compiled.run(input, budget_));
}

Verdict EquivalenceGate::check(const MethodAst &candidate) const {
  if (!(candidate.return_type == return_type_) || signature_of(candidate) != signature_)
    throw Error(ErrorKind::SignatureMismatch, "candidate signature differs from reference");
  CompiledMethod compiled(candidate);
  for (std::size_t i = 0; i < inputs_.size(); ++i) {
    Outcome o = compiled.run(inputs_[i], budget_);
    if (!same_outcome(o, expected_[i]))
      return Verdict{Counterexample{inputs_[i], expected_[i], std::move(o)}};
  }
  return Verdict{};
}

} // namespace refdecomp
