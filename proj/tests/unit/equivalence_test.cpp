#include "refdecomp/equivalence.hpp"
#include "refdecomp/error.hpp"
#include "refdecomp/syntax.hpp"
#include "support/random_method.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

namespace refdecomp {
namespace {

Outcome run(const char *src, InputVector in) { return evaluate(parse_method(src), in); }

std::int32_t int_result(const char *src, InputVector in) {
  auto o = run(src, std::move(in));
  EXPECT_EQ(o.kind, Outcome::Kind::Value) << o.str();
  return std::get<std::int32_t>(o.value);
}

std::string string_result(const char *src, InputVector in = {}) {
  auto o = run(src, std::move(in));
  EXPECT_EQ(o.kind, Outcome::Kind::Value) << o.str();
  return std::get<std::string>(o.value);
}

ArrayRef int_array(std::initializer_list<std::int32_t> xs) {
  auto a = std::make_shared<ArrayValue>();
  a->element = Type::int_();
  for (auto x : xs)
    a->items.emplace_back(x);
  return a;
}

TEST(Evaluate, SpecExamples) {
  EXPECT_EQ(int_result("int f(int x){return x+1;}", {41}), 42);
  auto err = run("int f(int x){return 1/x;}", {0});
  EXPECT_EQ(err.kind, Outcome::Kind::RuntimeError);
  EXPECT_EQ(err.error, RuntimeErrorKind::DivByZero);
  EXPECT_EQ(int_result("int f(int x){return x+1;}", {2147483647}), -2147483647 - 1);
}

TEST(Evaluate, IntegerEdgeCases) {
  const auto min = std::numeric_limits<std::int32_t>::min();
  EXPECT_EQ(int_result("int f(int x){return x / -1;}", {min}), min);
  EXPECT_EQ(int_result("int f(int x){return x % -1;}", {min}), 0);
  EXPECT_EQ(int_result("int f(int x){return -7 / x;}", {2}), -3);
  EXPECT_EQ(int_result("int f(int x){return -7 % x;}", {2}), -1);
  EXPECT_EQ(int_result("int f(int x){return -x;}", {min}), min);
  EXPECT_EQ(int_result("int f(int x){return -2147483648 + x;}", {0}), min);
  EXPECT_EQ(int_result("int f(int x){return (int) 5000000000L + x;}", {0}), 705032704);
  EXPECT_EQ(int_result("int f(double d){return (int) d;}", {1e20}),
            std::numeric_limits<std::int32_t>::max());
  EXPECT_EQ(int_result("int f(double d){return (int) d;}",
                       {std::numeric_limits<double>::quiet_NaN()}),
            0);
  EXPECT_EQ(int_result("int f(int x){x += 1.7; return x;}", {1}), 2);
  EXPECT_EQ(int_result("int f(int x){x *= 3000000000L; return x;}", {1}), -1294967296);
  EXPECT_EQ(int_result("int f(int x){int y = x++ + ++x; return y * 10 + x;}", {1}), 43);
}

TEST(Evaluate, LongAndDouble) {
  auto o = run("long f(int x){return x * 3000000000L;}", {2});
  EXPECT_EQ(std::get<std::int64_t>(o.value), 6000000000LL);
  auto d = run("double f(double x){return x % 2.5;}", {-7.0});
  EXPECT_DOUBLE_EQ(std::get<double>(d.value), -2.0);
  auto z = run("double f(double x){return 1 / x;}", {0.0});
  EXPECT_TRUE(std::isinf(std::get<double>(z.value)));
}

TEST(Evaluate, ShortCircuit) {
  EXPECT_EQ(int_result("int f(int b){if (b != 0 && 10 / b > 1) return 1; return 0;}", {0}), 0);
  auto swapped = run("int f(int b){if (10 / b > 1 && b != 0) return 1; return 0;}", {0});
  EXPECT_EQ(swapped.kind, Outcome::Kind::RuntimeError);
}

TEST(Evaluate, StringsFollowJavaFormatting) {
  EXPECT_EQ(string_result("String f(){return \"\" + 1.0;}"), "1.0");
  EXPECT_EQ(string_result("String f(){return \"\" + 1e7;}"), "1.0E7");
  EXPECT_EQ(string_result("String f(){return \"\" + 0.001;}"), "0.001");
  EXPECT_EQ(string_result("String f(){return \"\" + 0.0001;}"), "1.0E-4");
  EXPECT_EQ(string_result("String f(){return \"\" + 123.456;}"), "123.456");
  EXPECT_EQ(string_result("String f(){return \"\" + -0.0;}"), "-0.0");
  EXPECT_EQ(string_result("String f(){return 1 + 2 + \"a\" + 1 + 2;}"), "3a12");
  EXPECT_EQ(string_result("String f(){return \"\" + 5L + true;}"), "5true");
  EXPECT_EQ(java_double_string(1.0 / 3.0), "0.3333333333333333");
  EXPECT_EQ(java_double_string(std::numeric_limits<double>::quiet_NaN()), "NaN");
  EXPECT_EQ(java_double_string(-std::numeric_limits<double>::infinity()), "-Infinity");
  EXPECT_EQ(java_double_string(1234567.0), "1234567.0");
  EXPECT_EQ(java_double_string(2.5e-5), "2.5E-5");
  auto eq = run("boolean f(String s){return s == \"ab\";}", {std::string("ab")});
  EXPECT_TRUE(std::get<bool>(eq.value));
}

TEST(Evaluate, ArraysAndLoops) {
  const char *sum = "int f(int[] a){int s = 0; for (int i = 0; i < a.length; i++) "
                    "{ s += a[i]; } return s;}";
  EXPECT_EQ(int_result(sum, {int_array({1, 2, 3})}), 6);
  const char *each = "int f(int[] a){int s = 0; for (int e : a) { s = s * 10 + e; } return s;}";
  EXPECT_EQ(int_result(each, {int_array({1, 2, 3})}), 123);
  auto oob = run("int f(int[] a){return a[a.length];}", {int_array({1})});
  EXPECT_EQ(oob.error, RuntimeErrorKind::IndexOutOfBounds);
  auto neg = run("int f(int n){int[] a = new int[n]; return a.length;}", {-1});
  EXPECT_EQ(neg.error, RuntimeErrorKind::NegativeArraySize);
  EXPECT_EQ(int_result("int f(int n){int[] a = new int[]{4, 5}; a[1] *= n; return a[1];}", {3}), 15);
}

TEST(Evaluate, InputsAreNotMutated) {
  auto input = int_array({1, 2});
  InputVector in{input};
  int_result("int f(int[] a){a[0] = 9; return a[0];}", in);
  EXPECT_EQ(std::get<std::int32_t>(input->items[0]), 1);
}

TEST(Evaluate, AssignmentIndexOrder) {
  // right side is evaluated before the bounds check of a plain store
  auto o = run("int f(int[] a, int z){a[5] = 1 / z; return 0;}", {int_array({}), 0});
  EXPECT_EQ(o.error, RuntimeErrorKind::DivByZero);
  // but after it for a compound store
  auto c = run("int f(int[] a, int z){a[5] += 1 / z; return 0;}", {int_array({}), 0});
  EXPECT_EQ(c.error, RuntimeErrorKind::IndexOutOfBounds);
}

TEST(Evaluate, Switch) {
  const char *sw = "int f(int x){int r = 0; switch (x) { case 1: r = 10; break; "
                   "case 2: case 3: r = 20; break; default: r = -1; } return r;}";
  EXPECT_EQ(int_result(sw, {1}), 10);
  EXPECT_EQ(int_result(sw, {3}), 20);
  EXPECT_EQ(int_result(sw, {7}), -1);
  const char *fall = "int f(int x){int r = 0; switch (x) { case 1: r = 10; case 2: "
                     "r = 20; break; } return r;}";
  EXPECT_EQ(run(fall, {1}).error, RuntimeErrorKind::SwitchFallthroughViolation);
  EXPECT_EQ(int_result(fall, {2}), 20);
  const char *str = "int f(String s){switch (s) { case \"a\": return 1; default: return 2; }}";
  EXPECT_EQ(int_result(str, {std::string("a")}), 1);
}

TEST(Evaluate, BudgetExhaustion) {
  auto o = run("int f(int x){while (true) { x++; }}", {0});
  EXPECT_EQ(o.kind, Outcome::Kind::BudgetExhausted);
  auto big = run("int f(int x){int[] a = new int[2000000]; return a.length;}", {0});
  EXPECT_EQ(big.kind, Outcome::Kind::BudgetExhausted);
  EXPECT_THROW(evaluate(parse_method("int f(){return 1;}"), {}, 0), Error);
}

TEST(Sample, BoundaryPrefixAndDeterminism) {
  auto a = sample_inputs({Type::int_()}, 5, 7);
  ASSERT_EQ(a.size(), 5u);
  EXPECT_EQ(std::get<std::int32_t>(a[0][0]), 0);
  EXPECT_EQ(std::get<std::int32_t>(a[1][0]), 1);
  EXPECT_EQ(std::get<std::int32_t>(a[2][0]), -1);
  auto b = sample_inputs({Type::int_(), Type::string(), Type::int_().as_array()}, 50, 7);
  auto c = sample_inputs({Type::int_(), Type::string(), Type::int_().as_array()}, 50, 7);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t p = 0; p < b[i].size(); ++p)
      EXPECT_TRUE(same_value(b[i][p], c[i][p]));
  EXPECT_THROW(sample_inputs({Type::int_()}, 0, 1), Error);
  try {
    sample_inputs({Type::long_().as_array()}, 3, 1);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedType);
  }
}

TEST(Sample, ArraysIncludeEmptyAndSingleton) {
  auto s = sample_inputs({Type::int_().as_array()}, 2, 1);
  EXPECT_TRUE(std::get<ArrayRef>(s[0][0])->items.empty());
  EXPECT_EQ(std::get<ArrayRef>(s[1][0])->items.size(), 1u);
}

TEST(Check, SpecExamples) {
  auto a = parse_method("int f(int x){return x+1;}");
  auto b = parse_method("int g(int y){return 1+y;}");
  auto c = parse_method("int f(int x){return x+2;}");
  EXPECT_TRUE(check_equivalent(a, a, 200, 1).consistent());
  EXPECT_TRUE(check_equivalent(a, b, 200, 1).consistent());
  auto v = check_equivalent(a, c, 200, 1);
  ASSERT_FALSE(v.consistent());
  EXPECT_EQ(std::get<std::int32_t>(v.counterexample->input[0]), 0);
  EXPECT_EQ(v.counterexample->outcome_a.str(), "value(1)");
  EXPECT_EQ(v.counterexample->outcome_b.str(), "value(2)");
}

TEST(Check, SignatureMismatch) {
  auto a = parse_method("int f(int x){return x;}");
  auto b = parse_method("long f(int x){return x;}");
  auto c = parse_method("int f(long x){return 1;}");
  EXPECT_THROW(check_equivalent(a, b), Error);
  EXPECT_THROW(check_equivalent(a, c), Error);
}

TEST(Check, NaNIsCanonicalAndZeroSignMatters) {
  auto a = parse_method("double f(double x){return x * 0.0;}");
  auto b = parse_method("double f(double x){return 0.0 * x;}");
  EXPECT_TRUE(check_equivalent(a, b, 200, 3).consistent());
  auto c = parse_method("double f(double x){return 0.0;}");
  EXPECT_FALSE(check_equivalent(a, c, 200, 3).consistent());
}

TEST(Gate, MatchesCheckEquivalent) {
  auto a = parse_method("int f(int x, int y){return x / y;}");
  auto b = parse_method("int f(int x, int y){return y / x;}");
  EquivalenceGate gate(a, 200, 9);
  EXPECT_TRUE(gate.accepts(a));
  EXPECT_FALSE(gate.accepts(b));
}

TEST(Evaluate, DeterministicOnRandomMethods) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    auto m = testing::random_method(rng);
    auto inputs = sample_inputs(signature_of(m), 20, static_cast<std::uint64_t>(i));
    CompiledMethod compiled(m);
    for (const auto &in : inputs)
      ASSERT_TRUE(same_outcome(compiled.run(in), evaluate(m, in))) << print_method(m);
  }
}

} // namespace
} // namespace refdecomp
