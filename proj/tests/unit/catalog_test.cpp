#include "refdecomp/catalog.hpp"
#include "refdecomp/equivalence.hpp"
#include "refdecomp/error.hpp"
#include "refdecomp/syntax.hpp"
#include "support/random_method.hpp"

#include <gtest/gtest.h>

#include <set>

namespace refdecomp {
namespace {

std::vector<Token> tokens_of(const char *src) { return method_tokens(parse_method(src)); }

std::vector<Rewrite> rewrites(const char *rule, const MethodAst &ast,
                              const MethodAst *target = nullptr) {
  return find_rewrites(rule_by_id(rule), ast, target);
}

bool produces(const char *rule, const char *src, const char *expected) {
  auto want = tokens_of(expected);
  for (const auto &r : rewrites(rule, parse_method(src)))
    if (method_tokens(r.result) == want)
      return true;
  return false;
}

TEST(Catalog, InventoryIsClosed) {
  const auto &rules = list_rules();
  EXPECT_GE(rules.size(), 40u);
  std::set<std::string> ids;
  for (const auto &r : rules) {
    EXPECT_TRUE(ids.insert(r.id).second) << r.id;
    if (r.invertible) {
      ASSERT_FALSE(r.inverse_id.empty()) << r.id;
      const auto &inv = rule_by_id(r.inverse_id);
      EXPECT_TRUE(inv.invertible) << r.id;
      EXPECT_EQ(inv.inverse_id, r.id);
    } else {
      EXPECT_TRUE(r.inverse_id.empty()) << r.id;
    }
  }
  EXPECT_TRUE(std::is_sorted(rules.begin(), rules.end(),
                             [](const auto &a, const auto &b) { return a.id < b.id; }));
  int detector = 0;
  for (const auto &r : rules)
    detector += r.tier == Tier::Detector;
  EXPECT_EQ(detector, 8);
  EXPECT_THROW(rule_by_id("no-such-rule"), Error);
}

TEST(Catalog, DeMorganHasOneSite) {
  auto ast = parse_method("boolean f(boolean a, boolean b){ return !(a && b); }");
  auto sites = find_matches(rule_by_id("apply-de-morgans-law"), ast);
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_EQ(print_node(resolve_path(ast, sites[0].path)), "!(a && b)");
  auto out = apply_match(ast, sites[0]);
  EXPECT_EQ(method_tokens(out), tokens_of("boolean f(boolean a, boolean b){ return !a || !b; }"));
}

TEST(Catalog, RenameVariableTakesNameFromTarget) {
  auto ast = parse_method("int f(int x){ int tmp = x * 2; tmp = tmp + 1; return tmp; }");
  auto target =
      parse_method("int f(int x){ int result = x * 2; result = result + 1; return result; }");
  auto sites = find_matches(rule_by_id("rename-variable"), ast, &target);
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_EQ(sites[0].binding("from"), "tmp");
  EXPECT_EQ(sites[0].binding("to"), "result");
  EXPECT_EQ(method_tokens(apply_match(ast, sites[0])), method_tokens(target));
}

TEST(Catalog, NoDoubleNegationNoSites) {
  auto ast = parse_method("boolean f(boolean a){ return !a; }");
  EXPECT_TRUE(find_matches(rule_by_id("remove-double-negation"), ast).empty());
}

TEST(Catalog, GuardClauseFromElse) {
  auto ast = parse_method("int f(boolean c, int a, int b){ if (c) { return a; } else { return b; } }");
  auto sites = find_matches(rule_by_id("replace-nested-conditional-with-guard-clauses"), ast);
  ASSERT_EQ(sites.size(), 1u);
  EXPECT_EQ(method_tokens(apply_match(ast, sites[0])),
            tokens_of("int f(boolean c, int a, int b){ if (c) { return a; } return b; }"));
}

TEST(Catalog, CompoundAssignment) {
  EXPECT_TRUE(produces("replace-assignment-with-compound-assignment",
                       "int f(int x){ x = x + 1; return x; }",
                       "int f(int x){ x += 1; return x; }"));
  EXPECT_TRUE(produces("replace-compound-assignment-with-assignment",
                       "int f(int x){ x -= 2 + x; return x; }",
                       "int f(int x){ x = x - (2 + x); return x; }"));
}

TEST(Catalog, ExpressionRewrites) {
  EXPECT_TRUE(produces("apply-negation-as-inequality", "boolean f(int a){ return !(a == 1); }",
                       "boolean f(int a){ return a != 1; }"));
  EXPECT_TRUE(produces("remove-double-negation", "boolean f(boolean a){ return !!a; }",
                       "boolean f(boolean a){ return a; }"));
  EXPECT_TRUE(produces("apply-constant-folding", "int f(){ return 6 * 7; }",
                       "int f(){ return 42; }"));
  EXPECT_TRUE(produces("factor-out-coefficient", "int f(int a, int b){ return 3 * a + 3 * b; }",
                       "int f(int a, int b){ return 3 * (a + b); }"));
  EXPECT_TRUE(produces("reverse-comparison-operator", "boolean f(int a, int b){ return a < b; }",
                       "boolean f(int a, int b){ return b > a; }"));
  EXPECT_TRUE(produces("replace-inclusive-comparison-with-exclusive",
                       "boolean f(int a){ return a <= 9; }", "boolean f(int a){ return a < 10; }"));
  EXPECT_TRUE(produces("transpose-equation", "boolean f(int a, int b, int c){ return a + b == c; }",
                       "boolean f(int a, int b, int c){ return a == c - b; }"));
  EXPECT_TRUE(produces("replace-numeric-representation", "int f(){ return 255; }",
                       "int f(){ return 0xFF; }"));
  EXPECT_TRUE(produces("remove-cast", "int f(int a){ return (int) a; }",
                       "int f(int a){ return a; }"));
  EXPECT_TRUE(produces("replace-postfix-with-prefix", "int f(int a){ a++; return a; }",
                       "int f(int a){ ++a; return a; }"));
  EXPECT_TRUE(produces("remove-parentheses", "int f(int a){ return (a) + 1; }",
                       "int f(int a){ return a + 1; }"));
}

TEST(Catalog, StatementRewrites) {
  EXPECT_TRUE(produces("conditional-to-expression",
                       "int f(boolean c){ int x; if (c) x = 1; else x = 2; return x; }",
                       "int f(boolean c){ int x; x = c ? 1 : 2; return x; }"));
  EXPECT_TRUE(produces("reverse-conditional",
                       "int f(boolean c){ if (c) return 1; else return 2; }",
                       "int f(boolean c){ if (!c) return 2; else return 1; }"));
  EXPECT_TRUE(produces("split-conditional-branch",
                       "int f(boolean a, boolean b){ int x = 0; if (a || b) x = 1; return x; }",
                       "int f(boolean a, boolean b){ int x = 0; if (a) x = 1; else if (b) x = 1; "
                       "return x; }"));
  EXPECT_TRUE(produces("decompose-conditional-branch",
                       "int f(boolean a, boolean b){ int x = 0; if (a && b) x = 1; return x; }",
                       "int f(boolean a, boolean b){ int x = 0; if (a) { if (b) x = 1; } return x; }"));
  EXPECT_TRUE(produces("remove-branch-by-pre-assignment",
                       "int f(boolean c){ int x; if (c) x = 1; else x = 2; return x; }",
                       "int f(boolean c){ int x; x = 2; if (c) x = 1; return x; }"));
  EXPECT_TRUE(produces("replace-for-with-foreach",
                       "int f(int[] a){ int s = 0; for (int i = 0; i < a.length; i++) "
                       "{ s += a[i]; } return s; }",
                       "int f(int[] a){ int s = 0; for (int tmp : a) { s += tmp; } return s; }"));
  EXPECT_TRUE(produces("remove-dead-code", "int f(int a){ return a; a = 2; }",
                       "int f(int a){ return a; }"));
  EXPECT_TRUE(produces("remove-dead-code", "int f(int a){ if (false) { a = 2; } return a; }",
                       "int f(int a){ return a; }"));
  EXPECT_TRUE(produces("split-variable-declaration", "int f(){ int a = 1, b = 2; return a + b; }",
                       "int f(){ int a = 1; int b = 2; return a + b; }"));
  EXPECT_TRUE(produces("consolidate-variable-declaration-and-initialization",
                       "int f(int x){ int a; a = x; return a; }",
                       "int f(int x){ int a = x; return a; }"));
  EXPECT_TRUE(produces("introduce-return-variable", "int f(int x){ return x * 2; }",
                       "int f(int x){ int tmp = x * 2; return tmp; }"));
  EXPECT_TRUE(produces("split-chained-assignment",
                       "int f(int x){ int a; int b; a = b = x; return a + b; }",
                       "int f(int x){ int a; int b; b = x; a = b; return a + b; }"));
  EXPECT_TRUE(produces("replace-array-declaration-style",
                       "int f(){ int a[] = new int[]{1}; return a[0]; }",
                       "int f(){ int[] a = new int[]{1}; return a[0]; }"));
  EXPECT_TRUE(produces("remove-unused-variable", "int f(int x){ int y = x + 1; return x; }",
                       "int f(int x){ return x; }"));
  EXPECT_TRUE(produces("extract-variable", "int f(int x){ return x * 2 + 1; }",
                       "int f(int x){ int tmp = x * 2; return tmp + 1; }"));
  EXPECT_TRUE(produces("inline-variable", "int f(int x){ int y = x * 2; return y + 1; }",
                       "int f(int x){ return x * 2 + 1; }"));
  EXPECT_TRUE(produces("change-variable-type", "long f(int x){ int y = x; return y; }",
                       "long f(int x){ long y = x; return y; }"));
  EXPECT_TRUE(produces("add-variable-modifier", "int f(int x){ int y = x; return y; }",
                       "int f(int x){ final int y = x; return y; }"));
}

TEST(Catalog, SwitchRoundTrip) {
  const char *chain = "int f(int x){ int r = 0; if (x == 1) { r = 10; } else if (x == 2) { r = 20; } "
                      "else { r = 30; } return r; }";
  auto ast = parse_method(chain);
  auto to_switch = rewrites("replace-if-with-switch", ast);
  ASSERT_FALSE(to_switch.empty());
  for (const auto &r : to_switch) {
    EXPECT_TRUE(check_equivalent(ast, r.result, 100, 1).consistent());
    bool restored = false;
    for (const auto &back : rewrites("replace-switch-with-if", r.result, &ast))
      restored |= method_tokens(back.result) == method_tokens(ast);
    EXPECT_TRUE(restored) << print_method(r.result);
  }
}

TEST(Catalog, ApplyRejectsStaleSite) {
  auto ast = parse_method("boolean f(boolean a, boolean b){ return !(a && b); }");
  auto sites = find_matches(rule_by_id("apply-de-morgans-law"), ast);
  ASSERT_EQ(sites.size(), 1u);
  auto other = parse_method("boolean f(boolean a, boolean b){ return !(b && a); }");
  try {
    apply_match(other, sites[0]);
    FAIL() << "stale site accepted";
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::StaleSite);
  }
}

TEST(Catalog, ApplyRechecksGuards) {
  auto ast = parse_method("int f(int a, int b){ if (b != 0 && a / b > 1) return 1; return 0; }");
  // A hand-built site on the short-circuit && that the matcher refuses.
  MatchSite site{"swap-commutative-operands", NodePath{{0, 0}}, {}, 0, method_fingerprint(ast)};
  ASSERT_EQ(resolve_path(ast, site.path)->text, "&&");
  try {
    apply_match(ast, site);
    FAIL() << "guard not rechecked";
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::GuardViolation);
  }
  site.rule_id = "remove-double-negation";
  EXPECT_THROW(apply_match(ast, site), Error);
}

// Each witness shows that dropping a guard changes behavior: `unguarded` is
// what the rule would produce without it, and it is observably different.
struct Witness {
  const char *rule;
  const char *source;
  const char *unguarded;
};

const Witness kWitnesses[] = {
    {"swap-commutative-operands",
     "int f(int a, int b){ if (b != 0 && a / b > 1) return 1; return 0; }",
     "int f(int a, int b){ if (a / b > 1 && b != 0) return 1; return 0; }"},
    {"swap-commutative-operands", "String f(int x){ return \"a\" + x; }",
     "String f(int x){ return x + \"a\"; }"},
    {"reverse-comparison-operator", "int f(int x){ if (x < (x = 5)) return 1; return 0; }",
     "int f(int x){ if ((x = 5) > x) return 1; return 0; }"},
    {"transpose-equation",
     "int f(){ int a = 1073741824; long c = 2147483648L; if (a + a == c) return 1; return 0; }",
     "int f(){ int a = 1073741824; long c = 2147483648L; if (a == c - a) return 1; return 0; }"},
    {"factor-out-coefficient", "double f(double a, double b){ return 3.0 * a + 3.0 * b; }",
     "double f(double a, double b){ return 3.0 * (a + b); }"},
    {"replace-inclusive-comparison-with-exclusive",
     "int f(int x){ if (x <= 2147483647) return 1; return 0; }",
     "int f(int x){ if (x < 2147483647 + 1) return 1; return 0; }"},
    {"replace-inclusive-comparison-with-exclusive",
     "int f(double x){ if (x <= 1) return 1; return 0; }",
     "int f(double x){ if (x < 1 + 1) return 1; return 0; }"},
    {"introduce-constant-to-comparison", "int f(int x, int y){ if (x < y) return 1; return 0; }",
     "int f(int x, int y){ if (x + 1 < y + 1) return 1; return 0; }"},
    {"remove-unused-variable", "int f(int x){ int y = 10 / x; return 1; }",
     "int f(int x){ return 1; }"},
    {"extract-variable", "int f(int x){ if (x != 0 && 10 / x > 1) return 1; return 0; }",
     "int f(int x){ int tmp = 10 / x; if (x != 0 && tmp > 1) return 1; return 0; }"},
    {"inline-variable", "int f(int x){ int y = x; x = 5; return y; }",
     "int f(int x){ x = 5; return x; }"},
    {"remove-branch-by-pre-assignment",
     "int f(int x){ if (x > 0) x = 1; else x = -1; return x; }",
     "int f(int x){ x = -1; if (x > 0) x = 1; return x; }"},
    {"replace-pre-assignment-with-branch", "int f(int x){ x = 5; if (x > 0) x = 1; return x; }",
     "int f(int x){ if (x > 0) x = 1; else x = 5; return x; }"},
    {"remove-dead-code",
     "int f(int x){ int s = 0; while (x > 0) { x--; if (x == 2) return s; s++; } return s; }",
     "int f(int x){ int s = 0; while (x > 0) { x--; if (x == 2) return s; } return s; }"},
    {"swap-conditional-branches",
     "int f(int x){ if (x == 1) return 1; else if (x == 1) return 2; return 0; }",
     "int f(int x){ if (x == 1) return 2; else if (x == 1) return 1; return 0; }"},
    {"replace-for-with-foreach",
     "int f(int[] a){ int s = 0; for (int i = 0; i < a.length; i++) { s = s + a[i]; "
     "a = new int[]{7, 7, 7, 7}; } return s; }",
     "int f(int[] a){ int s = 0; for (int tmp : a) { s = s + tmp; a = new int[]{7, 7, 7, 7}; } "
     "return s; }"},
    {"replace-foreach-with-for",
     "int f(int[] a){ int s = 0; for (int v : a) { s = s + v; a = new int[]{7, 7, 7, 7}; } "
     "return s; }",
     "int f(int[] a){ int s = 0; for (int i = 0; i < a.length; i++) { s = s + a[i]; "
     "a = new int[]{7, 7, 7, 7}; } return s; }"},
    {"change-variable-type", "long f(int x){ int y = x; return y * 100000; }",
     "long f(int x){ long y = x; return y * 100000; }"},
    {"decompose-conditional-branch",
     "int f(boolean a, boolean b){ int r = 0; if (a && b) r = 1; else r = 2; return r; }",
     "int f(boolean a, boolean b){ int r = 0; if (a) { if (b) r = 1; else r = 2; } return r; }"},
    {"replace-postfix-with-prefix", "int f(int x){ int y = x++; return y; }",
     "int f(int x){ int y = ++x; return y; }"},
    {"replace-prefix-with-postfix", "int f(int x){ int y = ++x; return y; }",
     "int f(int x){ int y = x++; return y; }"},
    {"replace-guard-clause-with-conditional",
     "int f(int x){ int r = 0; { if (x > 0) r = 1; r = r + 10; } return r; }",
     "int f(int x){ int r = 0; { if (x > 0) r = 1; else { r = r + 10; } } return r; }"},
    {"replace-nested-conditional-with-guard-clauses",
     "int f(int x){ int r = 0; { if (x > 0) { r = 1; } else { r = 2; } } return r; }",
     "int f(int x){ int r = 0; { if (x > 0) { r = 1; } r = 2; } return r; }"},
    {"introduce-cast", "long f(long x){ return x + 1; }", "long f(long x){ return (int) x + 1; }"},
    {"replace-switch-with-if",
     "int f(int x){ int s = 0; switch (x) { case 1: s = 1; case 2: s = s + 2; break; "
     "default: s = 9; } return s; }",
     "int f(int x){ int s = 0; if (x == 1) { s = 1; } else if (x == 2) { s = s + 2; } "
     "else { s = 9; } return s; }"},
};

TEST(Catalog, GuardWitnesses) {
  for (const auto &w : kWitnesses) {
    SCOPED_TRACE(w.rule);
    auto ast = parse_method(w.source);
    auto bad = parse_method(w.unguarded);
    EXPECT_FALSE(check_equivalent(ast, bad, 200, 3).consistent()) << "witness is not a witness";
    auto bad_tokens = method_tokens(bad);
    for (const auto &r : rewrites(w.rule, ast)) {
      EXPECT_NE(method_tokens(r.result), bad_tokens) << r.site.summary();
      EXPECT_TRUE(check_equivalent(ast, r.result, 200, 3).consistent()) << r.site.summary();
    }
  }
}

TEST(Catalog, ConstantFoldingSkipsDivisionByZero) {
  auto ast = parse_method("int f(){ return 1 / 0; }");
  EXPECT_TRUE(find_matches(rule_by_id("apply-constant-folding"), ast).empty());
}

TEST(Catalog, SitesAreDeterministic) {
  std::mt19937_64 rng(99);
  auto m = testing::random_method(rng);
  for (const auto &rule : list_rules()) {
    auto a = find_matches(rule, m);
    auto b = find_matches(rule, m);
    ASSERT_EQ(a.size(), b.size()) << rule.id;
    for (std::size_t i = 0; i < a.size(); ++i)
      EXPECT_EQ(a[i].summary(), b[i].summary());
  }
}

// Small-scale versions of the soundness and inverse properties; the
// acceptance suite runs them at full size.
TEST(Catalog, RandomSoundnessAndInverses) {
  std::mt19937_64 rng(2024);
  testing::GenOptions opt;
  opt.redundant_paren = 0.1;
  for (int i = 0; i < 30; ++i) {
    auto m = testing::random_method(rng, opt);
    for (const auto &rule : list_rules()) {
      for (const auto &r : find_rewrites(rule, m)) {
        ASSERT_TRUE(type_checks(r.result)) << r.site.summary();
        auto out = apply_match(m, r.site);
        ASSERT_EQ(method_tokens(out), method_tokens(r.result)) << r.site.summary();
        ASSERT_TRUE(check_equivalent(m, r.result, 40, i).consistent())
            << r.site.summary() << "\n" << print_method(m);
        if (!rule.invertible)
          continue;
        bool restored = false;
        for (const auto &back : find_rewrites(rule_by_id(rule.inverse_id), r.result, &m))
          if (method_tokens(back.result) == method_tokens(m)) {
            restored = true;
            break;
          }
        ASSERT_TRUE(restored) << r.site.summary() << "\n" << print_method(m);
      }
    }
  }
}

} // namespace
} // namespace refdecomp
