// Statement and control-flow rewrites: conditionals, switches, loops, blocks
// and dead code.
#include "rule_support.hpp"

namespace refdecomp::catalog {

namespace {

using StmtFn =
    std::function<std::optional<MethodAst>(const RuleContext &, const NodePtr &, const SiteSpec &)>;

/// A rule rooted at one statement node of the given kind.
RuleImpl stmt_rule(RewriteRule meta, Kind kind, StmtFn fn, int variants = 1) {
  RuleImpl r;
  r.meta = std::move(meta);
  r.variants = variants;
  r.rewrite = [kind, fn](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto n = ctx.node(s.path);
    if (!n || n->kind != kind)
      return std::nullopt;
    return fn(ctx, n, s);
  };
  return r;
}

NodePtr if_node(NodePtr cond, NodePtr then_branch, NodePtr else_branch = nullptr) {
  std::vector<NodePtr> kids{std::move(cond), std::move(then_branch)};
  if (else_branch)
    kids.push_back(std::move(else_branch));
  return assemble(Kind::If, "", std::move(kids));
}

NodePtr bool_literal(bool b) { return make_literal(LitKind::Bool, b ? "true" : "false"); }

/// The single statement of a branch, looking through a one-statement block.
NodePtr single_stmt(const NodePtr &branch) {
  if (branch->kind != Kind::Block)
    return branch;
  return branch->size() == 1 ? branch->kid(0) : nullptr;
}

/// `x = e` as the only statement of a branch, with x a variable.
NodePtr single_assign(const NodePtr &branch) {
  auto s = single_stmt(branch);
  if (!s || s->kind != Kind::ExprStmt)
    return nullptr;
  const NodePtr &a = s->kid(0);
  if (a->kind != Kind::Assign || a->text != "=" || a->kid(0)->kind != Kind::Name)
    return nullptr;
  return a;
}

NodePtr single_return(const NodePtr &branch) {
  auto s = single_stmt(branch);
  return s && s->kind == Kind::Return ? s : nullptr;
}

NodePtr braced_if(bool braced, NodePtr stmt) {
  return braced ? make_block({std::move(stmt)}) : stmt;
}

/// A `break` that would leave an enclosing switch or loop from this position.
bool exits_switch(const NodePtr &n) {
  if (n->kind == Kind::Break)
    return true;
  if (n->kind == Kind::Switch || n->kind == Kind::While || n->kind == Kind::For ||
      n->kind == Kind::Foreach || is_expression(n->kind))
    return false;
  return std::any_of(n->kids.begin(), n->kids.end(),
                     [](const NodePtr &k) { return k && exits_switch(k); });
}

bool exits_switch(const std::vector<NodePtr> &stmts) {
  return std::any_of(stmts.begin(), stmts.end(),
                     [](const NodePtr &k) { return exits_switch(k); });
}

// ---- conditional expressions --------------------------------------------------------

RuleImpl conditional_to_expression() {
  return stmt_rule(
      describe("conditional-to-expression", "Conditional to Expression", Tier::Extended,
               "if ($e1) $v1 = $e2; else $v1 = $e3;", "$v1 = $e1 ? $e2 : $e3;",
               {"both branches assign the same variable or both return",
                "$e2 and $e3 have the same type", "both branches are braced alike"},
               "replace-conditional-operator-with-if"),
      Kind::If,
      [](const RuleContext &ctx, const NodePtr &n, const SiteSpec &s) -> std::optional<MethodAst> {
        if (n->size() != 3 || (n->kid(1)->kind == Kind::Block) != (n->kid(2)->kind == Kind::Block))
          return std::nullopt;
        if (auto a = single_assign(n->kid(1)), b = single_assign(n->kid(2)); a && b) {
          if (ctx.symbol_of(a->kid(0)) != ctx.symbol_of(b->kid(0)) ||
              ctx.type_of(a->kid(1)) != ctx.type_of(b->kid(1)))
            return std::nullopt;
          auto t = assemble(Kind::Ternary, "", {operand(n, 0), operand(a, 1), operand(b, 1)});
          return replace_at(ctx.ast, s.path,
                            make_expr_stmt(assemble(Kind::Assign, "=", {operand(a, 0), t})));
        }
        if (auto a = single_return(n->kid(1)), b = single_return(n->kid(2)); a && b) {
          if (ctx.type_of(a->kid(0)) != ctx.type_of(b->kid(0)))
            return std::nullopt;
          auto t = assemble(Kind::Ternary, "", {operand(n, 0), operand(a, 0), operand(b, 0)});
          return replace_at(ctx.ast, s.path, make_return(t));
        }
        return std::nullopt;
      });
}

RuleImpl conditional_operator_to_if() {
  RuleImpl r;
  r.meta = describe("replace-conditional-operator-with-if",
                    "Replace Conditional Operator with If", Tier::Extended,
                    "$v1 = $e1 ? $e2 : $e3;", "if ($e1) $v1 = $e2; else $v1 = $e3;",
                    {"$e2 and $e3 have the same type"}, "conditional-to-expression");
  r.variants = 2;  // 0: unbraced branches, 1: braced
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto n = ctx.node(s.path);
    if (!n)
      return std::nullopt;
    bool braced = s.variant == 1;
    if (n->kind == Kind::ExprStmt) {
      const NodePtr &a = n->kid(0);
      if (a->kind != Kind::Assign || a->text != "=" || a->kid(0)->kind != Kind::Name ||
          a->kid(1)->kind != Kind::Ternary)
        return std::nullopt;
      const NodePtr &t = a->kid(1);
      if (ctx.type_of(t->kid(1)) != ctx.type_of(t->kid(2)))
        return std::nullopt;
      auto arm = [&](const NodePtr &target, const NodePtr &value) {
        return braced_if(braced, make_expr_stmt(assemble(Kind::Assign, "=", {target, value})));
      };
      return replace_at(ctx.ast, s.path,
                        if_node(t->kid(0), arm(a->kid(0), operand(t, 1)),
                                arm(clone(a->kid(0)), operand(t, 2))));
    }
    if (n->kind == Kind::Return && n->kid(0)->kind == Kind::Ternary) {
      const NodePtr &t = n->kid(0);
      if (ctx.type_of(t->kid(1)) != ctx.type_of(t->kid(2)))
        return std::nullopt;
      auto arm = [&](const NodePtr &value) {
        return braced_if(braced, make_return(value));
      };
      return replace_at(ctx.ast, s.path, if_node(t->kid(0), arm(operand(t, 1)), arm(operand(t, 2))));
    }
    return std::nullopt;
  };
  return r;
}

// ---- branch structure ------------------------------------------------------------------

RuleImpl reverse_conditional() {
  return stmt_rule(
      describe("reverse-conditional", "Reverse Conditional", Tier::Extended,
               "if ($e1) $s1 else $s2", "if (!$e1) $s2 else $s1", {"an else branch exists"},
               "reverse-conditional"),
      Kind::If,
      [](const RuleContext &ctx, const NodePtr &n, const SiteSpec &s) -> std::optional<MethodAst> {
        if (n->size() != 3)
          return std::nullopt;
        const NodePtr &c = n->kid(0);
        bool is_not = c->kind == Kind::Unary && c->text == "!";
        // Variant 1 stacks a second `!` instead of dropping the first.
        if (s.variant == 1 && !is_not)
          return std::nullopt;
        return replace_at(ctx.ast, s.path,
                          assemble_like(n, {negate(c, s.variant == 0), operand(n, 2), operand(n, 1)}));
      },
      2);
}

struct LiteralTest {
  NodePtr subject;
  std::string key;
};

/// `e == L` or `L == e` with L an integer or string literal and e pure.
std::optional<LiteralTest> literal_test(const RuleContext &ctx, const NodePtr &cond) {
  const NodePtr &c = unparen(cond);
  if (c->kind != Kind::Binary || c->text != "==")
    return std::nullopt;
  for (int side = 1; side >= 0; --side) {
    const NodePtr &lit = unparen(c->kid(static_cast<std::size_t>(side)));
    const NodePtr &subject = c->kid(static_cast<std::size_t>(1 - side));
    if (!pure(subject))
      continue;
    Type t = ctx.type_of(subject);
    if (t.is_integral()) {
      if (auto v = integral_constant(lit))
        return LiteralTest{unparen(subject), "i" + std::to_string(*v)};
    } else if (t.is(BaseType::String) && lit->kind == Kind::Literal &&
               lit->lit == LitKind::String) {
      return LiteralTest{unparen(subject), "s" + string_literal_value(lit->text)};
    }
  }
  return std::nullopt;
}

RuleImpl swap_branches() {
  return stmt_rule(
      describe("swap-conditional-branches", "Swap Conditional Branches", Tier::Extended,
               "if ($e1 == $c1) $s1 else if ($e1 == $c2) $s2", "if ($e1 == $c2) $s2 else if ($e1 == $c1) $s1",
               {"$e1 is pure", "$c1 and $c2 are distinct literals"},
               "swap-conditional-branches"),
      Kind::If,
      [](const RuleContext &ctx, const NodePtr &n, const SiteSpec &s) -> std::optional<MethodAst> {
        if (n->size() != 3 || n->kid(2)->kind != Kind::If)
          return std::nullopt;
        const NodePtr &inner = n->kid(2);
        auto a = literal_test(ctx, n->kid(0));
        auto b = literal_test(ctx, inner->kid(0));
        if (!a || !b || a->key == b->key || !structurally_equal(a->subject, b->subject))
          return std::nullopt;
        auto moved = if_node(n->kid(0), n->kid(1), inner->size() == 3 ? inner->kid(2) : nullptr);
        return replace_at(ctx.ast, s.path, if_node(inner->kid(0), inner->kid(1), moved));
      });
}

RuleImpl split_branch() {
  return stmt_rule(
      describe("split-conditional-branch", "Split Conditional Branch", Tier::Extended,
               "if ($e1 || $e2) $s1", "if ($e1) $s1 else if ($e2) $s1", {},
               "merge-conditional-branch"),
      Kind::If,
      [](const RuleContext &ctx, const NodePtr &n, const SiteSpec &s) -> std::optional<MethodAst> {
        const NodePtr &c = n->kid(0);
        if (c->kind != Kind::Binary || c->text != "||")
          return std::nullopt;
        auto inner = if_node(c->kid(1), clone(n->kid(1)), n->size() == 3 ? n->kid(2) : nullptr);
        return replace_at(ctx.ast, s.path, if_node(c->kid(0), n->kid(1), inner));
      });
}

RuleImpl merge_branch() {
  return stmt_rule(
      describe("merge-conditional-branch", "Merge Conditional Branch", Tier::Extended,
               "if ($e1) $s1 else if ($e2) $s1", "if ($e1 || $e2) $s1",
               {"both arms are identical"}, "split-conditional-branch"),
      Kind::If,
      [](const RuleContext &ctx, const NodePtr &n, const SiteSpec &s) -> std::optional<MethodAst> {
        if (n->size() != 3 || n->kid(2)->kind != Kind::If)
          return std::nullopt;
        const NodePtr &inner = n->kid(2);
        if (!structurally_equal(n->kid(1), inner->kid(1)))
          return std::nullopt;
        auto cond = assemble(Kind::Binary, "||", {operand(n, 0), operand(inner, 0)});
        return replace_at(ctx.ast, s.path,
                          if_node(cond, n->kid(1), inner->size() == 3 ? inner->kid(2) : nullptr));
      });
}

RuleImpl decompose_branch() {
  return stmt_rule(
      describe("decompose-conditional-branch", "Decompose Conditional Branch", Tier::Extended,
               "if ($e1 && $e2) $s1", "if ($e1) { if ($e2) $s1 }", {"no else branch"}, ""),
      Kind::If,
      [](const RuleContext &ctx, const NodePtr &n, const SiteSpec &s) -> std::optional<MethodAst> {
        const NodePtr &c = n->kid(0);
        if (n->size() != 2 || c->kind != Kind::Binary || c->text != "&&")
          return std::nullopt;
        return replace_at(ctx.ast, s.path,
                          if_node(c->kid(0), make_block({if_node(c->kid(1), n->kid(1))})));
      });
}

// ---- guard clauses ----------------------------------------------------------------------

RuleImpl nested_to_guard() {
  return stmt_rule(
      describe("replace-nested-conditional-with-guard-clauses",
               "Replace Nested Conditional with Guard Clauses", Tier::Extended,
               "if ($e1) $s1 else { $s2 }", "if ($e1) $s1 $s2",
               {"$s1 cannot complete normally", "the statement is in a block"},
               "replace-guard-clause-with-conditional"),
      Kind::If,
      [](const RuleContext &ctx, const NodePtr &n, const SiteSpec &s) -> std::optional<MethodAst> {
        if (n->size() != 3 || !in_stmt_list(ctx.ast, s.path) ||
            can_complete_normally(n->kid(1)))
          return std::nullopt;
        auto rest = body_stmts(n->kid(2));
        if (rest.empty())
          return std::nullopt;
        std::vector<NodePtr> stmts{if_node(n->kid(0), n->kid(1))};
        stmts.insert(stmts.end(), rest.begin(), rest.end());
        return splice(ctx.ast, s.path, 1, std::move(stmts));
      });
}

RuleImpl guard_to_nested() {
  RuleImpl r;
  r.meta = describe("replace-guard-clause-with-conditional",
                    "Replace Guard Clause with Conditional", Tier::Extended,
                    "if ($e1) $s1 $s2", "if ($e1) $s1 else { $s2 }",
                    {"$s1 cannot complete normally", "the statement is in a block"},
                    "replace-nested-conditional-with-guard-clauses");
  // variant = 2 * (k - 1) + unbraced, moving the k following statements.
  r.sites = [](const RuleContext &ctx) {
    std::vector<SiteSpec> out;
    walk(ctx.ast, [&](const NodePtr &n, const NodePath &p) {
      if (n->kind != Kind::If || n->size() != 2 || !in_stmt_list(ctx.ast, p))
        return true;
      auto parent = ctx.node(p.parent());
      int after = static_cast<int>(parent->size()) - p.back() - 1;
      for (int k = 1; k <= after; ++k) {
        out.push_back({p, {}, 2 * (k - 1)});
        if (k == 1)
          out.push_back({p, {}, 1});
      }
      return true;
    });
    return out;
  };
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto n = ctx.node(s.path);
    if (!n || n->kind != Kind::If || n->size() != 2 || !in_stmt_list(ctx.ast, s.path) ||
        can_complete_normally(n->kid(1)))
      return std::nullopt;
    std::size_t k = static_cast<std::size_t>(s.variant / 2 + 1);
    bool unbraced = s.variant % 2 == 1;
    auto parent = ctx.node(s.path.parent());
    auto first = static_cast<std::size_t>(s.path.back()) + 1;
    if (first + k > parent->size() || (unbraced && k != 1))
      return std::nullopt;
    std::vector<NodePtr> moved(parent->kids.begin() + static_cast<std::ptrdiff_t>(first),
                               parent->kids.begin() + static_cast<std::ptrdiff_t>(first + k));
    if (unbraced && moved[0]->kind == Kind::VarDecl)
      return std::nullopt;
    NodePtr else_branch = unbraced ? moved[0] : make_block(moved);
    return splice(ctx.ast, s.path, 1 + k, {if_node(n->kid(0), n->kid(1), else_branch)});
  };
  return r;
}

// ---- switch ---------------------------------------------------------------------------------

/// `s == L` with s a variable of type int or String and L a matching literal.
std::optional<std::pair<int, std::string>> switch_test(const RuleContext &ctx,
                                                       const NodePtr &cond) {
  if (cond->kind != Kind::Binary || cond->text != "==" || cond->kid(0)->kind != Kind::Name)
    return std::nullopt;
  const NodePtr &s = cond->kid(0);
  const NodePtr &lit = cond->kid(1);
  Type t = ctx.type_of(s);
  int sym = ctx.symbol_of(s);
  if (t == Type::int_()) {
    auto kind = lit->kind == Kind::Unary && lit->text == "-" ? lit->kid(0) : lit;
    if (kind->kind == Kind::Literal && kind->lit == LitKind::Int)
      return std::make_pair(sym, "i" + std::to_string(*integral_constant(lit)));
  } else if (t == Type::string() && lit->kind == Kind::Literal && lit->lit == LitKind::String) {
    return std::make_pair(sym, "s" + string_literal_value(lit->text));
  }
  return std::nullopt;
}

RuleImpl if_to_switch() {
  RuleImpl r;
  r.meta = describe("replace-if-with-switch", "Replace If with Switch", Tier::Extended,
                    "if ($v1 == $c1) $s1 else if ($v1 == $c2) $s2 else $s3",
                    "switch ($v1) { case $c1: $s1 break; case $c2: $s2 break; default: $s3 }",
                    {"$v1 is an int or String variable", "labels are distinct literals",
                     "no arm contains a break that would leave the switch"},
                    "replace-switch-with-if");
  // variant + 1 = number of case arms taken from the chain.
  r.sites = [](const RuleContext &ctx) {
    std::vector<SiteSpec> out;
    walk(ctx.ast, [&](const NodePtr &n, const NodePath &p) {
      if (n->kind != Kind::If)
        return true;
      int arms = 0;
      for (NodePtr cur = n; cur && cur->kind == Kind::If; cur = cur->size() == 3 ? cur->kid(2) : nullptr)
        ++arms;
      for (int v = 0; v < arms; ++v)
        out.push_back({p, {}, v});
      return true;
    });
    return out;
  };
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto n = ctx.node(s.path);
    if (!n || n->kind != Kind::If)
      return std::nullopt;
    std::vector<NodePtr> cases;
    std::set<std::string> keys;
    NodePtr subject;
    int sym = -1;
    NodePtr cur = n;
    auto arm_stmts = [](const NodePtr &branch) {
      auto stmts = body_stmts(branch);
      if (can_complete_normally(branch))
        stmts.push_back(make(Kind::Break));
      return stmts;
    };
    for (int i = 0; i <= s.variant; ++i) {
      if (!cur || cur->kind != Kind::If)
        return std::nullopt;
      auto test = switch_test(ctx, cur->kid(0));
      if (!test || (sym >= 0 && test->first != sym) || !keys.insert(test->second).second ||
          exits_switch(cur->kid(1)))
        return std::nullopt;
      sym = test->first;
      subject = cur->kid(0)->kid(0);
      auto arm = std::make_shared<Node>();
      arm->kind = Kind::Case;
      arm->count = 1;
      arm->kids.push_back(clone(cur->kid(0)->kid(1)));
      for (auto &st : arm_stmts(cur->kid(1)))
        arm->kids.push_back(st);
      cases.push_back(arm);
      cur = cur->size() == 3 ? cur->kid(2) : nullptr;
    }
    if (cur) {
      if (exits_switch(cur))
        return std::nullopt;
      auto arm = std::make_shared<Node>();
      arm->kind = Kind::Case;
      arm->flag = true;
      arm->kids = arm_stmts(cur);
      cases.push_back(arm);
    }
    std::vector<NodePtr> kids{clone(subject)};
    kids.insert(kids.end(), cases.begin(), cases.end());
    return replace_at(ctx.ast, s.path, make(Kind::Switch, std::move(kids)));
  };
  return r;
}

struct SwitchArm {
  NodePtr label;  // null for default
  std::vector<NodePtr> stmts;
};

/// Arms of a switch convertible to an if chain, trailing breaks removed.
std::optional<std::vector<SwitchArm>> switch_arms(const RuleContext &ctx, const NodePtr &sw) {
  const NodePtr &s = sw->kid(0);
  Type t = ctx.type_of(s);
  if (s->kind != Kind::Name || (t != Type::int_() && t != Type::string()) || sw->size() < 2)
    return std::nullopt;
  std::vector<SwitchArm> arms;
  for (std::size_t i = 1; i < sw->size(); ++i) {
    const NodePtr &arm = sw->kid(i);
    bool last = i + 1 == sw->size();
    if (arm->flag ? (!last || arm->count != 0) : arm->count != 1)
      return std::nullopt;
    std::vector<NodePtr> stmts(arm->kids.begin() + arm->count, arm->kids.end());
    bool ended = !stmts.empty() && stmts.back()->kind == Kind::Break;
    if (ended)
      stmts.pop_back();
    if (!last && !ended && can_complete_normally(make_block(stmts)))
      return std::nullopt;
    if (exits_switch(stmts))
      return std::nullopt;
    arms.push_back({arm->flag ? nullptr : arm->kid(0), std::move(stmts)});
  }
  if (!arms.front().label)
    return std::nullopt;
  return arms;
}

bool unbracable(const SwitchArm &arm) {
  return arm.stmts.size() == 1 && arm.stmts[0]->kind != Kind::VarDecl;
}

RuleImpl switch_to_if() {
  RuleImpl r;
  r.meta = describe("replace-switch-with-if", "Replace Switch with If", Tier::Extended,
                    "switch ($v1) { case $c1: $s1 break; default: $s2 }",
                    "if ($v1 == $c1) $s1 else $s2",
                    {"$v1 is an int or String variable", "one label per arm",
                     "default comes last", "arms do not fall through"},
                    "replace-if-with-switch");
  // variant: bitmask of arms written without braces.
  r.sites = [](const RuleContext &ctx) {
    std::vector<SiteSpec> out;
    walk(ctx.ast, [&](const NodePtr &n, const NodePath &p) {
      if (n->kind != Kind::Switch)
        return true;
      auto arms = switch_arms(ctx, n);
      if (!arms)
        return true;
      unsigned free_bits = 0;
      for (std::size_t i = 0; i < arms->size() && i < 8; ++i)
        if (unbracable((*arms)[i]))
          free_bits |= 1u << i;
      for (unsigned m = 0; m <= free_bits; ++m)
        if ((m & ~free_bits) == 0)
          out.push_back({p, {}, static_cast<int>(m)});
      return true;
    });
    return out;
  };
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto n = ctx.node(s.path);
    if (!n || n->kind != Kind::Switch)
      return std::nullopt;
    auto arms = switch_arms(ctx, n);
    if (!arms || s.variant < 0 || s.variant >= (1 << std::min<std::size_t>(arms->size(), 8)))
      return std::nullopt;
    auto body = [&](std::size_t i) -> NodePtr {
      const auto &arm = (*arms)[i];
      if (s.variant & (1 << i)) {
        if (!unbracable(arm))
          return nullptr;
        return arm.stmts[0];
      }
      return make_block(arm.stmts);
    };
    NodePtr chain;
    for (std::size_t i = arms->size(); i-- > 0;) {
      auto b = body(i);
      if (!b)
        return std::nullopt;
      const auto &arm = (*arms)[i];
      if (!arm.label) {
        chain = b;
        continue;
      }
      auto cond = assemble(Kind::Binary, "==", {clone(operand(n, 0)), clone(arm.label)});
      chain = if_node(cond, b, chain);
    }
    return replace_at(ctx.ast, s.path, chain);
  };
  return r;
}

// ---- pre-assignment -----------------------------------------------------------------------

bool pre_assignment_ok(const RuleContext &ctx, const NodePtr &cond, const NodePtr &then_assign,
                       const NodePtr &default_value) {
  int sym = ctx.symbol_of(then_assign->kid(0));
  return pure(default_value) && side_effect_free(cond) && count_uses(ctx, cond, sym) == 0 &&
         count_uses(ctx, then_assign->kid(1), sym) == 0;
}

RuleImpl remove_branch() {
  return stmt_rule(
      describe("remove-branch-by-pre-assignment", "Remove Branch by Pre-Assignment",
               Tier::Extended, "if ($e1) $v1 = $e2; else $v1 = $e3;",
               "$v1 = $e3; if ($e1) $v1 = $e2;",
               {"$e3 is pure", "$e1 has no side effects and does not read $v1",
                "$e2 does not read $v1", "both branches are braced alike"},
               "replace-pre-assignment-with-branch"),
      Kind::If,
      [](const RuleContext &ctx, const NodePtr &n, const SiteSpec &s) -> std::optional<MethodAst> {
        if (n->size() != 3 || !in_stmt_list(ctx.ast, s.path) ||
            (n->kid(1)->kind == Kind::Block) != (n->kid(2)->kind == Kind::Block))
          return std::nullopt;
        auto a = single_assign(n->kid(1));
        auto b = single_assign(n->kid(2));
        if (!a || !b || ctx.symbol_of(a->kid(0)) != ctx.symbol_of(b->kid(0)) ||
            !pre_assignment_ok(ctx, n->kid(0), a, b->kid(1)))
          return std::nullopt;
        return splice(ctx.ast, s.path, 1,
                      {single_stmt(n->kid(2)), if_node(n->kid(0), n->kid(1))});
      });
}

RuleImpl pre_assignment_to_branch() {
  return stmt_rule(
      describe("replace-pre-assignment-with-branch", "Replace Pre-Assignment with Branch",
               Tier::Extended, "$v1 = $e3; if ($e1) $v1 = $e2;",
               "if ($e1) $v1 = $e2; else $v1 = $e3;",
               {"$e3 is pure", "$e1 has no side effects and does not read $v1",
                "$e2 does not read $v1"},
               "remove-branch-by-pre-assignment"),
      Kind::ExprStmt,
      [](const RuleContext &ctx, const NodePtr &n, const SiteSpec &s) -> std::optional<MethodAst> {
        auto pre = single_assign(n);
        if (!pre || !in_stmt_list(ctx.ast, s.path))
          return std::nullopt;
        auto next = ctx.node(s.path.parent().child(s.path.back() + 1));
        if (!next || next->kind != Kind::If || next->size() != 2)
          return std::nullopt;
        auto a = single_assign(next->kid(1));
        if (!a || ctx.symbol_of(a->kid(0)) != ctx.symbol_of(pre->kid(0)) ||
            !pre_assignment_ok(ctx, next->kid(0), a, pre->kid(1)))
          return std::nullopt;
        bool braced = next->kid(1)->kind == Kind::Block;
        return splice(ctx.ast, s.path, 2,
                      {if_node(next->kid(0), next->kid(1), braced_if(braced, n))});
      });
}

// ---- loops ----------------------------------------------------------------------------------

struct IndexLoop {
  int index = -1;
  NodePtr array;  // Name
  Type element;
};

/// `for (int i = 0; i < a.length; i++)` with a an array variable.
std::optional<IndexLoop> index_loop(const RuleContext &ctx, const NodePtr &f) {
  const NodePtr &init = f->kid(0);
  if (init->kind != Kind::VarDecl || init->size() != 1 || init->type != Type::int_())
    return std::nullopt;
  const NodePtr &d = init->kid(0);
  if (d->flag || d->size() != 1 || d->kid(0)->kind != Kind::Literal || d->kid(0)->text != "0")
    return std::nullopt;
  int i = ctx.symbol_of(d);
  const NodePtr &c = f->kid(1);
  if (c->kind != Kind::Binary || c->text != "<" || c->kid(0)->kind != Kind::Name ||
      ctx.symbol_of(c->kid(0)) != i || c->kid(1)->kind != Kind::Length ||
      c->kid(1)->kid(0)->kind != Kind::Name)
    return std::nullopt;
  const NodePtr &u = f->kid(2);
  if (u->size() != 1 || (u->kid(0)->kind != Kind::Postfix && u->kid(0)->kind != Kind::Prefix) ||
      u->kid(0)->text != "++" || u->kid(0)->kid(0)->kind != Kind::Name ||
      ctx.symbol_of(u->kid(0)->kid(0)) != i)
    return std::nullopt;
  const NodePtr &a = c->kid(1)->kid(0);
  return IndexLoop{i, a, ctx.type_of(a).element()};
}

bool is_element_read(const RuleContext &ctx, const NodePtr &n, const IndexLoop &loop) {
  return n->kind == Kind::Index && n->kid(0)->kind == Kind::Name &&
         ctx.symbol_of(n->kid(0)) == ctx.symbol_of(loop.array) &&
         n->kid(1)->kind == Kind::Name && ctx.symbol_of(n->kid(1)) == loop.index;
}

int count_element_reads(const RuleContext &ctx, const NodePtr &body, const IndexLoop &loop) {
  int count = 0;
  NodePath p;
  walk(body, p, [&](const NodePtr &n, const NodePath &) {
    count += is_element_read(ctx, n, loop);
    return true;
  });
  return count;
}

NodePtr make_foreach(const std::string &var, Type element, bool is_final, NodePtr array,
                     NodePtr body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Foreach;
  n->text = var;
  n->type = element;
  n->flag = is_final;
  n->kids = {std::move(array), std::move(body)};
  return n;
}

const std::vector<std::string> kIndexPool = {"i", "j", "k", "idx"};

std::vector<std::string> names_or_pool(const RuleContext &ctx,
                                       const std::vector<std::string> &pool) {
  if (ctx.target)
    return ctx.fresh_names();
  for (const auto &n : pool)
    if (!ctx.has_name(n))
      return {n};
  return {};
}

RuleImpl for_to_foreach() {
  RuleImpl r;
  r.meta = describe("replace-for-with-foreach", "Replace For with Foreach", Tier::Extended,
                    "for (int $v1 = 0; $v1 < $v2.length; $v1++) S[$v2[$v1]]",
                    "for ($T $v3 : $v2) S[$v3]",
                    {"the body only reads $v1 through $v2[$v1]",
                     "the body writes neither $v1, $v2 nor any array element"},
                    "replace-foreach-with-for", {"$v3"});
  // variant 0 replaces element reads by a fresh variable; 1 absorbs a
  // leading `T e = a[i];`.
  r.sites = [](const RuleContext &ctx) {
    std::vector<SiteSpec> out;
    walk(ctx.ast, [&](const NodePtr &n, const NodePath &p) {
      if (n->kind == Kind::For) {
        for (const auto &name : ctx.fresh_names())
          out.push_back({p, {{"name", name}}, 0});
        out.push_back({p, {}, 1});
      }
      return true;
    });
    return out;
  };
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto n = ctx.node(s.path);
    if (!n || n->kind != Kind::For)
      return std::nullopt;
    auto loop = index_loop(ctx, n);
    if (!loop)
      return std::nullopt;
    const NodePtr &body = n->kid(3);
    int a = ctx.symbol_of(loop->array);
    if (writes_symbol(ctx, body, loop->index) || writes_symbol(ctx, body, a) ||
        writes_array_element(body))
      return std::nullopt;
    if (s.variant == 0) {
      auto name = binding_of(s.bindings, "name");
      if (name.empty() || ctx.has_name(name) || is_keyword(name) ||
          count_uses(ctx, body, loop->index) != count_element_reads(ctx, body, *loop))
        return std::nullopt;
      auto new_body = rewrite_tree(body, [&](const NodePtr &k) -> NodePtr {
        return is_element_read(ctx, k, *loop) ? make_name(name) : nullptr;
      });
      return replace_at(ctx.ast, s.path,
                        make_foreach(name, loop->element, false, loop->array, new_body));
    }
    if (body->kind != Kind::Block || body->size() == 0)
      return std::nullopt;
    const NodePtr &decl = body->kid(0);
    if (decl->kind != Kind::VarDecl || decl->size() != 1 || decl->type != loop->element)
      return std::nullopt;
    const NodePtr &d = decl->kid(0);
    if (d->flag || d->size() != 1 || !is_element_read(ctx, d->kid(0), *loop) ||
        count_uses(ctx, body, loop->index) != 1)
      return std::nullopt;
    std::vector<NodePtr> rest(body->kids.begin() + 1, body->kids.end());
    return replace_at(ctx.ast, s.path,
                      make_foreach(d->text, loop->element, decl->flag, loop->array,
                                   make_block(std::move(rest))));
  };
  return r;
}

RuleImpl foreach_to_for() {
  RuleImpl r;
  r.meta = describe("replace-foreach-with-for", "Replace Foreach with For", Tier::Extended,
                    "for ($T $v3 : $v2) S[$v3]",
                    "for (int $v1 = 0; $v1 < $v2.length; $v1++) S[$v2[$v1]]",
                    {"$v2 is a variable", "the body writes neither $v2 nor any array element"},
                    "replace-for-with-foreach", {"$v1"});
  // variant 0 replaces uses of the element variable by a[i]; 1 declares it
  // as the first statement of the body. Variants 2 and 3 are the same with a
  // prefix `++i` update.
  r.sites = [](const RuleContext &ctx) {
    std::vector<SiteSpec> out;
    walk(ctx.ast, [&](const NodePtr &n, const NodePath &p) {
      if (n->kind == Kind::Foreach)
        for (const auto &name : names_or_pool(ctx, kIndexPool))
          for (int v = 0; v < 4; ++v)
            out.push_back({p, {{"index", name}}, v});
      return true;
    });
    return out;
  };
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto n = ctx.node(s.path);
    auto idx = binding_of(s.bindings, "index");
    if (!n || n->kind != Kind::Foreach || n->flag || n->kid(0)->kind != Kind::Name || idx.empty() ||
        ctx.has_name(idx) || is_keyword(idx))
      return std::nullopt;
    const NodePtr &a = n->kid(0);
    const NodePtr &body = n->kid(1);
    int e = ctx.symbol_of(n);
    if (writes_symbol(ctx, body, ctx.symbol_of(a)) || writes_array_element(body))
      return std::nullopt;
    auto element = [&] {
      return make(Kind::Index, {clone(a), make_name(idx)});
    };
    NodePtr new_body;
    if (s.variant % 2 == 0) {
      if (writes_symbol(ctx, body, e))
        return std::nullopt;
      new_body = rewrite_tree(body, [&](const NodePtr &k) -> NodePtr {
        return k->kind == Kind::Name && ctx.symbol_of(k) == e ? element() : nullptr;
      });
    } else {
      if (body->kind != Kind::Block)
        return std::nullopt;
      std::vector<NodePtr> stmts{
          make_var_decl(n->type, {make_declarator(n->text, element())}, n->flag)};
      stmts.insert(stmts.end(), body->kids.begin(), body->kids.end());
      new_body = make_block(std::move(stmts));
    }
    auto init = make_var_decl(Type::int_(), {make_declarator(idx, make_int(0))});
    auto cond = make_binary("<", make_name(idx), make(Kind::Length, {clone(a)}));
    auto step = make(s.variant < 2 ? Kind::Postfix : Kind::Prefix, {make_name(idx)}, "++");
    auto update = make(Kind::ExprList, {step});
    return replace_at(ctx.ast, s.path, make(Kind::For, {init, cond, update, new_body}));
  };
  return r;
}

// ---- blocks ------------------------------------------------------------------------------------

bool at_body_slot(const RuleContext &ctx, const NodePath &p) {
  if (p.empty())
    return false;
  auto parent = ctx.node(p.parent());
  return is_body_slot(*parent, static_cast<std::size_t>(p.back()));
}

RuleImpl wrap_in_block() {
  RuleImpl r;
  r.meta = describe("wrap-statement-in-block", "Wrap Statement in Block", Tier::Extended,
                    "$s1", "{ $s1 }", {"$s1 is the body of a control statement"},
                    "unwrap-statement-from-block");
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto n = ctx.node(s.path);
    if (!n || n->kind == Kind::Block || !at_body_slot(ctx, s.path))
      return std::nullopt;
    return replace_at(ctx.ast, s.path, make_block({n}));
  };
  return r;
}

RuleImpl unwrap_from_block() {
  return stmt_rule(
      describe("unwrap-statement-from-block", "Unwrap Statement from Block", Tier::Extended,
               "{ $s1 }", "$s1",
               {"the block is the body of a control statement", "$s1 is not a declaration"},
               "wrap-statement-in-block"),
      Kind::Block,
      [](const RuleContext &ctx, const NodePtr &n, const SiteSpec &s) -> std::optional<MethodAst> {
        if (n->size() != 1 || n->kid(0)->kind == Kind::VarDecl || !at_body_slot(ctx, s.path))
          return std::nullopt;
        return replace_at(ctx.ast, s.path, n->kid(0));
      });
}

// ---- dead code ---------------------------------------------------------------------------------

/// A bare boolean literal; a parenthesized one is left to the paren rules.
bool plain_bool(const NodePtr &n, bool value) {
  return n->kind == Kind::Literal && is_bool_literal(n, value);
}

RuleImpl remove_dead_code() {
  RuleImpl r;
  r.meta = describe("remove-dead-code", "Remove Dead Code", Tier::Extended,
                    "return $e1; $s1 | if (false) $s1 | if (true) $s1 else $s2", "return $e1; | | $s1",
                    {"the removed code is unreachable"}, "introduce-dead-code");
  // variant 0: statements following an abrupt statement; 1: constant ifs.
  r.variants = 2;
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto n = ctx.node(s.path);
    if (!n)
      return std::nullopt;
    if (s.variant == 0) {
      if (!in_stmt_list(ctx.ast, s.path))
        return std::nullopt;
      auto parent = ctx.node(s.path.parent());
      auto idx = static_cast<std::size_t>(s.path.back());
      if (idx <= first_stmt_index(*parent) || can_complete_normally(parent->kid(idx - 1)))
        return std::nullopt;
      return splice(ctx.ast, s.path, parent->size() - idx, {});
    }
    if (n->kind != Kind::If)
      return std::nullopt;
    if (plain_bool(n->kid(0), false)) {
      if (n->size() == 3)
        return replace_at(ctx.ast, s.path, n->kid(2));
      if (!in_stmt_list(ctx.ast, s.path))
        return std::nullopt;
      return splice(ctx.ast, s.path, 1, {});
    }
    if (plain_bool(n->kid(0), true))
      return replace_at(ctx.ast, s.path, n->kid(1));
    return std::nullopt;
  };
  return r;
}

bool is_statement(const NodePtr &n) {
  return !is_expression(n->kind) && n->kind != Kind::Declarator && n->kind != Kind::Case &&
         n->kind != Kind::ExprList && n->kind != Kind::Empty;
}

RuleImpl introduce_dead_code() {
  RuleImpl r;
  r.meta = describe("introduce-dead-code", "Introduce Dead Code", Tier::Extended,
                    "$s1", "$s1 return $e1; | $s1 if (false) { $s1 } | if (true) $s1",
                    {"the introduced code is unreachable"}, "remove-dead-code", {"$s2"});
  // Variants without a target: 0 repeats a trailing return/break, 1 appends
  // `if (false) { copy }`, 2 wraps in `if (true)`. Target-guided: 3 inserts a
  // dead `if (false)` fragment, 4 appends a dead tail after an abrupt
  // statement, 5 wraps as `if (false) code else S`, 6 as `if (true) S else code`.
  r.sites = [](const RuleContext &ctx) {
    std::vector<SiteSpec> out;
    if (!ctx.target) {
      walk(ctx.ast, [&](const NodePtr &n, const NodePath &p) {
        if (is_statement(n) && !p.empty())
          for (int v = 0; v < 3; ++v)
            out.push_back({p, {}, v});
        return true;
      });
      return out;
    }
    // Statements of the ast that equal `anchor`, as paths.
    auto find_equal = [&](const NodePtr &anchor) {
      std::vector<NodePath> found;
      walk(ctx.ast, [&](const NodePtr &n, const NodePath &p) {
        if (!p.empty() && is_statement(n) && structurally_equal(n, anchor))
          found.push_back(p);
        return true;
      });
      return found;
    };
    walk(*ctx.target, [&](const NodePtr &n, const NodePath &) {
      if (n->kind == Kind::If && plain_bool(n->kid(0), true) && n->size() == 2)
        for (auto &p : find_equal(n->kid(1)))
          out.push_back({p, {}, 2});
      if (n->kind == Kind::If && n->size() == 3 && plain_bool(n->kid(0), false))
        for (auto &p : find_equal(n->kid(2)))
          out.push_back({p, {{"code", text_of(n->kid(1))}}, 5});
      if (n->kind == Kind::If && n->size() == 3 && plain_bool(n->kid(0), true))
        for (auto &p : find_equal(n->kid(1)))
          out.push_back({p, {{"code", text_of(n->kid(2))}}, 6});
      if (!is_stmt_list(*n))
        return true;
      std::size_t first = first_stmt_index(*n);
      for (std::size_t j = first; j < n->size(); ++j) {
        const NodePtr &t = n->kid(j);
        if (t->kind == Kind::If && t->size() == 2 && plain_bool(t->kid(0), false)) {
          NodePtr prev = j > first ? n->kid(j - 1) : nullptr;
          walk(ctx.ast, [&](const NodePtr &a, const NodePath &p) {
            if (!is_stmt_list(*a))
              return true;
            std::size_t af = first_stmt_index(*a);
            for (std::size_t q = af; q <= a->size(); ++q)
              if (prev ? q > af && structurally_equal(a->kid(q - 1), prev) : q == af)
                out.push_back({p.child(static_cast<int>(q)), {{"code", text_of(t)}}, 3});
            return true;
          });
        }
        bool dead_start = j > first && !can_complete_normally(n->kid(j - 1)) &&
                          (j - 1 == first || can_complete_normally(n->kid(j - 2)));
        if (dead_start) {
          std::vector<NodePtr> tail(n->kids.begin() + static_cast<std::ptrdiff_t>(j),
                                    n->kids.end());
          walk(ctx.ast, [&](const NodePtr &a, const NodePath &p) {
            if (is_stmt_list(*a) && a->size() > first_stmt_index(*a) &&
                structurally_equal(a->kids.back(), n->kid(j - 1)))
              out.push_back({p.child(static_cast<int>(a->size())), {{"code", text_of(tail)}}, 4});
            return true;
          });
        }
      }
      return true;
    });
    return out;
  };
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    if (s.path.empty())
      return std::nullopt;
    auto parent = ctx.node(s.path.parent());
    if (!parent)
      return std::nullopt;
    auto idx = static_cast<std::size_t>(s.path.back());
    bool listed = is_stmt_list(*parent) && idx >= first_stmt_index(*parent);
    if (s.variant == 3 || s.variant == 4) {
      if (!listed || idx > parent->size())
        return std::nullopt;
      auto code = parse_stmts(binding_of(s.bindings, "code"));
      if (code.empty())
        return std::nullopt;
      if (s.variant == 3) {
        const NodePtr &f = code[0];
        if (code.size() != 1 || f->kind != Kind::If || f->size() != 2 ||
            !is_bool_literal(f->kid(0), false))
          return std::nullopt;
      } else if (idx == first_stmt_index(*parent) ||
                 can_complete_normally(parent->kid(idx - 1))) {
        return std::nullopt;
      }
      return splice(ctx.ast, s.path, 0, std::move(code));
    }
    auto n = ctx.node(s.path);
    if (!n || !is_statement(n))
      return std::nullopt;
    switch (s.variant) {
    case 0:
      if (!listed || idx + 1 != parent->size() ||
          (n->kind != Kind::Return && n->kind != Kind::Break))
        return std::nullopt;
      return splice(ctx.ast, s.path, 1, {n, clone(n)});
    case 1:
      if (!listed)
        return std::nullopt;
      return splice(ctx.ast, s.path, 1,
                    {n, if_node(bool_literal(false), make_block({clone(n)}))});
    case 2:
      if (n->kind == Kind::VarDecl || (!listed && !at_body_slot(ctx, s.path)))
        return std::nullopt;
      return replace_at(ctx.ast, s.path, if_node(bool_literal(true), n));
    case 5:
    case 6: {
      if (n->kind == Kind::VarDecl || (!listed && !at_body_slot(ctx, s.path)))
        return std::nullopt;
      auto code = parse_stmts(binding_of(s.bindings, "code"));
      if (code.size() != 1 || code[0]->kind == Kind::VarDecl)
        return std::nullopt;
      return replace_at(ctx.ast, s.path,
                        s.variant == 5 ? if_node(bool_literal(false), code[0], n)
                                       : if_node(bool_literal(true), n, code[0]));
    }
    default:
      return std::nullopt;
    }
  };
  return r;
}

} // namespace

void add_control_rules(std::vector<RuleImpl> &out) {
  out.push_back(conditional_to_expression());
  out.push_back(conditional_operator_to_if());
  out.push_back(reverse_conditional());
  out.push_back(swap_branches());
  out.push_back(split_branch());
  out.push_back(merge_branch());
  out.push_back(decompose_branch());
  out.push_back(nested_to_guard());
  out.push_back(guard_to_nested());
  out.push_back(if_to_switch());
  out.push_back(switch_to_if());
  out.push_back(remove_branch());
  out.push_back(pre_assignment_to_branch());
  out.push_back(for_to_foreach());
  out.push_back(foreach_to_for());
  out.push_back(wrap_in_block());
  out.push_back(unwrap_from_block());
  out.push_back(remove_dead_code());
  out.push_back(introduce_dead_code());
}

} // namespace refdecomp::catalog
