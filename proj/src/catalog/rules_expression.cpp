// Expression-level rewrites: boolean laws, arithmetic restructuring, literal
// forms, parentheses, casts and increment/assignment forms.
#include "rule_support.hpp"

#include <cstdio>
#include <limits>

namespace refdecomp::catalog {

namespace {

using ExprFn = std::function<NodePtr(const RuleContext &, const NodePtr &, const NodePath &,
                                     int variant)>;

/// A rule that replaces one expression node.
RuleImpl expr_rule(RewriteRule meta, ExprFn fn, int variants = 1) {
  RuleImpl r;
  r.meta = std::move(meta);
  r.variants = variants;
  r.rewrite = [fn](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    if (s.path.empty())
      return std::nullopt;
    auto n = ctx.node(s.path);
    if (!n || !is_expression(n->kind))
      return std::nullopt;
    auto repl = fn(ctx, n, s.path, s.variant);
    if (!repl)
      return std::nullopt;
    return replace_expr(ctx.ast, s.path, repl);
  };
  return r;
}

bool is_op(const NodePtr &n, Kind k, std::initializer_list<std::string_view> ops) {
  if (n->kind != k)
    return false;
  for (auto op : ops)
    if (n->text == op)
      return true;
  return false;
}

bool is_not(const NodePtr &n) { return n->kind == Kind::Unary && n->text == "!"; }

const char *flip_equality(const std::string &op) { return op == "==" ? "!=" : "=="; }

const char *mirror(const std::string &op) {
  if (op == "<") return ">";
  if (op == ">") return "<";
  if (op == "<=") return ">=";
  return "<=";
}

Type promote(Type a, Type b) {
  if (a.is(BaseType::Double) || b.is(BaseType::Double))
    return Type::double_();
  if (a.is(BaseType::Long) || b.is(BaseType::Long))
    return Type::long_();
  return Type::int_();
}

/// Kind of an integral literal, looking through parens and unary minus.
std::optional<LitKind> integral_kind(const NodePtr &n0) {
  const NodePtr &n = unparen(n0);
  const Node *lit = n.get();
  if (n->kind == Kind::Unary && n->text == "-")
    lit = n->kid(0).get();
  if (lit->kind == Kind::Literal && (lit->lit == LitKind::Int || lit->lit == LitKind::Long))
    return lit->lit;
  return std::nullopt;
}

NodePtr make_integral(std::int64_t v, bool is_long) {
  if (!is_long)
    return make_int(v);
  auto magnitude = v < 0 ? 0ull - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
  auto lit = make_literal(LitKind::Long, std::to_string(magnitude) + "L");
  return v < 0 ? make_unary("-", lit) : lit;
}

bool fits_int(std::int64_t v) {
  return v > std::numeric_limits<std::int32_t>::min() &&
         v <= std::numeric_limits<std::int32_t>::max();
}

bool fits(std::int64_t v, bool is_long) {
  return is_long ? v != std::numeric_limits<std::int64_t>::min() : fits_int(v);
}

NodePtr bool_literal(bool b) { return make_literal(LitKind::Bool, b ? "true" : "false"); }

// ---- boolean laws ----------------------------------------------------------------

RuleImpl de_morgan() {
  return expr_rule(
      describe("apply-de-morgans-law", "Apply De Morgan's Law", Tier::Extended,
               "!($e1 && $e2)", "!$e1 || !$e2", {}, "apply-de-morgans-law"),
      [](const RuleContext &, const NodePtr &n, const NodePath &, int) -> NodePtr {
        if (is_not(n) && n->kid(0)->kind == Kind::Paren) {
          const NodePtr &b = n->kid(0)->kid(0);
          if (!is_op(b, Kind::Binary, {"&&", "||"}))
            return nullptr;
          return assemble(Kind::Binary, b->text == "&&" ? "||" : "&&",
                          {assemble(Kind::Unary, "!", {operand(b, 0)}),
                           assemble(Kind::Unary, "!", {operand(b, 1)})});
        }
        if (is_op(n, Kind::Binary, {"&&", "||"}) && is_not(n->kid(0)) && is_not(n->kid(1))) {
          auto inner = assemble(Kind::Binary, n->text == "&&" ? "||" : "&&",
                                {operand(operand(n, 0), 0), operand(operand(n, 1), 0)});
          return assemble(Kind::Unary, "!", {inner});
        }
        return nullptr;
      });
}

RuleImpl negation_as_inequality() {
  return expr_rule(
      describe("apply-negation-as-inequality", "Apply Negation as Inequality",
               Tier::Extended, "!($e1 == $e2)", "$e1 != $e2", {},
               "factor-out-inequality-as-negation"),
      [](const RuleContext &, const NodePtr &n, const NodePath &, int) -> NodePtr {
        if (!is_not(n) || n->kid(0)->kind != Kind::Paren)
          return nullptr;
        const NodePtr &b = n->kid(0)->kid(0);
        if (!is_op(b, Kind::Binary, {"==", "!="}))
          return nullptr;
        return assemble(Kind::Binary, flip_equality(b->text), {operand(b, 0), operand(b, 1)});
      });
}

RuleImpl inequality_as_negation() {
  return expr_rule(
      describe("factor-out-inequality-as-negation", "Factor Out Inequality as Negation",
               Tier::Extended, "$e1 != $e2", "!($e1 == $e2)", {},
               "apply-negation-as-inequality"),
      [](const RuleContext &, const NodePtr &n, const NodePath &, int) -> NodePtr {
        if (!is_op(n, Kind::Binary, {"==", "!="}))
          return nullptr;
        return assemble(Kind::Unary, "!",
                        {assemble(Kind::Binary, flip_equality(n->text), {operand(n, 0), operand(n, 1)})});
      });
}

RuleImpl double_negation() {
  return expr_rule(
      describe("remove-double-negation", "Remove Double Negation", Tier::Extended, "!!$e1",
               "$e1", {}, ""),
      [](const RuleContext &, const NodePtr &n, const NodePath &, int) -> NodePtr {
        if (!is_not(n) || !is_not(unparen(n->kid(0))))
          return nullptr;
        return unparen(unparen(n->kid(0))->kid(0));
      });
}

// ---- constants and arithmetic -----------------------------------------------------

std::optional<std::int64_t> fold_int(const std::string &op, std::int64_t a, std::int64_t b,
                                     bool is_long) {
  using u64 = std::uint64_t;
  auto wrap = [is_long](u64 v) -> std::int64_t {
    return is_long ? static_cast<std::int64_t>(v)
                   : static_cast<std::int32_t>(static_cast<std::uint32_t>(v));
  };
  auto ua = static_cast<u64>(a), ub = static_cast<u64>(b);
  if (op == "+") return wrap(ua + ub);
  if (op == "-") return wrap(ua - ub);
  if (op == "*") return wrap(ua * ub);
  if (op == "/" || op == "%") {
    if (b == 0)
      return std::nullopt;
    if (b == -1)
      return op == "/" ? wrap(0 - ua) : 0;
    return op == "/" ? a / b : a % b;
  }
  return std::nullopt;
}

std::optional<bool> compare(const std::string &op, std::int64_t a, std::int64_t b) {
  if (op == "<") return a < b;
  if (op == "<=") return a <= b;
  if (op == ">") return a > b;
  if (op == ">=") return a >= b;
  if (op == "==") return a == b;
  if (op == "!=") return a != b;
  return std::nullopt;
}

bool is_literal(const NodePtr &n, LitKind k) {
  const NodePtr &u = unparen(n);
  return u->kind == Kind::Literal && u->lit == k;
}

RuleImpl constant_folding() {
  return expr_rule(
      describe("apply-constant-folding", "Apply Constant Folding", Tier::Extended,
               "$c1 op $c2", "$c3",
               {"operands are literals", "no division by zero",
                "the result is representable as a literal"},
               ""),
      [](const RuleContext &, const NodePtr &n, const NodePath &, int) -> NodePtr {
        if (is_not(n) && is_literal(n->kid(0), LitKind::Bool))
          return bool_literal(unparen(n->kid(0))->text == "false");
        if (n->kind != Kind::Binary)
          return nullptr;
        const NodePtr &a = n->kid(0), &b = n->kid(1);
        auto ka = integral_kind(a), kb = integral_kind(b);
        if (ka && kb) {
          bool is_long = *ka == LitKind::Long || *kb == LitKind::Long;
          auto va = *integral_constant(a), vb = *integral_constant(b);
          if (auto c = compare(n->text, va, vb))
            return bool_literal(*c);
          auto v = fold_int(n->text, va, vb, is_long);
          if (!v || !fits(*v, is_long))
            return nullptr;
          return make_integral(*v, is_long);
        }
        if (is_literal(a, LitKind::Bool) && is_literal(b, LitKind::Bool)) {
          bool x = unparen(a)->text == "true", y = unparen(b)->text == "true";
          if (n->text == "&&") return bool_literal(x && y);
          if (n->text == "||") return bool_literal(x || y);
          if (n->text == "==") return bool_literal(x == y);
          if (n->text == "!=") return bool_literal(x != y);
          return nullptr;
        }
        if (is_literal(a, LitKind::String) && is_literal(b, LitKind::String)) {
          auto x = string_literal_value(unparen(a)->text);
          auto y = string_literal_value(unparen(b)->text);
          if (n->text == "+") return make_literal(LitKind::String, quote_string(x + y));
          if (n->text == "==") return bool_literal(x == y);
          if (n->text == "!=") return bool_literal(x != y);
        }
        return nullptr;
      });
}

bool same_integral(const RuleContext &ctx, std::initializer_list<NodePtr> nodes, Type t) {
  if (!t.is_integral())
    return false;
  for (const auto &n : nodes)
    if (ctx.type_of(n) != t)
      return false;
  return true;
}

RuleImpl factor_out_coefficient() {
  return expr_rule(
      describe("factor-out-coefficient", "Factor Out Coefficient", Tier::Extended,
               "$c * $e1 + $c * $e2", "$c * ($e1 + $e2)",
               {"all operands share one integral type", "operands are pure"}, ""),
      [](const RuleContext &ctx, const NodePtr &n, const NodePath &, int) -> NodePtr {
        if (!is_op(n, Kind::Binary, {"+", "-"}))
          return nullptr;
        const NodePtr &l = n->kid(0), &r = n->kid(1);
        if (!is_op(l, Kind::Binary, {"*"}) || !is_op(r, Kind::Binary, {"*"}) || !pure(n))
          return nullptr;
        Type t = ctx.type_of(n);
        if (!same_integral(ctx, {l->kid(0), l->kid(1), r->kid(0), r->kid(1)}, t))
          return nullptr;
        if (structurally_equal(l->kid(0), r->kid(0)))
          return assemble(Kind::Binary, "*",
                          {operand(l, 0), assemble(Kind::Binary, n->text, {operand(l, 1), operand(r, 1)})});
        if (structurally_equal(l->kid(1), r->kid(1)))
          return assemble(Kind::Binary, "*",
                          {assemble(Kind::Binary, n->text, {operand(l, 0), operand(r, 0)}), operand(l, 1)});
        return nullptr;
      });
}

// ---- parentheses ---------------------------------------------------------------------

bool paren_slot_ok(const RuleContext &ctx, const NodePath &path) {
  if (path.empty())
    return false;
  auto parent = ctx.node(path.parent());
  switch (parent->kind) {
  case Kind::ExprStmt:
  case Kind::ExprList:
  case Kind::Case:
  case Kind::Paren:
    return false;
  default:
    return !store_slot(ctx.ast, path);
  }
}

RuleImpl introduce_parentheses() {
  RuleImpl r;
  r.meta = describe("introduce-parentheses", "Introduce Parentheses", Tier::Extended, "$e1",
                    "($e1)", {"the parentheses are redundant"}, "remove-parentheses");
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto n = ctx.node(s.path);
    if (!n || !is_expression(n->kind) || !paren_slot_ok(ctx, s.path))
      return std::nullopt;
    return replace_at(ctx.ast, s.path, make_paren(n));
  };
  return r;
}

RuleImpl remove_parentheses() {
  RuleImpl r;
  r.meta = describe("remove-parentheses", "Remove Parentheses", Tier::Extended, "($e1)",
                    "$e1", {"the parentheses are redundant"}, "introduce-parentheses");
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto n = ctx.node(s.path);
    if (!n || n->kind != Kind::Paren || s.path.empty())
      return std::nullopt;
    auto parent = ctx.node(s.path.parent());
    if (!paren_slot_ok(ctx, s.path) ||
        needs_paren(*parent, static_cast<std::size_t>(s.path.back()), *n->kid(0)))
      return std::nullopt;
    return replace_at(ctx.ast, s.path, n->kid(0));
  };
  return r;
}

// ---- operand order -----------------------------------------------------------------

RuleImpl swap_commutative() {
  return expr_rule(
      describe("swap-commutative-operands", "Swap Commutative Operands", Tier::Extended,
               "$e1 op $e2", "$e2 op $e1",
               {"op is numeric +, *, ==, !=, && or ||", "operands are pure"},
               "swap-commutative-operands"),
      [](const RuleContext &ctx, const NodePtr &n, const NodePath &, int) -> NodePtr {
        if (!is_op(n, Kind::Binary, {"+", "*", "==", "!=", "&&", "||"}) || !pure(n))
          return nullptr;
        if ((n->text == "+" || n->text == "*") && !ctx.type_of(n).is_numeric())
          return nullptr;
        return assemble_like(n, {operand(n, 1), operand(n, 0)});
      });
}

RuleImpl reverse_comparison() {
  return expr_rule(
      describe("reverse-comparison-operator", "Reverse Comparison Operator", Tier::Extended,
               "$e1 < $e2", "$e2 > $e1", {"operands are pure"},
               "reverse-comparison-operator"),
      [](const RuleContext &, const NodePtr &n, const NodePath &, int) -> NodePtr {
        if (!is_op(n, Kind::Binary, {"<", ">", "<=", ">="}) || !pure(n))
          return nullptr;
        return assemble(Kind::Binary, mirror(n->text), {operand(n, 1), operand(n, 0)});
      });
}

RuleImpl inclusive_to_exclusive() {
  return expr_rule(
      describe("replace-inclusive-comparison-with-exclusive",
               "Replace Inclusive Comparison with Exclusive", Tier::Extended, "$e1 <= $c",
               "$e1 < $c+1",
               {"$c is an integer literal", "$e1 has an integral type",
                "$c+1 does not overflow"},
               ""),
      [](const RuleContext &ctx, const NodePtr &n, const NodePath &, int variant) -> NodePtr {
        if (!is_op(n, Kind::Binary, {"<=", ">="}))
          return nullptr;
        // variant 0: constant on the right, 1: on the left
        const NodePtr &c = n->kid(variant == 0 ? 1 : 0);
        const NodePtr &e = n->kid(variant == 0 ? 0 : 1);
        auto kind = integral_kind(c);
        if (!kind || !ctx.type_of(e).is_integral())
          return nullptr;
        bool is_long = *kind == LitKind::Long;
        std::int64_t v = *integral_constant(c);
        // e <= c  ->  e < c+1;  c <= e  ->  c-1 < e
        bool up = (n->text == "<=") == (variant == 0);
        if (is_long && v == (up ? std::numeric_limits<std::int64_t>::max()
                                : std::numeric_limits<std::int64_t>::min() + 1))
          return nullptr;
        std::int64_t nv = up ? v + 1 : v - 1;
        if (!fits(nv, is_long))
          return nullptr;
        std::string op = n->text == "<=" ? "<" : ">";
        auto lit = make_integral(nv, is_long);
        return variant == 0 ? assemble(Kind::Binary, op, {e, lit})
                            : assemble(Kind::Binary, op, {lit, e});
      },
      2);
}

RuleImpl constant_to_comparison() {
  return expr_rule(
      describe("introduce-constant-to-comparison",
               "Introduce Constant to Comparison Expression", Tier::Extended, "$e1 < $e2",
               "$e1 + $c < $e2 + $c",
               {"operands are int", "$c is a long literal so the sums cannot overflow"}, ""),
      [](const RuleContext &ctx, const NodePtr &n, const NodePath &, int) -> NodePtr {
        if (!is_op(n, Kind::Binary, {"<", ">", "<=", ">="}) ||
            ctx.type_of(n->kid(0)) != Type::int_() || ctx.type_of(n->kid(1)) != Type::int_())
          return nullptr;
        auto one = [] { return make_literal(LitKind::Long, "1L"); };
        return assemble(Kind::Binary, n->text,
                        {assemble(Kind::Binary, "+", {operand(n, 0), one()}),
                         assemble(Kind::Binary, "+", {operand(n, 1), one()})});
      });
}

RuleImpl transpose_equation() {
  return expr_rule(
      describe("transpose-equation", "Transpose Equation", Tier::Extended,
               "$e1 + $e2 == $e3", "$e1 == $e3 - $e2",
               {"all operands share one integral type", "operands are pure"},
               "transpose-equation"),
      [](const RuleContext &ctx, const NodePtr &n, const NodePath &, int variant) -> NodePtr {
        if (!is_op(n, Kind::Binary, {"==", "!="}) || !pure(n))
          return nullptr;
        // variant 0 moves the left sum's right operand across, 1 the reverse.
        const NodePtr &side = n->kid(variant == 0 ? 0 : 1);
        const NodePtr &other = n->kid(variant == 0 ? 1 : 0);
        if (!is_op(side, Kind::Binary, {"+", "-"}))
          return nullptr;
        Type t = ctx.type_of(side);
        if (!same_integral(ctx, {side->kid(0), side->kid(1), other}, t))
          return nullptr;
        const char *inv = side->text == "+" ? "-" : "+";
        auto moved = assemble(Kind::Binary, inv, {other, operand(side, 1)});
        return variant == 0 ? assemble(Kind::Binary, n->text, {operand(side, 0), moved})
                            : assemble(Kind::Binary, n->text, {moved, operand(side, 0)});
      },
      2);
}

// ---- literals ------------------------------------------------------------------------

std::string grouped(std::uint64_t v) {
  std::string digits = std::to_string(v), out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0)
      out += '_';
    out += digits[i];
  }
  return out;
}

std::string hex(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llX", static_cast<unsigned long long>(v));
  return buf;
}

RuleImpl numeric_representation() {
  return expr_rule(
      describe("replace-numeric-representation", "Replace Numeric Representation",
               Tier::Extended, "$c", "$c (decimal, hexadecimal or grouped)",
               {"same value", "value at most 2147483647"}, "replace-numeric-representation"),
      [](const RuleContext &, const NodePtr &n, const NodePath &, int variant) -> NodePtr {
        if (n->kind != Kind::Literal || (n->lit != LitKind::Int && n->lit != LitKind::Long))
          return nullptr;
        auto v = integer_literal_value(n->text);
        if (!v || *v > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max()))
          return nullptr;
        std::string lexeme;
        switch (variant) {
        case 0: lexeme = std::to_string(*v); break;
        case 1: lexeme = hex(*v); break;
        default:
          if (*v < 1000)
            return nullptr;
          lexeme = grouped(*v);
          break;
        }
        if (n->lit == LitKind::Long)
          lexeme += 'L';
        if (lexeme == n->text)
          return nullptr;
        return make_literal(n->lit, lexeme);
      },
      3);
}

// ---- casts ------------------------------------------------------------------------------

RuleImpl introduce_cast() {
  return expr_rule(
      describe("introduce-cast", "Introduce Cast", Tier::Extended, "$e1", "($T) $e1",
               {"$T is the numeric type of $e1"}, "remove-cast"),
      [](const RuleContext &ctx, const NodePtr &n, const NodePath &p, int) -> NodePtr {
        if (n->kind == Kind::Paren || n->kind == Kind::Cast || !paren_slot_ok(ctx, p))
          return nullptr;
        Type t = ctx.type_of(n);
        if (!t.is_numeric())
          return nullptr;
        return assemble(Kind::Cast, "", {n}, t);
      });
}

RuleImpl remove_cast() {
  return expr_rule(
      describe("remove-cast", "Remove Cast", Tier::Extended, "($T) $e1", "$e1",
               {"$T is the numeric type of $e1"}, "introduce-cast"),
      [](const RuleContext &ctx, const NodePtr &n, const NodePath &, int) -> NodePtr {
        if (n->kind != Kind::Cast || !n->type.is_numeric() || ctx.type_of(n->kid(0)) != n->type)
          return nullptr;
        return unparen(n->kid(0));
      });
}

// ---- increments and assignments -----------------------------------------------------

RuleImpl increment_rule(bool to_prefix) {
  Kind from = to_prefix ? Kind::Postfix : Kind::Prefix;
  Kind to = to_prefix ? Kind::Prefix : Kind::Postfix;
  auto meta = to_prefix
                  ? describe("replace-postfix-with-prefix",
                             "Replace Postfix with Prefix Increment/Decrement", Tier::Extended,
                             "$v1++;", "++$v1;", {"the value is unused"},
                             "replace-prefix-with-postfix")
                  : describe("replace-prefix-with-postfix",
                             "Replace Prefix with Postfix Increment/Decrement", Tier::Extended,
                             "++$v1;", "$v1++;", {"the value is unused"},
                             "replace-postfix-with-prefix");
  return expr_rule(std::move(meta),
                   [from, to](const RuleContext &ctx, const NodePtr &n, const NodePath &p,
                              int) -> NodePtr {
                     if (n->kind != from)
                       return nullptr;
                     auto parent = ctx.node(p.parent());
                     if (parent->kind != Kind::ExprStmt && parent->kind != Kind::ExprList)
                       return nullptr;
                     auto copy = std::make_shared<Node>(*n);
                     copy->kind = to;
                     return copy;
                   });
}

const std::initializer_list<std::string_view> kCompoundOps = {"+", "-", "*", "/", "%"};

RuleImpl to_compound() {
  return expr_rule(
      describe("replace-assignment-with-compound-assignment",
               "Replace Assignment with Compound Assignment", Tier::Extended,
               "$v1 = $v1 op $e1", "$v1 op= $e1", {},
               "replace-compound-assignment-with-assignment"),
      [](const RuleContext &ctx, const NodePtr &n, const NodePath &, int) -> NodePtr {
        if (!is_op(n, Kind::Assign, {"="}) || n->kid(0)->kind != Kind::Name)
          return nullptr;
        const NodePtr &v = n->kid(1);
        if (!is_op(v, Kind::Binary, kCompoundOps) || v->kid(0)->kind != Kind::Name ||
            ctx.symbol_of(v->kid(0)) != ctx.symbol_of(n->kid(0)))
          return nullptr;
        return assemble(Kind::Assign, v->text + "=", {operand(n, 0), operand(v, 1)});
      });
}

RuleImpl from_compound() {
  return expr_rule(
      describe("replace-compound-assignment-with-assignment",
               "Replace Compound Assignment with Assignment", Tier::Extended, "$v1 op= $e1",
               "$v1 = $v1 op $e1", {"$v1 op $e1 has the type of $v1"},
               "replace-assignment-with-compound-assignment"),
      [](const RuleContext &ctx, const NodePtr &n, const NodePath &, int) -> NodePtr {
        if (n->kind != Kind::Assign || n->text.size() != 2 || n->kid(0)->kind != Kind::Name)
          return nullptr;
        std::string op = n->text.substr(0, 1);
        Type t = ctx.type_of(n->kid(0)), e = ctx.type_of(n->kid(1));
        Type result = t.is(BaseType::String) && op == "+" ? t : promote(t, e);
        if (!t.is_numeric() && !t.is(BaseType::String))
          return nullptr;
        if (result != t)
          return nullptr;
        return assemble(Kind::Assign, "=",
                        {operand(n, 0), assemble(Kind::Binary, op, {clone(operand(n, 0)), operand(n, 1)})});
      });
}

} // namespace

void add_expression_rules(std::vector<RuleImpl> &out) {
  out.push_back(de_morgan());
  out.push_back(negation_as_inequality());
  out.push_back(inequality_as_negation());
  out.push_back(double_negation());
  out.push_back(constant_folding());
  out.push_back(factor_out_coefficient());
  out.push_back(introduce_parentheses());
  out.push_back(remove_parentheses());
  out.push_back(swap_commutative());
  out.push_back(reverse_comparison());
  out.push_back(inclusive_to_exclusive());
  out.push_back(constant_to_comparison());
  out.push_back(transpose_equation());
  out.push_back(numeric_representation());
  out.push_back(introduce_cast());
  out.push_back(remove_cast());
  out.push_back(increment_rule(true));
  out.push_back(increment_rule(false));
  out.push_back(to_compound());
  out.push_back(from_compound());
}

} // namespace refdecomp::catalog
