// Refactorings a method-level differencing detector reports: renames,
// extract/inline variable, type widening and the final modifier.
#include "rule_support.hpp"

namespace refdecomp::catalog {

namespace {

bool usable_name(const RuleContext &ctx, const std::string &name) {
  return !name.empty() && !is_keyword(name) && !ctx.has_name(name);
}

/// Candidate new names for an identifier currently called `old`.
std::vector<std::string> rename_targets(const RuleContext &ctx, const std::string &old) {
  if (ctx.target && ctx.target_has_name(old))
    return {};
  return ctx.fresh_names();
}

NodePtr rename_rec(const RuleContext &ctx, const NodePtr &n, int symbol,
                   const std::string &to) {
  bool changed = false;
  std::vector<NodePtr> kids;
  kids.reserve(n->kids.size());
  for (const auto &k : n->kids) {
    kids.push_back(k ? rename_rec(ctx, k, symbol, to) : k);
    changed |= kids.back() != k;
  }
  bool binds = n->kind == Kind::Name || n->kind == Kind::Declarator ||
               n->kind == Kind::Foreach;
  if (binds && ctx.symbol_of(n) == symbol) {
    auto copy = std::make_shared<Node>(*n);
    copy->text = to;
    copy->kids = std::move(kids);
    return copy;
  }
  return changed ? with_kids(n, std::move(kids)) : n;
}

MethodAst rename_symbol(const RuleContext &ctx, int symbol, const std::string &to) {
  MethodAst out = ctx.ast;
  out.body = rename_rec(ctx, ctx.ast.body, symbol, to);
  return out;
}

int declaration_count(const MethodAst &ast, const std::string &name) {
  int count = 0;
  for (const auto &p : ast.params)
    count += p.name == name;
  walk(ast, [&](const NodePtr &n, const NodePath &) {
    if ((n->kind == Kind::Declarator || n->kind == Kind::Foreach) && n->text == name)
      ++count;
    return true;
  });
  return count;
}

// ---- statement heads -----------------------------------------------------------

bool is_head_kind(Kind k) {
  return k == Kind::ExprStmt || k == Kind::Return || k == Kind::VarDecl || k == Kind::If;
}

/// Path of the statement whose head contains the expression at `path`, or
/// nullopt when the expression is not inside such a head.
std::optional<NodePath> head_statement(const MethodAst &ast, const NodePath &path) {
  NodePath p = path;
  while (!p.empty()) {
    NodePath up = p.parent();
    const Node *n = try_resolve(ast, up);
    if (!n)
      return std::nullopt;
    if (is_expression(n->kind) || n->kind == Kind::Declarator) {
      p = up;
      continue;
    }
    if (!is_head_kind(n->kind))
      return std::nullopt;
    if (n->kind == Kind::If && p.back() != 0)
      return std::nullopt;
    return up;
  }
  return std::nullopt;
}

/// Evaluation of the head has no effects apart from a top-level store.
bool head_is_quiet(const NodePtr &s) {
  switch (s->kind) {
  case Kind::ExprStmt: {
    const NodePtr &e = s->kid(0);
    if (e->kind == Kind::Assign)
      return side_effect_free(e->kid(0)) && side_effect_free(e->kid(1));
    return side_effect_free(e);
  }
  case Kind::Return:
  case Kind::VarDecl:
    return std::all_of(s->kids.begin(), s->kids.end(), [](const NodePtr &k) {
      return side_effect_free(k);
    });
  case Kind::If:
    return side_effect_free(s->kid(0));
  default:
    return false;
  }
}

bool mentions_declared(const NodePtr &e, const NodePtr &stmt) {
  if (stmt->kind != Kind::VarDecl)
    return false;
  for (const auto &d : stmt->kids)
    if (mentions_name(e, d->text))
      return true;
  return false;
}

NodePtr declaration(Type t, const std::string &name, NodePtr init) {
  return make_var_decl(t, {make_declarator(name, std::move(init))});
}

// ---- rules -----------------------------------------------------------------------

RuleImpl rename_method() {
  RuleImpl r;
  r.meta = describe("rename-method", "Rename Method", Tier::Detector,
                    "$T $v1(...) { ... }", "$T $v2(...) { ... }",
                    {"$v2 is not used in the method"}, "rename-method", {"$v2"});
  r.sites = [](const RuleContext &ctx) {
    std::vector<SiteSpec> out;
    if (ctx.target) {
      if (ctx.target->name != ctx.ast.name && !ctx.has_name(ctx.target->name))
        out.push_back({{}, {{"from", ctx.ast.name}, {"to", ctx.target->name}}, 0});
    } else {
      for (const auto &n : ctx.fresh_names())
        out.push_back({{}, {{"from", ctx.ast.name}, {"to", n}}, 0});
    }
    return out;
  };
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto to = binding_of(s.bindings, "to");
    if (!s.path.empty() || !usable_name(ctx, to))
      return std::nullopt;
    MethodAst out = ctx.ast;
    out.name = to;
    return out;
  };
  return r;
}

RuleImpl rename_parameter() {
  RuleImpl r;
  r.meta = describe("rename-parameter", "Rename Parameter", Tier::Detector,
                    "$T $v1 (parameter)", "$T $v2",
                    {"$v2 is not used in the method"}, "rename-parameter", {"$v2"});
  r.sites = [](const RuleContext &ctx) {
    std::vector<SiteSpec> out;
    for (std::size_t i = 0; i < ctx.ast.params.size(); ++i)
      for (const auto &n : rename_targets(ctx, ctx.ast.params[i].name))
        out.push_back({{},
                        {{"param", std::to_string(i)},
                         {"from", ctx.ast.params[i].name},
                         {"to", n}},
                        0});
    return out;
  };
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto to = binding_of(s.bindings, "to");
    auto idx = std::stoul(binding_of(s.bindings, "param"));
    if (!s.path.empty() || idx >= ctx.ast.params.size() || !usable_name(ctx, to))
      return std::nullopt;
    MethodAst out = rename_symbol(ctx, static_cast<int>(idx), to);
    out.params[idx].name = to;
    return out;
  };
  return r;
}

RuleImpl rename_variable() {
  RuleImpl r;
  r.meta = describe("rename-variable", "Rename Variable", Tier::Detector,
                    "$T $v1 = ...; ... $v1 ...", "$T $v2 = ...; ... $v2 ...",
                    {"$v2 is not used in the method", "$v1 is declared once"},
                    "rename-variable", {"$v2"});
  r.sites = [](const RuleContext &ctx) {
    std::vector<SiteSpec> out;
    walk(ctx.ast, [&](const NodePtr &n, const NodePath &p) {
      if (n->kind == Kind::Declarator || n->kind == Kind::Foreach)
        for (const auto &to : rename_targets(ctx, n->text))
          out.push_back({p, {{"from", n->text}, {"to", to}}, 0});
      return true;
    });
    return out;
  };
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto n = ctx.node(s.path);
    auto to = binding_of(s.bindings, "to");
    if (!n || (n->kind != Kind::Declarator && n->kind != Kind::Foreach) ||
        !usable_name(ctx, to) || declaration_count(ctx.ast, n->text) != 1)
      return std::nullopt;
    return rename_symbol(ctx, ctx.symbol_of(n), to);
  };
  return r;
}

RuleImpl extract_variable() {
  RuleImpl r;
  r.meta = describe("extract-variable", "Extract Variable", Tier::Detector,
                    "S[$e1]", "$T $v1 = $e1; S[$v1]",
                    {"$e1 is pure", "$T is the type of $e1",
                     "S is an expression, return, declaration or if statement",
                     "the head of S has no other side effects",
                     "$e1 does not use variables declared by S"},
                    "inline-variable", {"$v1"});
  r.sites = [](const RuleContext &ctx) {
    std::vector<SiteSpec> out;
    // Target-guided: initializers of target declarations whose names are new.
    std::vector<std::pair<std::string, NodePtr>> decls;
    if (ctx.target)
      walk(*ctx.target, [&](const NodePtr &n, const NodePath &) {
        if (n->kind == Kind::Declarator && n->size() == 1 && !ctx.has_name(n->text))
          decls.emplace_back(n->text, n->kid(0));
        return true;
      });
    walk(ctx.ast, [&](const NodePtr &n, const NodePath &p) {
      if (!is_expression(n->kind))
        return true;
      if (ctx.target) {
        for (const auto &[name, init] : decls)
          if (structurally_equal(init, n))
            out.push_back({p, {{"name", name}}, 0});
      } else if (n->kind != Kind::Paren && n->kind != Kind::Name) {
        for (const auto &name : ctx.fresh_names())
          out.push_back({p, {{"name", name}}, 0});
      }
      return true;
    });
    return out;
  };
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto e = ctx.node(s.path);
    auto name = binding_of(s.bindings, "name");
    if (!e || !is_expression(e->kind) || !pure(e) || !usable_name(ctx, name))
      return std::nullopt;
    auto stmt_path = head_statement(ctx.ast, s.path);
    if (!stmt_path || !in_stmt_list(ctx.ast, *stmt_path))
      return std::nullopt;
    auto stmt = ctx.node(*stmt_path);
    if (!head_is_quiet(stmt) || mentions_declared(e, stmt))
      return std::nullopt;
    if (store_slot(ctx.ast, s.path) || negated_literal(ctx.ast, s.path))
      return std::nullopt;
    MethodAst out = replace_expr(ctx.ast, s.path, make_name(name));
    return splice(out, *stmt_path, 1,
                  {declaration(ctx.type_of(e), name, clone(e)),
                   resolve_path(out, *stmt_path)});
  };
  return r;
}

RuleImpl inline_variable() {
  RuleImpl r;
  r.meta = describe("inline-variable", "Inline Variable", Tier::Detector,
                    "$T $v1 = $e1; S[$v1]", "S[$e1]",
                    {"$v1 is read exactly once, in the head of the next statement S",
                     "$v1 is never assigned", "$e1 is pure", "$T is the type of $e1",
                     "the head of S has no other side effects"},
                    "extract-variable");
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto decl = ctx.node(s.path);
    if (!decl || decl->kind != Kind::VarDecl || decl->size() != 1 ||
        !in_stmt_list(ctx.ast, s.path))
      return std::nullopt;
    const auto &d = decl->kid(0);
    if (decl->flag || d->flag || d->size() != 1 || !pure(d->kid(0)))
      return std::nullopt;
    if (ctx.target && ctx.target_has_name(d->text))
      return std::nullopt;
    int sym = ctx.symbol_of(d);
    const NodePtr &e = d->kid(0);
    if (ctx.type_of(e) != ctx.info.symbol_types[static_cast<std::size_t>(sym)])
      return std::nullopt;
    NodePath next = s.path.parent().child(s.path.back() + 1);
    auto stmt = ctx.node(next);
    if (!stmt || !is_head_kind(stmt->kind) || !head_is_quiet(stmt))
      return std::nullopt;
    if (count_uses(ctx, ctx.ast.body, sym) != 1 || writes_symbol(ctx, ctx.ast.body, sym))
      return std::nullopt;
    std::optional<NodePath> use;
    walk(stmt, next, [&](const NodePtr &n, const NodePath &p) {
      if (n->kind == Kind::Name && ctx.symbol_of(n) == sym)
        use = p;
      return !use;
    });
    if (!use)
      return std::nullopt;
    auto head = head_statement(ctx.ast, *use);
    if (!head || *head != next)
      return std::nullopt;
    MethodAst out = replace_expr(ctx.ast, *use, clone(e));
    return splice(out, s.path, 1, {});
  };
  return r;
}

RuleImpl change_variable_type() {
  RuleImpl r;
  r.meta = describe("change-variable-type", "Change Variable Type", Tier::Detector,
                    "int $v1 = $e1;", "long $v1 = $e1;",
                    {"single declarator", "every use of $v1 keeps the type of its context",
                     "$v1 is only written by plain assignment statements"},
                    "");
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto decl = ctx.node(s.path);
    if (!decl || decl->kind != Kind::VarDecl || decl->size() != 1 ||
        decl->type != Type::int_() || decl->kid(0)->flag)
      return std::nullopt;
    int sym = ctx.symbol_of(decl->kid(0));
    auto retyped = std::make_shared<Node>(*decl);
    retyped->type = Type::long_();
    MethodAst out = replace_at(ctx.ast, s.path, retyped);
    if (!type_checks(out))
      return std::nullopt;
    TypeInfo after = type_check(out);
    // Nodes whose type may legitimately change: uses of v, parens around
    // them and plain assignment statements to v.
    std::set<const Node *> exempt;
    bool ok = true;
    NodePath root;
    walk(ctx.ast.body, root, [&](const NodePtr &n, const NodePath &) {
      if (n->kind == Kind::ExprStmt || n->kind == Kind::ExprList)
        for (const auto &k : n->kids)
          if (k->kind == Kind::Assign && k->text == "=" &&
              unparen(k->kid(0))->kind == Kind::Name &&
              ctx.symbol_of(unparen(k->kid(0))) == sym)
            exempt.insert(k.get());
      if (!is_expression(n->kind) || exempt.count(n.get()))
        return true;
      const NodePtr &u = unparen(n);
      if (u->kind == Kind::Name && ctx.symbol_of(u) == sym)
        return true;
      if (ctx.type_of(n) != after.type_of(n.get()))
        ok = false;
      return ok;
    });
    if (!ok)
      return std::nullopt;
    return out;
  };
  return r;
}

bool never_written(const RuleContext &ctx, const NodePtr &decl) {
  if (decl->kind == Kind::Foreach)
    return !writes_symbol(ctx, ctx.ast.body, ctx.symbol_of(decl));
  return std::all_of(decl->kids.begin(), decl->kids.end(), [&](const NodePtr &d) {
    return d->size() == 1 && !writes_symbol(ctx, ctx.ast.body, ctx.symbol_of(d));
  });
}

RuleImpl modifier_rule(bool add) {
  RuleImpl r;
  r.meta = add ? describe("add-variable-modifier", "Add Variable Modifier", Tier::Detector,
                          "$T $v1 = $e1;", "final $T $v1 = $e1;",
                          {"every declared variable is initialized and never assigned"},
                          "remove-variable-modifier")
               : describe("remove-variable-modifier", "Remove Variable Modifier",
                          Tier::Detector, "final $T $v1 = $e1;", "$T $v1 = $e1;", {},
                          "add-variable-modifier");
  r.rewrite = [add](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto n = ctx.node(s.path);
    if (!n || n->flag == add)
      return std::nullopt;
    if (n->kind == Kind::VarDecl) {
      if (!in_stmt_list(ctx.ast, s.path))
        return std::nullopt;
    } else if (n->kind != Kind::Foreach) {
      return std::nullopt;
    }
    if (add && !never_written(ctx, n))
      return std::nullopt;
    auto copy = std::make_shared<Node>(*n);
    copy->flag = add;
    return replace_at(ctx.ast, s.path, copy);
  };
  return r;
}

} // namespace

void add_detector_rules(std::vector<RuleImpl> &out) {
  out.push_back(rename_method());
  out.push_back(rename_parameter());
  out.push_back(rename_variable());
  out.push_back(extract_variable());
  out.push_back(inline_variable());
  out.push_back(change_variable_type());
  out.push_back(modifier_rule(true));
  out.push_back(modifier_rule(false));
}

} // namespace refdecomp::catalog
