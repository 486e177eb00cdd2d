// Declaration and assignment statement rewrites.
#include "rule_support.hpp"

namespace refdecomp::catalog {

namespace {

NodePtr decl_like(const NodePtr &proto, std::vector<NodePtr> declarators) {
  return with_kids(proto, std::move(declarators));
}

/// A VarDecl in a statement list; null otherwise.
NodePtr listed_decl(const RuleContext &ctx, const NodePath &p) {
  auto n = ctx.node(p);
  if (!n || n->kind != Kind::VarDecl || !in_stmt_list(ctx.ast, p))
    return nullptr;
  return n;
}

NodePtr next_stmt(const RuleContext &ctx, const NodePath &p) {
  return ctx.node(p.parent().child(p.back() + 1));
}

Type declared_type(const NodePtr &decl, const NodePtr &d) {
  return d->flag ? decl->type.as_array() : decl->type;
}

RuleImpl remove_unused_variable() {
  RuleImpl r;
  r.meta = describe("remove-unused-variable", "Remove Unused Variable", Tier::Extended,
                    "$T $v1 = $e1;", "", {"$v1 is never used", "$e1 is pure"}, "");
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto d = ctx.node(s.path);
    if (!d || d->kind != Kind::Declarator)
      return std::nullopt;
    NodePath decl_path = s.path.parent();
    auto decl = listed_decl(ctx, decl_path);
    if (!decl || count_uses(ctx, ctx.ast.body, ctx.symbol_of(d)) != 0 ||
        (d->size() == 1 && !pure(d->kid(0))))
      return std::nullopt;
    if (decl->size() == 1)
      return splice(ctx.ast, decl_path, 1, {});
    auto kids = decl->kids;
    kids.erase(kids.begin() + s.path.back());
    return replace_at(ctx.ast, decl_path, decl_like(decl, std::move(kids)));
  };
  return r;
}

RuleImpl split_declaration() {
  RuleImpl r;
  r.meta = describe("split-variable-declaration", "Split Variable Declaration", Tier::Extended,
                    "$T $v1 = $e1, $v2 = $e2;", "$T $v1 = $e1; $T $v2 = $e2;", {},
                    "merge-variable-declaration");
  // variant + 1 = number of declarators kept in the first declaration.
  r.sites = [](const RuleContext &ctx) {
    std::vector<SiteSpec> out;
    walk(ctx.ast, [&](const NodePtr &n, const NodePath &p) {
      if (n->kind == Kind::VarDecl)
        for (std::size_t k = 1; k < n->size(); ++k)
          out.push_back({p, {}, static_cast<int>(k - 1)});
      return true;
    });
    return out;
  };
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto decl = listed_decl(ctx, s.path);
    auto k = static_cast<std::size_t>(s.variant) + 1;
    if (!decl || s.variant < 0 || k >= decl->size())
      return std::nullopt;
    auto split = decl->kids.begin() + static_cast<std::ptrdiff_t>(k);
    return splice(ctx.ast, s.path, 1,
                  {decl_like(decl, {decl->kids.begin(), split}),
                   decl_like(decl, {split, decl->kids.end()})});
  };
  return r;
}

RuleImpl merge_declaration() {
  RuleImpl r;
  r.meta = describe("merge-variable-declaration", "Merge Variable Declaration", Tier::Extended,
                    "$T $v1 = $e1; $T $v2 = $e2;", "$T $v1 = $e1, $v2 = $e2;",
                    {"same type and modifiers"}, "split-variable-declaration");
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto decl = listed_decl(ctx, s.path);
    if (!decl)
      return std::nullopt;
    auto next = next_stmt(ctx, s.path);
    if (!next || next->kind != Kind::VarDecl || next->type != decl->type ||
        next->flag != decl->flag)
      return std::nullopt;
    auto kids = decl->kids;
    kids.insert(kids.end(), next->kids.begin(), next->kids.end());
    return splice(ctx.ast, s.path, 2, {decl_like(decl, std::move(kids))});
  };
  return r;
}

RuleImpl consolidate_declaration() {
  RuleImpl r;
  r.meta = describe("consolidate-variable-declaration-and-initialization",
                    "Consolidate Variable Declaration and Initialization", Tier::Extended,
                    "$T $v1; $v1 = $e1;", "$T $v1 = $e1;", {"$e1 does not read $v1"},
                    "split-variable-declaration-and-initialization");
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto decl = listed_decl(ctx, s.path);
    if (!decl || decl->size() != 1 || decl->kid(0)->size() != 0 || decl->flag)
      return std::nullopt;
    const NodePtr &d = decl->kid(0);
    int sym = ctx.symbol_of(d);
    auto next = next_stmt(ctx, s.path);
    if (!next || next->kind != Kind::ExprStmt)
      return std::nullopt;
    const NodePtr &a = next->kid(0);
    if (a->kind != Kind::Assign || a->text != "=" || a->kid(0)->kind != Kind::Name ||
        ctx.symbol_of(a->kid(0)) != sym || count_uses(ctx, a->kid(1), sym) != 0)
      return std::nullopt;
    auto init = with_kids(d, {a->kid(1)});
    return splice(ctx.ast, s.path, 2, {decl_like(decl, {init})});
  };
  return r;
}

RuleImpl split_initialization() {
  RuleImpl r;
  r.meta = describe("split-variable-declaration-and-initialization",
                    "Split Variable Declaration and Initialization", Tier::Extended,
                    "$T $v1 = $e1;", "$T $v1; $v1 = $e1;", {"not final"},
                    "consolidate-variable-declaration-and-initialization");
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto decl = listed_decl(ctx, s.path);
    if (!decl || decl->size() != 1 || decl->kid(0)->size() != 1 || decl->flag)
      return std::nullopt;
    const NodePtr &d = decl->kid(0);
    auto assign = assemble(Kind::Assign, "=", {make_name(d->text), operand(d, 0)});
    return splice(ctx.ast, s.path, 1,
                  {decl_like(decl, {with_kids(d, {})}), make_expr_stmt(assign)});
  };
  return r;
}

RuleImpl introduce_return_variable() {
  RuleImpl r;
  r.meta = describe("introduce-return-variable", "Introduce Return Variable", Tier::Extended,
                    "return $e1;", "$T $v1 = $e1; return $v1;",
                    {"$T is the return type"}, "inline-return-variable", {"$v1"});
  r.sites = [](const RuleContext &ctx) {
    std::vector<std::string> names;
    if (ctx.target) {
      walk(*ctx.target, [&](const NodePtr &n, const NodePath &) {
        if (n->kind == Kind::Return && n->kid(0)->kind == Kind::Name &&
            !ctx.has_name(n->kid(0)->text) &&
            std::find(names.begin(), names.end(), n->kid(0)->text) == names.end())
          names.push_back(n->kid(0)->text);
        return true;
      });
    } else {
      names = ctx.fresh_names();
    }
    std::vector<SiteSpec> out;
    walk(ctx.ast, [&](const NodePtr &n, const NodePath &p) {
      if (n->kind == Kind::Return)
        for (const auto &name : names)
          out.push_back({p, {{"name", name}}, 0});
      return true;
    });
    return out;
  };
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto n = ctx.node(s.path);
    auto name = binding_of(s.bindings, "name");
    if (!n || n->kind != Kind::Return || !in_stmt_list(ctx.ast, s.path) || name.empty() ||
        ctx.has_name(name) || is_keyword(name))
      return std::nullopt;
    auto d = make_declarator(name, n->kid(0));
    return splice(ctx.ast, s.path, 1,
                  {make_var_decl(ctx.ast.return_type, {d}), make_return(make_name(name))});
  };
  return r;
}

RuleImpl inline_return_variable() {
  RuleImpl r;
  r.meta = describe("inline-return-variable", "Inline Return Variable", Tier::Extended,
                    "$T $v1 = $e1; return $v1;", "return $e1;",
                    {"$T is the return type", "$v1 is used only by the return"},
                    "introduce-return-variable");
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto decl = listed_decl(ctx, s.path);
    if (!decl || decl->flag || decl->size() != 1 || decl->kid(0)->size() != 1 ||
        decl->kid(0)->flag)
      return std::nullopt;
    const NodePtr &d = decl->kid(0);
    if (declared_type(decl, d) != ctx.ast.return_type)
      return std::nullopt;
    int sym = ctx.symbol_of(d);
    auto next = next_stmt(ctx, s.path);
    if (!next || next->kind != Kind::Return || next->kid(0)->kind != Kind::Name ||
        ctx.symbol_of(next->kid(0)) != sym || count_uses(ctx, ctx.ast.body, sym) != 1)
      return std::nullopt;
    return splice(ctx.ast, s.path, 2, {make_return(d->kid(0))});
  };
  return r;
}

RuleImpl split_chained_assignment() {
  RuleImpl r;
  r.meta = describe("split-chained-assignment", "Split Chained Assignment", Tier::Extended,
                    "$v1 = $v2 = $e1;", "$v2 = $e1; $v1 = $v2;", {"$v1 and $v2 are variables"},
                    "");
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    auto n = ctx.node(s.path);
    if (!n || n->kind != Kind::ExprStmt || !in_stmt_list(ctx.ast, s.path))
      return std::nullopt;
    const NodePtr &outer = n->kid(0);
    if (outer->kind != Kind::Assign || outer->text != "=" || outer->kid(0)->kind != Kind::Name)
      return std::nullopt;
    const NodePtr &inner = unparen(outer->kid(1));
    if (inner->kind != Kind::Assign || inner->text != "=" || inner->kid(0)->kind != Kind::Name)
      return std::nullopt;
    return splice(ctx.ast, s.path, 1,
                  {make_expr_stmt(inner),
                   make_expr_stmt(make_assign("=", outer->kid(0), clone(inner->kid(0))))});
  };
  return r;
}

RuleImpl array_declaration_style() {
  RuleImpl r;
  r.meta = describe("replace-array-declaration-style", "Replace Array Declaration Style",
                    Tier::Extended, "$T $v1[]", "$T[] $v1",
                    {"every declarator of the statement is an array"},
                    "replace-array-declaration-style");
  r.sites = [](const RuleContext &ctx) {
    std::vector<SiteSpec> out;
    for (std::size_t i = 0; i < ctx.ast.params.size(); ++i)
      if (ctx.ast.params[i].type.array)
        out.push_back({{}, {{"param", std::to_string(i)}}, 0});
    walk(ctx.ast, [&](const NodePtr &n, const NodePath &p) {
      if (n->kind == Kind::VarDecl)
        out.push_back({p, {}, 0});
      return true;
    });
    return out;
  };
  r.rewrite = [](const RuleContext &ctx, const SiteSpec &s) -> std::optional<MethodAst> {
    if (s.path.empty()) {
      auto param = binding_of(s.bindings, "param");
      if (param.empty())
        return std::nullopt;
      auto i = std::stoul(param);
      if (i >= ctx.ast.params.size() || !ctx.ast.params[i].type.array)
        return std::nullopt;
      MethodAst out = ctx.ast;
      out.params[i].c_style_array = !out.params[i].c_style_array;
      return out;
    }
    auto decl = ctx.node(s.path);
    if (!decl || decl->kind != Kind::VarDecl)
      return std::nullopt;
    bool all_c = std::all_of(decl->kids.begin(), decl->kids.end(),
                             [](const NodePtr &d) { return d->flag; });
    bool none_c = std::none_of(decl->kids.begin(), decl->kids.end(),
                               [](const NodePtr &d) { return d->flag; });
    bool to_c = decl->type.array && none_c;
    if (!to_c && !(!decl->type.array && all_c))
      return std::nullopt;
    std::vector<NodePtr> kids;
    for (const auto &d : decl->kids) {
      auto copy = std::make_shared<Node>(*d);
      copy->flag = to_c;
      kids.push_back(copy);
    }
    auto out = std::make_shared<Node>(*decl);
    out->type = to_c ? decl->type.element() : decl->type.as_array();
    out->kids = std::move(kids);
    return replace_at(ctx.ast, s.path, out);
  };
  return r;
}

} // namespace

void add_declaration_rules(std::vector<RuleImpl> &out) {
  out.push_back(remove_unused_variable());
  out.push_back(split_declaration());
  out.push_back(merge_declaration());
  out.push_back(consolidate_declaration());
  out.push_back(split_initialization());
  out.push_back(introduce_return_variable());
  out.push_back(inline_return_variable());
  out.push_back(split_chained_assignment());
  out.push_back(array_declaration_style());
}

} // namespace refdecomp::catalog
