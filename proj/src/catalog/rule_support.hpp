#pragma once

#include "refdecomp/catalog.hpp"
#include "refdecomp/syntax.hpp"

#include <functional>
#include <optional>
#include <set>

namespace refdecomp::catalog {

struct SiteSpec {
  NodePath path;
  Bindings bindings;
  int variant = 0;
};

/// Facts shared by every rule while matching on one method.
class RuleContext {
public:
  RuleContext(const MethodAst &ast, const MethodAst *target);

  const MethodAst &ast;
  const MethodAst *target;
  TypeInfo info;

  const Node *at(const NodePath &p) const { return try_resolve(ast, p); }
  NodePtr node(const NodePath &p) const;
  Type type_of(const NodePtr &n) const { return info.type_of(n); }
  int symbol_of(const NodePtr &n) const { return info.symbol_of(n.get()); }

  bool has_name(const std::string &name) const { return names_.count(name) > 0; }
  bool target_has_name(const std::string &name) const {
    return target_names_.count(name) > 0;
  }
  /// Identifiers of the target absent from ast in first-occurrence order, or
  /// the first unused pool name when there is no target.
  const std::vector<std::string> &fresh_names() const { return fresh_; }

private:
  std::set<std::string> names_;
  std::set<std::string> target_names_;
  std::vector<std::string> fresh_;
};

using SitesFn = std::function<std::vector<SiteSpec>(const RuleContext &)>;
using RewriteFn =
    std::function<std::optional<MethodAst>(const RuleContext &, const SiteSpec &)>;

struct RuleImpl {
  RewriteRule meta;
  /// Empty means: every node path with variants 0..variants-1.
  SitesFn sites;
  RewriteFn rewrite;
  int variants = 1;
};

/// Registration hooks, one per source file.
void add_detector_rules(std::vector<RuleImpl> &out);
void add_expression_rules(std::vector<RuleImpl> &out);
void add_control_rules(std::vector<RuleImpl> &out);
void add_declaration_rules(std::vector<RuleImpl> &out);

RewriteRule describe(std::string id, std::string name, Tier tier, std::string lhs,
                     std::string rhs, std::vector<std::string> guards,
                     std::string inverse_id, std::vector<std::string> fresh = {});

// ---- expression helpers ------------------------------------------------------

const NodePtr &unparen(const NodePtr &n);
/// No assignment or increment anywhere.
bool side_effect_free(const NodePtr &n);
/// Side-effect free and cannot raise: no division or remainder, indexing or
/// array creation.
bool pure(const NodePtr &n);
/// Integer value of an int/long literal, optionally under unary minus.
std::optional<std::int64_t> integral_constant(const NodePtr &n);
bool is_bool_literal(const NodePtr &n, bool value);

/// Builds a node and fixes its children's parentheses for their new slots:
/// redundant wrappers are dropped and required ones added.
NodePtr assemble(Kind kind, std::string text, std::vector<NodePtr> kids,
                 Type type = {});
NodePtr assemble_like(const NodePtr &proto, std::vector<NodePtr> kids);
/// Logical negation: strips a leading `!`, otherwise wraps.
/// Kid `slot` of `parent` for use elsewhere: a paren that `parent` forced is
/// dropped, a redundant one is kept.
NodePtr operand(const NodePtr &parent, std::size_t slot);
/// `!cond`, or the operand of `cond` when it already is a negation and
/// `strip` is set.
NodePtr negate(const NodePtr &cond, bool strip = true);

/// Replaces the expression at `path`. Adds parentheses the new node needs;
/// drops an enclosing Paren that only the old node needed.
MethodAst replace_expr(const MethodAst &ast, const NodePath &path, NodePtr repl);

// ---- statement helpers ---------------------------------------------------------

/// True when the node at `path` sits in a Block or Case statement list.
bool in_stmt_list(const MethodAst &ast, const NodePath &path);
/// Replaces `count` statements starting at path.back() in the enclosing list.
MethodAst splice(const MethodAst &ast, const NodePath &first, std::size_t count,
                 std::vector<NodePtr> stmts);
/// Statements of a body: a Block's children, otherwise the statement itself.
std::vector<NodePtr> body_stmts(const NodePtr &body);

/// Rebuilds `n` bottom-up with `fn` applied to every node; fn returns null to
/// keep a node.
NodePtr rewrite_tree(const NodePtr &n, const std::function<NodePtr(const NodePtr &)> &fn);
MethodAst rewrite_body(const MethodAst &ast,
                       const std::function<NodePtr(const NodePtr &)> &fn);

/// Number of Name nodes bound to `symbol` under `n`.
int count_uses(const RuleContext &ctx, const NodePtr &n, int symbol);
/// Whether `n` assigns or increments the variable `symbol`.
bool writes_symbol(const RuleContext &ctx, const NodePtr &n, int symbol);
/// Whether `n` stores into any array element.
bool writes_array_element(const NodePtr &n);
bool contains_kind(const NodePtr &n, Kind k);

/// The operand of a unary minus that is a literal; such literals cannot be
/// moved or wrapped since `2147483648` is only valid there.
bool negated_literal(const MethodAst &ast, const NodePath &path);
/// Assignment targets and increment operands.
bool store_slot(const MethodAst &ast, const NodePath &path);

/// Control-structure body slots: If then/else, While/Foreach/For body.
bool is_body_slot(const Node &parent, std::size_t slot);

std::string binding_of(const Bindings &b, std::string_view key);
std::string text_of(const NodePtr &n);
/// Inverse of text_of for statement sequences and single expressions.
std::vector<NodePtr> parse_stmts(const std::string &text);
NodePtr parse_expr(const std::string &text);
/// Printed statements separated by single spaces.
std::string text_of(const std::vector<NodePtr> &stmts);

} // namespace refdecomp::catalog
