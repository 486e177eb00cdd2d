#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace refdecomp {

enum class BaseType : std::uint8_t { Int, Long, Double, Boolean, String };

/// A MiniJ type: a scalar base type, optionally one array dimension.
struct Type {
  BaseType base = BaseType::Int;
  bool array = false;

  friend bool operator==(const Type &, const Type &) = default;

  static Type int_() { return {BaseType::Int, false}; }
  static Type long_() { return {BaseType::Long, false}; }
  static Type double_() { return {BaseType::Double, false}; }
  static Type boolean() { return {BaseType::Boolean, false}; }
  static Type string() { return {BaseType::String, false}; }

  bool is_numeric() const {
    return !array && (base == BaseType::Int || base == BaseType::Long ||
                      base == BaseType::Double);
  }
  bool is_integral() const {
    return !array && (base == BaseType::Int || base == BaseType::Long);
  }
  bool is(BaseType b) const { return !array && base == b; }
  Type element() const { return {base, false}; }
  Type as_array() const { return {base, true}; }
};

std::string to_string(Type t);

enum class Kind : std::uint8_t {
  // statements and structural helpers
  Block,
  VarDecl,
  Declarator,
  ExprStmt,
  If,
  Switch,
  Case,
  For,
  Foreach,
  While,
  Return,
  Break,
  Empty,
  ExprList,
  // expressions
  Literal,
  Name,
  Unary,
  Prefix,
  Postfix,
  Binary,
  Assign,
  Ternary,
  Paren,
  Cast,
  Index,
  Length,
  NewArray,
  ArrayInit,
};

const char *to_string(Kind k);
bool is_expression(Kind k);

enum class LitKind : std::uint8_t { Int, Long, Double, Bool, String };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// Uniform immutable tree node. Child layout per kind:
///   Block        kids = statements
///   VarDecl      type = base type, flag = final, kids = Declarators
///   Declarator   text = name, flag = C-style `[]`, kids = [init]?
///   ExprStmt     kids = [expr]
///   If           kids = [cond, then, else?]
///   Switch       kids = [scrutinee, Case...]
///   Case         flag = default, count = #labels, kids = labels..., stmts...
///   For          kids = [init (VarDecl|ExprList|Empty), cond|Empty,
///                        update ExprList, body]
///   Foreach      text = var, type = element type, kids = [array, body]
///   While        kids = [cond, body]
///   Return       kids = [expr]
///   Literal      text = lexeme, lit = literal kind
///   Name         text = identifier
///   Unary        text = "!" | "-", kids = [operand]
///   Prefix/Postfix text = "++" | "--", kids = [target]
///   Binary       text = operator, kids = [lhs, rhs]
///   Assign       text = "=" | "+=" ..., kids = [target, value]
///   Ternary      kids = [cond, then, else]
///   Cast         type = target type, kids = [operand]
///   Index        kids = [array, index];  Length kids = [array]
///   NewArray     type = element type, kids = [size]
///   ArrayInit    type = element type, kids = elements
struct Node {
  Kind kind = Kind::Empty;
  std::string text;
  Type type{};
  LitKind lit = LitKind::Int;
  bool flag = false;
  std::uint16_t count = 0;
  std::vector<NodePtr> kids;

  const NodePtr &kid(std::size_t i) const { return kids[i]; }
  std::size_t size() const { return kids.size(); }
};

struct Param {
  std::string name;
  Type type;
  bool c_style_array = false;

  friend bool operator==(const Param &, const Param &) = default;
};

/// One MiniJ method. `body` is always a Block.
struct MethodAst {
  std::string name;
  Type return_type;
  std::vector<Param> params;
  NodePtr body;
};

/// Child indices from the body root.
struct NodePath {
  std::vector<int> steps;

  friend bool operator==(const NodePath &, const NodePath &) = default;
  friend auto operator<=>(const NodePath &a, const NodePath &b) {
    return a.steps <=> b.steps;
  }
  NodePath child(int i) const {
    NodePath p = *this;
    p.steps.push_back(i);
    return p;
  }
  NodePath parent() const {
    NodePath p = *this;
    if (!p.steps.empty())
      p.steps.pop_back();
    return p;
  }
  bool empty() const { return steps.empty(); }
  int back() const { return steps.back(); }
  std::string str() const;
};

// ---- construction helpers -------------------------------------------------

NodePtr make(Kind kind, std::vector<NodePtr> kids = {}, std::string text = {});
NodePtr make_literal(LitKind lit, std::string lexeme);
NodePtr make_name(std::string name);
NodePtr make_binary(std::string op, NodePtr lhs, NodePtr rhs);
NodePtr make_unary(std::string op, NodePtr operand);
NodePtr make_paren(NodePtr inner);
NodePtr make_block(std::vector<NodePtr> stmts);
NodePtr make_expr_stmt(NodePtr expr);
NodePtr make_assign(std::string op, NodePtr target, NodePtr value);
NodePtr make_return(NodePtr expr);
NodePtr make_if(NodePtr cond, NodePtr then_branch, NodePtr else_branch = nullptr);
NodePtr make_var_decl(Type base, std::vector<NodePtr> declarators,
                      bool is_final = false);
NodePtr make_declarator(std::string name, NodePtr init = nullptr,
                        bool c_array = false);
NodePtr make_cast(Type target, NodePtr operand);
NodePtr make_int(long long value);

/// Copy of `n` with its children replaced.
NodePtr with_kids(const NodePtr &n, std::vector<NodePtr> kids);
/// Deep copy; the result shares no node with `n`.
NodePtr clone(const NodePtr &n);

// ---- structural queries ---------------------------------------------------

bool structurally_equal(const NodePtr &a, const NodePtr &b);
bool structurally_equal(const MethodAst &a, const MethodAst &b);
std::uint64_t structural_hash(const NodePtr &n);

/// Resolves a path from the body root; throws Error(InvalidPath).
const NodePtr &resolve_path(const MethodAst &ast, const NodePath &path);
/// Non-throwing variant.
const Node *try_resolve(const MethodAst &ast, const NodePath &path);

/// Returns a copy of `ast` with the node at `path` replaced by `replacement`.
MethodAst replace_at(const MethodAst &ast, const NodePath &path,
                     NodePtr replacement);

/// Preorder traversal: fn(node, path). Returning false skips the subtree.
template <typename Fn>
void walk(const NodePtr &node, NodePath &path, Fn &&fn) {
  if (!fn(node, static_cast<const NodePath &>(path)))
    return;
  for (std::size_t i = 0; i < node->kids.size(); ++i) {
    if (!node->kids[i])
      continue;
    path.steps.push_back(static_cast<int>(i));
    walk(node->kids[i], path, fn);
    path.steps.pop_back();
  }
}

template <typename Fn> void walk(const MethodAst &ast, Fn &&fn) {
  NodePath path;
  walk(ast.body, path, fn);
}

/// True when the statement list holder (Block or Case) starts its statements
/// at index `first_stmt_index(node)`.
bool is_stmt_list(const Node &n);
std::size_t first_stmt_index(const Node &n);

/// All identifiers occurring in the method (names, declarators, params,
/// foreach variables, method name).
std::vector<std::string> identifiers(const MethodAst &ast);
bool mentions_name(const NodePtr &n, std::string_view name);

} // namespace refdecomp
