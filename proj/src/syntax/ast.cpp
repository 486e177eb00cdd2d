#include "refdecomp/ast.hpp"
#include "refdecomp/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace refdecomp {

const char *to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Lexical: return "lexical-error";
  case ErrorKind::Parse: return "parse-error";
  case ErrorKind::Type: return "type-error";
  case ErrorKind::InvalidPath: return "invalid-path";
  case ErrorKind::BaselineZero: return "baseline-zero";
  case ErrorKind::StaleSite: return "stale-site";
  case ErrorKind::GuardViolation: return "guard-violation";
  case ErrorKind::SignatureMismatch: return "signature-mismatch";
  case ErrorKind::UnsupportedType: return "unsupported-type";
  case ErrorKind::InvalidArgument: return "invalid-argument";
  case ErrorKind::EmptyCorpus: return "empty-corpus";
  case ErrorKind::Io: return "io-error";
  }
  return "error";
}

std::string to_string(Type t) {
  std::string s;
  switch (t.base) {
  case BaseType::Int: s = "int"; break;
  case BaseType::Long: s = "long"; break;
  case BaseType::Double: s = "double"; break;
  case BaseType::Boolean: s = "boolean"; break;
  case BaseType::String: s = "String"; break;
  }
  if (t.array)
    s += "[]";
  return s;
}

const char *to_string(Kind k) {
  switch (k) {
  case Kind::Block: return "Block";
  case Kind::VarDecl: return "VarDecl";
  case Kind::Declarator: return "Declarator";
  case Kind::ExprStmt: return "ExprStmt";
  case Kind::If: return "If";
  case Kind::Switch: return "Switch";
  case Kind::Case: return "Case";
  case Kind::For: return "For";
  case Kind::Foreach: return "Foreach";
  case Kind::While: return "While";
  case Kind::Return: return "Return";
  case Kind::Break: return "Break";
  case Kind::Empty: return "Empty";
  case Kind::ExprList: return "ExprList";
  case Kind::Literal: return "Literal";
  case Kind::Name: return "Name";
  case Kind::Unary: return "Unary";
  case Kind::Prefix: return "Prefix";
  case Kind::Postfix: return "Postfix";
  case Kind::Binary: return "Binary";
  case Kind::Assign: return "Assign";
  case Kind::Ternary: return "Ternary";
  case Kind::Paren: return "Paren";
  case Kind::Cast: return "Cast";
  case Kind::Index: return "Index";
  case Kind::Length: return "Length";
  case Kind::NewArray: return "NewArray";
  case Kind::ArrayInit: return "ArrayInit";
  }
  return "?";
}

bool is_expression(Kind k) { return k >= Kind::Literal; }

std::string NodePath::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i)
      os << ',';
    os << steps[i];
  }
  os << ']';
  return os.str();
}

NodePtr make(Kind kind, std::vector<NodePtr> kids, std::string text) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->kids = std::move(kids);
  n->text = std::move(text);
  return n;
}

NodePtr make_literal(LitKind lit, std::string lexeme) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Literal;
  n->lit = lit;
  n->text = std::move(lexeme);
  return n;
}

NodePtr make_name(std::string name) {
  return make(Kind::Name, {}, std::move(name));
}

NodePtr make_binary(std::string op, NodePtr lhs, NodePtr rhs) {
  return make(Kind::Binary, {std::move(lhs), std::move(rhs)}, std::move(op));
}

NodePtr make_unary(std::string op, NodePtr operand) {
  return make(Kind::Unary, {std::move(operand)}, std::move(op));
}

NodePtr make_paren(NodePtr inner) { return make(Kind::Paren, {std::move(inner)}); }

NodePtr make_block(std::vector<NodePtr> stmts) {
  return make(Kind::Block, std::move(stmts));
}

NodePtr make_expr_stmt(NodePtr expr) {
  return make(Kind::ExprStmt, {std::move(expr)});
}

NodePtr make_assign(std::string op, NodePtr target, NodePtr value) {
  return make(Kind::Assign, {std::move(target), std::move(value)},
              std::move(op));
}

NodePtr make_return(NodePtr expr) { return make(Kind::Return, {std::move(expr)}); }

NodePtr make_if(NodePtr cond, NodePtr then_branch, NodePtr else_branch) {
  std::vector<NodePtr> kids{std::move(cond), std::move(then_branch)};
  if (else_branch)
    kids.push_back(std::move(else_branch));
  return make(Kind::If, std::move(kids));
}

NodePtr make_var_decl(Type base, std::vector<NodePtr> declarators,
                      bool is_final) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::VarDecl;
  n->type = base;
  n->flag = is_final;
  n->kids = std::move(declarators);
  return n;
}

NodePtr make_declarator(std::string name, NodePtr init, bool c_array) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Declarator;
  n->text = std::move(name);
  n->flag = c_array;
  if (init)
    n->kids.push_back(std::move(init));
  return n;
}

NodePtr make_cast(Type target, NodePtr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Cast;
  n->type = target;
  n->kids.push_back(std::move(operand));
  return n;
}

NodePtr make_int(long long value) {
  if (value < 0)
    return make_unary("-", make_literal(LitKind::Int, std::to_string(-value)));
  return make_literal(LitKind::Int, std::to_string(value));
}

NodePtr with_kids(const NodePtr &n, std::vector<NodePtr> kids) {
  auto copy = std::make_shared<Node>(*n);
  copy->kids = std::move(kids);
  return copy;
}

NodePtr clone(const NodePtr &n) {
  if (!n)
    return n;
  auto copy = std::make_shared<Node>(*n);
  for (auto &k : copy->kids)
    k = clone(k);
  return copy;
}

bool structurally_equal(const NodePtr &a, const NodePtr &b) {
  if (a.get() == b.get())
    return true;
  if (!a || !b)
    return false;
  if (a->kind != b->kind || a->text != b->text || !(a->type == b->type) ||
      a->flag != b->flag || a->count != b->count ||
      a->kids.size() != b->kids.size())
    return false;
  if (a->kind == Kind::Literal && a->lit != b->lit)
    return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!structurally_equal(a->kids[i], b->kids[i]))
      return false;
  return true;
}

bool structurally_equal(const MethodAst &a, const MethodAst &b) {
  return a.name == b.name && a.return_type == b.return_type &&
         a.params == b.params && structurally_equal(a.body, b.body);
}

std::uint64_t structural_hash(const NodePtr &n) {
  if (!n)
    return 0x9e3779b97f4a7c15ULL;
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  mix(static_cast<std::uint64_t>(n->kind));
  mix(std::hash<std::string>{}(n->text));
  mix(static_cast<std::uint64_t>(n->type.base) * 2 + n->type.array);
  mix(n->flag);
  mix(n->count);
  for (const auto &k : n->kids)
    mix(structural_hash(k));
  return h;
}

const Node *try_resolve(const MethodAst &ast, const NodePath &path) {
  const Node *cur = ast.body.get();
  for (int step : path.steps) {
    if (!cur || step < 0 || static_cast<std::size_t>(step) >= cur->kids.size())
      return nullptr;
    cur = cur->kids[static_cast<std::size_t>(step)].get();
  }
  return cur;
}

const NodePtr &resolve_path(const MethodAst &ast, const NodePath &path) {
  const NodePtr *cur = &ast.body;
  for (int step : path.steps) {
    if (!*cur || step < 0 ||
        static_cast<std::size_t>(step) >= (*cur)->kids.size() ||
        !(*cur)->kids[static_cast<std::size_t>(step)])
      throw Error(ErrorKind::InvalidPath, "invalid path " + path.str());
    cur = &(*cur)->kids[static_cast<std::size_t>(step)];
  }
  return *cur;
}

namespace {
NodePtr replace_rec(const NodePtr &node, const std::vector<int> &steps,
                    std::size_t depth, NodePtr replacement) {
  if (depth == steps.size())
    return replacement;
  auto idx = static_cast<std::size_t>(steps[depth]);
  if (!node || idx >= node->kids.size())
    throw Error(ErrorKind::InvalidPath, "invalid path in replace_at");
  auto kids = node->kids;
  kids[idx] = replace_rec(kids[idx], steps, depth + 1, std::move(replacement));
  return with_kids(node, std::move(kids));
}
} // namespace

MethodAst replace_at(const MethodAst &ast, const NodePath &path,
                     NodePtr replacement) {
  MethodAst out = ast;
  out.body = replace_rec(ast.body, path.steps, 0, std::move(replacement));
  return out;
}

bool is_stmt_list(const Node &n) {
  return n.kind == Kind::Block || n.kind == Kind::Case;
}

std::size_t first_stmt_index(const Node &n) {
  return n.kind == Kind::Case ? n.count : 0;
}

std::vector<std::string> identifiers(const MethodAst &ast) {
  std::set<std::string> out;
  out.insert(ast.name);
  for (const auto &p : ast.params)
    out.insert(p.name);
  walk(ast, [&](const NodePtr &n, const NodePath &) {
    if (n->kind == Kind::Name || n->kind == Kind::Declarator ||
        n->kind == Kind::Foreach)
      out.insert(n->text);
    return true;
  });
  return {out.begin(), out.end()};
}

bool mentions_name(const NodePtr &n, std::string_view name) {
  if (!n)
    return false;
  if ((n->kind == Kind::Name || n->kind == Kind::Declarator ||
       n->kind == Kind::Foreach) &&
      n->text == name)
    return true;
  return std::any_of(n->kids.begin(), n->kids.end(),
                     [&](const NodePtr &k) { return mentions_name(k, name); });
}

} // namespace refdecomp
