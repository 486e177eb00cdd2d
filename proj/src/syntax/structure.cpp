#include "refdecomp/syntax.hpp"

#include <algorithm>

namespace refdecomp {

int precedence(const Node &e) {
  switch (e.kind) {
  case Kind::Assign:
    return 1;
  case Kind::Ternary:
    return 2;
  case Kind::Binary: {
    const auto &op = e.text;
    if (op == "||") return 3;
    if (op == "&&") return 4;
    if (op == "==" || op == "!=") return 5;
    if (op == "<" || op == ">" || op == "<=" || op == ">=") return 6;
    if (op == "+" || op == "-") return 7;
    return 8;
  }
  case Kind::Unary:
  case Kind::Prefix:
  case Kind::Cast:
    return 9;
  case Kind::Postfix:
  case Kind::Index:
  case Kind::Length:
  case Kind::NewArray:
  case Kind::ArrayInit:
    return 10;
  default:
    return 11;
  }
}

bool needs_paren(const Node &parent, std::size_t slot, const Node &child) {
  if (child.kind == Kind::Paren || !is_expression(child.kind))
    return false;
  int pc = precedence(child);
  switch (parent.kind) {
  case Kind::Binary: {
    int p = precedence(parent);
    return slot == 0 ? pc < p : pc <= p;
  }
  case Kind::Unary:
  case Kind::Prefix:
  case Kind::Cast:
    return pc < 9;
  case Kind::Postfix:
    return pc < 10;
  case Kind::Index:
  case Kind::Length:
    if (slot != 0)
      return false;
    return pc < 10 || child.kind == Kind::NewArray ||
           child.kind == Kind::ArrayInit;
  case Kind::Ternary:
    return slot == 0 ? pc <= 2 : pc < 2;
  default:
    return false;
  }
}

NodePtr paren_if_needed(const Node &parent, std::size_t slot, NodePtr child) {
  if (child && needs_paren(parent, slot, *child))
    return make_paren(std::move(child));
  return child;
}

NodePtr make_wrapped(Kind kind, std::string text, std::vector<NodePtr> kids,
                     Type type) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->text = std::move(text);
  n->type = type;
  n->kids = std::move(kids);
  for (std::size_t i = 0; i < n->kids.size(); ++i)
    n->kids[i] = paren_if_needed(*n, i, n->kids[i]);
  return n;
}

NodePtr strip_redundant_paren(const Node &parent, std::size_t slot,
                              NodePtr child) {
  if (child && child->kind == Kind::Paren &&
      !needs_paren(parent, slot, *child->kid(0)))
    return child->kid(0);
  return child;
}

namespace {

bool ends_with_open_if(const NodePtr &s) {
  switch (s->kind) {
  case Kind::If:
    return s->size() < 3 || ends_with_open_if(s->kid(2));
  case Kind::While:
  case Kind::Foreach:
    return ends_with_open_if(s->kid(1));
  case Kind::For:
    return ends_with_open_if(s->kid(3));
  default:
    return false;
  }
}

bool well_formed_node(const NodePtr &n) {
  for (std::size_t i = 0; i < n->size(); ++i) {
    const auto &k = n->kid(i);
    if (!k)
      return false;
    if (needs_paren(*n, i, *k))
      return false;
  }
  switch (n->kind) {
  case Kind::If:
    if (n->size() == 3 && ends_with_open_if(n->kid(1)))
      return false;
    break;
  case Kind::Assign:
  case Kind::Prefix:
  case Kind::Postfix:
    if (n->kid(0)->kind != Kind::Name && n->kid(0)->kind != Kind::Index)
      return false;
    break;
  default:
    break;
  }
  return std::all_of(n->kids.begin(), n->kids.end(), well_formed_node);
}

bool contains_break_for(const NodePtr &n) {
  if (n->kind == Kind::Break)
    return true;
  if (n->kind == Kind::Switch || n->kind == Kind::While || n->kind == Kind::For ||
      n->kind == Kind::Foreach)
    return false;
  if (is_expression(n->kind))
    return false;
  return std::any_of(n->kids.begin(), n->kids.end(), [](const NodePtr &k) {
    return k && contains_break_for(k);
  });
}

bool is_true_literal(const NodePtr &n) {
  return n->kind == Kind::Literal && n->lit == LitKind::Bool && n->text == "true";
}

bool list_completes(const Node &list, std::size_t first) {
  for (std::size_t i = first; i < list.size(); ++i)
    if (!can_complete_normally(list.kid(i)))
      return false;
  return true;
}

} // namespace

bool well_formed(const MethodAst &ast) { return well_formed_node(ast.body); }

bool can_complete_normally(const NodePtr &s) {
  switch (s->kind) {
  case Kind::Return:
  case Kind::Break:
    return false;
  case Kind::Block:
    return list_completes(*s, 0);
  case Kind::If:
    if (s->size() < 3)
      return true;
    return can_complete_normally(s->kid(1)) || can_complete_normally(s->kid(2));
  case Kind::While:
    return !is_true_literal(s->kid(0)) || contains_break_for(s->kid(1));
  case Kind::For:
    return (s->kid(1)->kind != Kind::Empty && !is_true_literal(s->kid(1))) ||
           contains_break_for(s->kid(3));
  case Kind::Switch: {
    bool has_default = false;
    for (std::size_t i = 1; i < s->size(); ++i) {
      const auto &arm = *s->kid(i);
      has_default = has_default || arm.flag;
      for (std::size_t k = arm.count; k < arm.size(); ++k)
        if (contains_break_for(arm.kid(k)))
          return true;
    }
    if (!has_default || s->size() == 1)
      return true;
    const auto &last = *s->kids.back();
    return list_completes(last, last.count);
  }
  default:
    return true;
  }
}

} // namespace refdecomp
