#include "refdecomp/error.hpp"
#include "refdecomp/syntax.hpp"

#include <map>
#include <set>

namespace refdecomp {

Type TypeInfo::type_of(const Node *expr) const {
  auto it = expr_types.find(expr);
  if (it == expr_types.end())
    throw Error(ErrorKind::Type, "expression has no recorded type");
  return it->second;
}

Type TypeInfo::type_of(const NodePtr &expr) const { return type_of(expr.get()); }

int TypeInfo::symbol_of(const Node *n) const {
  auto it = symbols.find(n);
  return it == symbols.end() ? -1 : it->second;
}

namespace {

bool assignable(Type from, Type to) {
  if (from == to)
    return true;
  if (from.array || to.array)
    return false;
  if (from.base == BaseType::Int)
    return to.base == BaseType::Long || to.base == BaseType::Double;
  if (from.base == BaseType::Long)
    return to.base == BaseType::Double;
  return false;
}

Type promote(Type a, Type b) {
  if (a.base == BaseType::Double || b.base == BaseType::Double)
    return Type::double_();
  if (a.base == BaseType::Long || b.base == BaseType::Long)
    return Type::long_();
  return Type::int_();
}

class Checker {
public:
  explicit Checker(const MethodAst &m) : m_(m) {}

  TypeInfo run() {
    scopes_.emplace_back();
    for (const auto &p : m_.params)
      declare_symbol(p.name, p.type, true, false, nullptr);
    stmt(m_.body);
    if (can_complete_normally(m_.body))
      fail("missing return statement");
    return std::move(info_);
  }

private:
  const MethodAst &m_;
  TypeInfo info_;
  std::vector<std::map<std::string, int, std::less<>>> scopes_;
  std::vector<bool> symbol_final_;
  std::vector<int> path_;
  std::vector<bool> break_ok_{false};

  [[noreturn]] void fail(const std::string &msg) const {
    NodePath p{path_};
    throw Error(ErrorKind::Type, "at " + p.str() + ": " + msg);
  }

  int lookup(std::string_view name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end())
        return f->second;
    }
    return -1;
  }

  int declare_symbol(const std::string &name, Type t, bool is_param,
                     bool is_final, const Node *node) {
    if (lookup(name) >= 0)
      fail("variable '" + name + "' is already defined in an enclosing scope");
    int id = static_cast<int>(info_.symbol_names.size());
    info_.symbol_names.push_back(name);
    info_.symbol_types.push_back(t);
    info_.symbol_is_param.push_back(is_param);
    symbol_final_.push_back(is_final);
    scopes_.back().emplace(name, id);
    if (node)
      info_.symbols[node] = id;
    return id;
  }

  template <typename Fn> auto at(std::size_t i, Fn &&fn) {
    path_.push_back(static_cast<int>(i));
    struct Pop {
      std::vector<int> &p;
      ~Pop() { p.pop_back(); }
    } pop{path_};
    return fn();
  }

  void scoped_stmt(const NodePtr &n, std::size_t slot) {
    if (n->kind == Kind::VarDecl)
      at(slot, [&] { fail("declaration is not allowed as a sub-statement"); });
    scopes_.emplace_back();
    at(slot, [&] { stmt(n); });
    scopes_.pop_back();
  }

  void require(Type got, Type want, const char *what) {
    if (!(got == want))
      fail(std::string(what) + ": expected " + to_string(want) + ", got " +
           to_string(got));
  }

  void stmt(const NodePtr &n) {
    switch (n->kind) {
    case Kind::Block:
      scopes_.emplace_back();
      for (std::size_t i = 0; i < n->size(); ++i)
        at(i, [&] { stmt(n->kid(i)); });
      scopes_.pop_back();
      break;
    case Kind::VarDecl:
      var_decl(*n);
      break;
    case Kind::ExprStmt: {
      auto k = n->kid(0)->kind;
      if (k != Kind::Assign && k != Kind::Prefix && k != Kind::Postfix)
        fail("not a statement");
      at(0, [&] { expr(n->kid(0)); });
      break;
    }
    case Kind::If:
      require(at(0, [&] { return expr(n->kid(0)); }), Type::boolean(),
              "if condition");
      scoped_stmt(n->kid(1), 1);
      if (n->size() > 2)
        scoped_stmt(n->kid(2), 2);
      break;
    case Kind::While:
      require(at(0, [&] { return expr(n->kid(0)); }), Type::boolean(),
              "while condition");
      break_ok_.push_back(false);
      scoped_stmt(n->kid(1), 1);
      break_ok_.pop_back();
      break;
    case Kind::For: {
      scopes_.emplace_back();
      const auto &init = n->kid(0);
      if (init->kind == Kind::VarDecl)
        at(0, [&] { var_decl(*init); });
      else if (init->kind == Kind::ExprList)
        at(0, [&] { stmt_exprs(*init); });
      if (n->kid(1)->kind != Kind::Empty)
        require(at(1, [&] { return expr(n->kid(1)); }), Type::boolean(),
                "for condition");
      at(2, [&] { stmt_exprs(*n->kid(2)); });
      break_ok_.push_back(false);
      scoped_stmt(n->kid(3), 3);
      break_ok_.pop_back();
      scopes_.pop_back();
      break;
    }
    case Kind::Foreach: {
      Type arr = at(0, [&] { return expr(n->kid(0)); });
      if (!arr.array)
        fail("foreach over a non-array");
      if (n->type.array || !(n->type == arr.element()))
        fail("foreach variable type must match the element type");
      scopes_.emplace_back();
      declare_symbol(n->text, n->type, false, n->flag, n.get());
      break_ok_.push_back(false);
      scoped_stmt(n->kid(1), 1);
      break_ok_.pop_back();
      scopes_.pop_back();
      break;
    }
    case Kind::Return: {
      Type t = at(0, [&] { return expr(n->kid(0)); });
      if (!assignable(t, m_.return_type))
        fail("cannot return " + to_string(t) + " from a method returning " +
             to_string(m_.return_type));
      break;
    }
    case Kind::Break:
      if (!break_ok_.back())
        fail("break outside switch");
      break;
    case Kind::Switch:
      switch_stmt(*n);
      break;
    default:
      fail(std::string("unexpected ") + to_string(n->kind) + " in statement position");
    }
  }

  void stmt_exprs(const Node &list) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      auto k = list.kid(i)->kind;
      if (k != Kind::Assign && k != Kind::Prefix && k != Kind::Postfix)
        at(i, [&] { fail("not a statement expression"); });
      at(i, [&] { expr(list.kid(i)); });
    }
  }

  void var_decl(const Node &n) {
    if (n.kids.empty())
      fail("empty declaration");
    for (std::size_t i = 0; i < n.size(); ++i) {
      at(i, [&] {
        const auto &d = n.kid(i);
        Type t = n.type;
        if (d->flag) {
          if (t.array)
            fail("multi-dimensional arrays are not supported");
          t = t.as_array();
        }
        if (!d->kids.empty()) {
          Type it = at(0, [&] { return expr(d->kid(0)); });
          if (!assignable(it, t))
            fail("cannot initialize " + to_string(t) + " with " + to_string(it));
        }
        declare_symbol(d->text, t, false, n.flag, d.get());
      });
    }
  }

  std::string label_key(const Node &label, Type scrutinee) {
    if (label.kind == Kind::Literal) {
      if (scrutinee.is(BaseType::String) && label.lit == LitKind::String)
        return "s" + string_literal_value(label.text);
      if (scrutinee.is(BaseType::Int) && label.lit == LitKind::Int) {
        auto v = integer_literal_value(label.text);
        long long value = static_cast<std::int32_t>(static_cast<std::uint32_t>(*v));
        return "i" + std::to_string(value);
      }
    }
    if (label.kind == Kind::Unary && label.text == "-" &&
        label.kid(0)->kind == Kind::Literal && label.kid(0)->lit == LitKind::Int &&
        scrutinee.is(BaseType::Int)) {
      auto v = integer_literal_value(label.kid(0)->text);
      long long value = -static_cast<long long>(*v);
      return "i" + std::to_string(value);
    }
    fail("case label must be a constant matching the switch type");
  }

  void switch_stmt(const Node &n) {
    Type s = at(0, [&] { return expr(n.kid(0)); });
    if (!s.is(BaseType::Int) && !s.is(BaseType::String))
      fail("switch scrutinee must be int or String");
    std::set<std::string> seen;
    bool has_default = false;
    for (std::size_t i = 1; i < n.size(); ++i) {
      at(i, [&] {
        const auto &arm = *n.kid(i);
        if (arm.kind != Kind::Case)
          fail("malformed switch arm");
        if (arm.flag) {
          if (has_default)
            fail("duplicate default label");
          has_default = true;
        } else if (arm.count == 0) {
          fail("switch arm without labels");
        }
        for (std::size_t l = 0; l < arm.count; ++l) {
          at(l, [&] {
            expr(arm.kid(l));
            if (!seen.insert(label_key(*arm.kid(l), s)).second)
              fail("duplicate case label");
          });
        }
        scopes_.emplace_back();
        break_ok_.push_back(true);
        for (std::size_t k = arm.count; k < arm.size(); ++k)
          at(k, [&] { stmt(arm.kid(k)); });
        break_ok_.pop_back();
        scopes_.pop_back();
      });
    }
  }

  Type lvalue(const NodePtr &n) {
    if (n->kind == Kind::Name) {
      Type t = expr(n);
      int sym = info_.symbols.at(n.get());
      if (symbol_final_[static_cast<std::size_t>(sym)])
        fail("cannot assign to final variable '" + n->text + "'");
      return t;
    }
    if (n->kind == Kind::Index)
      return expr(n);
    fail("invalid assignment target");
  }

  Type literal(const Node &n, bool negated) {
    switch (n.lit) {
    case LitKind::Int: {
      auto v = integer_literal_value(n.text);
      if (!v)
        fail("malformed int literal");
      bool hex = n.text.size() > 1 && (n.text[1] == 'x' || n.text[1] == 'X');
      if (hex ? *v > 0xFFFFFFFFULL : *v > (negated ? 2147483648ULL : 2147483647ULL))
        fail("int literal out of range: " + n.text);
      return Type::int_();
    }
    case LitKind::Long: {
      auto v = integer_literal_value(n.text);
      if (!v)
        fail("malformed long literal");
      bool hex = n.text.size() > 1 && (n.text[1] == 'x' || n.text[1] == 'X');
      if (!hex && *v > (negated ? 9223372036854775808ULL : 9223372036854775807ULL))
        fail("long literal out of range: " + n.text);
      return Type::long_();
    }
    case LitKind::Double:
      return Type::double_();
    case LitKind::Bool:
      return Type::boolean();
    case LitKind::String:
      return Type::string();
    }
    return Type::int_();
  }

  Type expr(const NodePtr &n) {
    Type t = expr_inner(n);
    info_.expr_types[n.get()] = t;
    return t;
  }

  Type sub(const NodePtr &n, std::size_t i) {
    return at(i, [&] { return expr(n->kid(i)); });
  }

  Type expr_inner(const NodePtr &n) {
    switch (n->kind) {
    case Kind::Literal:
      return literal(*n, false);
    case Kind::Name: {
      int sym = lookup(n->text);
      if (sym < 0)
        fail("undeclared variable '" + n->text + "'");
      info_.symbols[n.get()] = sym;
      return info_.symbol_types[static_cast<std::size_t>(sym)];
    }
    case Kind::Unary: {
      if (n->text == "-" && n->kid(0)->kind == Kind::Literal) {
        Type t = at(0, [&] { return literal(*n->kid(0), true); });
        info_.expr_types[n->kid(0).get()] = t;
        if (!t.is_numeric())
          fail("unary minus on non-numeric operand");
        return t;
      }
      Type t = sub(n, 0);
      if (n->text == "!") {
        require(t, Type::boolean(), "operand of '!'");
        return t;
      }
      if (!t.is_numeric())
        fail("unary minus on non-numeric operand");
      return t;
    }
    case Kind::Prefix:
    case Kind::Postfix: {
      Type t = at(0, [&] { return lvalue(n->kid(0)); });
      if (!t.is_numeric())
        fail("increment of non-numeric variable");
      return t;
    }
    case Kind::Binary: {
      Type a = sub(n, 0);
      Type b = sub(n, 1);
      const auto &op = n->text;
      if (op == "&&" || op == "||") {
        require(a, Type::boolean(), "logical operand");
        require(b, Type::boolean(), "logical operand");
        return Type::boolean();
      }
      if (op == "+" && (a.is(BaseType::String) || b.is(BaseType::String))) {
        if (a.array || b.array)
          fail("string concatenation with an array");
        return Type::string();
      }
      if (op == "==" || op == "!=") {
        if ((a.is_numeric() && b.is_numeric()) || (a == b && !a.array))
          return Type::boolean();
        fail("incomparable operands of '" + op + "'");
      }
      if (!a.is_numeric() || !b.is_numeric())
        fail("non-numeric operands of '" + op + "'");
      if (op == "<" || op == ">" || op == "<=" || op == ">=")
        return Type::boolean();
      return promote(a, b);
    }
    case Kind::Assign: {
      Type t = at(0, [&] { return lvalue(n->kid(0)); });
      Type v = sub(n, 1);
      if (n->text == "=") {
        if (!assignable(v, t))
          fail("cannot assign " + to_string(v) + " to " + to_string(t));
      } else if (n->text == "+=" && t.is(BaseType::String)) {
        if (v.array)
          fail("string concatenation with an array");
      } else if (!t.is_numeric() || !v.is_numeric()) {
        fail("compound assignment on non-numeric operands");
      }
      return t;
    }
    case Kind::Ternary: {
      require(sub(n, 0), Type::boolean(), "ternary condition");
      Type a = sub(n, 1);
      Type b = sub(n, 2);
      if (a.is_numeric() && b.is_numeric())
        return promote(a, b);
      if (a == b)
        return a;
      fail("incompatible ternary branches");
    }
    case Kind::Paren:
      return sub(n, 0);
    case Kind::Cast: {
      Type t = sub(n, 0);
      if (!n->type.is_numeric() || !t.is_numeric())
        fail("only numeric casts are supported");
      return n->type;
    }
    case Kind::Index: {
      Type a = sub(n, 0);
      Type i = sub(n, 1);
      if (!a.array)
        fail("indexing a non-array");
      require(i, Type::int_(), "array index");
      return a.element();
    }
    case Kind::Length: {
      Type a = sub(n, 0);
      if (!a.array)
        fail("length of a non-array");
      return Type::int_();
    }
    case Kind::NewArray: {
      require(sub(n, 0), Type::int_(), "array size");
      if (n->type.array)
        fail("multi-dimensional arrays are not supported");
      return n->type.as_array();
    }
    case Kind::ArrayInit: {
      if (n->type.array)
        fail("multi-dimensional arrays are not supported");
      for (std::size_t i = 0; i < n->size(); ++i)
        if (!assignable(sub(n, i), n->type))
          fail("array element type mismatch");
      return n->type.as_array();
    }
    default:
      fail(std::string("unexpected ") + to_string(n->kind) + " in expression");
    }
  }
};

} // namespace

TypeInfo type_check(const MethodAst &ast) {
  if (!ast.body || ast.body->kind != Kind::Block)
    throw Error(ErrorKind::Type, "method body must be a block");
  return Checker(ast).run();
}

bool type_checks(const MethodAst &ast) {
  try {
    type_check(ast);
    return true;
  } catch (const Error &) {
    return false;
  }
}

} // namespace refdecomp
