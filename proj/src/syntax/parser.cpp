#include "refdecomp/error.hpp"
#include "refdecomp/syntax.hpp"

namespace refdecomp {

namespace {

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  MethodAst parse() {
    MethodAst m;
    m.return_type = parse_type();
    m.name = expect_identifier("method name");
    expect("(");
    if (!at(")")) {
      do {
        Param p;
        p.type = parse_type();
        p.name = expect_identifier("parameter name");
        if (at("[")) {
          next();
          expect("]");
          if (p.type.array)
            fail("multi-dimensional arrays are not supported");
          p.type = p.type.as_array();
          p.c_style_array = true;
        }
        m.params.push_back(std::move(p));
      } while (accept(","));
    }
    expect(")");
    m.body = parse_block();
    if (pos_ < toks_.size())
      fail("expected end of input");
    return m;
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token *peek(std::size_t ahead = 0) const {
    return pos_ + ahead < toks_.size() ? &toks_[pos_ + ahead] : nullptr;
  }
  bool at(std::string_view lexeme, std::size_t ahead = 0) const {
    auto *t = peek(ahead);
    return t && t->lexeme == lexeme &&
           (t->kind == TokenKind::Operator || t->kind == TokenKind::Separator ||
            t->kind == TokenKind::Keyword);
  }
  const Token &next() {
    if (pos_ >= toks_.size())
      fail("unexpected end of input");
    return toks_[pos_++];
  }
  bool accept(std::string_view lexeme) {
    if (at(lexeme)) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(std::string_view lexeme) {
    if (!accept(lexeme))
      fail("expected '" + std::string(lexeme) + "'");
  }
  std::string expect_identifier(const char *what) {
    auto *t = peek();
    if (!t || t->kind != TokenKind::Identifier)
      fail(std::string("expected ") + what);
    return next().lexeme;
  }
  [[noreturn]] void fail(const std::string &msg) const {
    std::string where = "end of input";
    if (auto *t = peek())
      where = std::to_string(t->line) + ":" + std::to_string(t->column) +
              " near '" + t->lexeme + "'";
    throw Error(ErrorKind::Parse, where + ": " + msg);
  }

  bool at_type() const {
    auto *t = peek();
    return t && t->kind == TokenKind::Keyword && is_type_keyword(t->lexeme);
  }

  Type parse_type() {
    auto *t = peek();
    if (!t || t->kind != TokenKind::Keyword || !is_type_keyword(t->lexeme))
      fail("expected type");
    std::string w = next().lexeme;
    Type ty;
    if (w == "int") ty.base = BaseType::Int;
    else if (w == "long") ty.base = BaseType::Long;
    else if (w == "double") ty.base = BaseType::Double;
    else if (w == "boolean") ty.base = BaseType::Boolean;
    else ty.base = BaseType::String;
    if (at("[") && at("]", 1)) {
      pos_ += 2;
      ty.array = true;
      if (at("[") && at("]", 1))
        fail("multi-dimensional arrays are not supported");
    }
    return ty;
  }

  NodePtr parse_block() {
    expect("{");
    std::vector<NodePtr> stmts;
    while (!at("}")) {
      if (!peek())
        fail("expected '}'");
      stmts.push_back(parse_statement());
    }
    expect("}");
    return make_block(std::move(stmts));
  }

  NodePtr parse_var_decl_rest(Type base, bool is_final) {
    std::vector<NodePtr> decls;
    do {
      std::string name = expect_identifier("variable name");
      bool c_array = false;
      if (at("[")) {
        next();
        expect("]");
        if (base.array)
          fail("multi-dimensional arrays are not supported");
        c_array = true;
      }
      NodePtr init;
      if (accept("="))
        init = parse_expression();
      decls.push_back(make_declarator(std::move(name), std::move(init), c_array));
    } while (accept(","));
    return make_var_decl(base, std::move(decls), is_final);
  }

  NodePtr parse_statement() {
    if (at("{"))
      return parse_block();
    if (at("final") || at_type()) {
      bool is_final = accept("final");
      Type base = parse_type();
      auto decl = parse_var_decl_rest(base, is_final);
      expect(";");
      return decl;
    }
    if (accept("if")) {
      expect("(");
      auto cond = parse_expression();
      expect(")");
      auto then_branch = parse_statement();
      NodePtr else_branch;
      if (accept("else"))
        else_branch = parse_statement();
      return make_if(std::move(cond), std::move(then_branch),
                     std::move(else_branch));
    }
    if (accept("while")) {
      expect("(");
      auto cond = parse_expression();
      expect(")");
      auto body = parse_statement();
      return make(Kind::While, {std::move(cond), std::move(body)});
    }
    if (accept("for"))
      return parse_for();
    if (accept("switch"))
      return parse_switch();
    if (accept("return")) {
      auto e = parse_expression();
      expect(";");
      return make_return(std::move(e));
    }
    if (accept("break")) {
      expect(";");
      return make(Kind::Break);
    }
    auto e = parse_expression();
    expect(";");
    return make_expr_stmt(std::move(e));
  }

  NodePtr parse_expr_list(std::string_view terminator) {
    std::vector<NodePtr> items;
    if (!at(terminator)) {
      do
        items.push_back(parse_expression());
      while (accept(","));
    }
    return make(Kind::ExprList, std::move(items));
  }

  NodePtr parse_for() {
    expect("(");
    NodePtr init;
    if (at("final") || at_type()) {
      bool is_final = accept("final");
      Type base = parse_type();
      if (peek() && peek()->kind == TokenKind::Identifier && at(":", 1)) {
        std::string var = next().lexeme;
        next();
        auto array = parse_expression();
        expect(")");
        auto body = parse_statement();
        auto n = std::make_shared<Node>();
        n->kind = Kind::Foreach;
        n->text = std::move(var);
        n->type = base;
        n->flag = is_final;
        n->kids = {std::move(array), std::move(body)};
        return n;
      }
      init = parse_var_decl_rest(base, is_final);
    } else if (at(";")) {
      init = make(Kind::Empty);
    } else {
      init = parse_expr_list(";");
    }
    expect(";");
    NodePtr cond = at(";") ? make(Kind::Empty) : parse_expression();
    expect(";");
    auto update = parse_expr_list(")");
    expect(")");
    auto body = parse_statement();
    return make(Kind::For, {std::move(init), std::move(cond), std::move(update),
                            std::move(body)});
  }

  NodePtr parse_switch() {
    expect("(");
    auto scrutinee = parse_expression();
    expect(")");
    expect("{");
    std::vector<NodePtr> kids{std::move(scrutinee)};
    while (!at("}")) {
      auto arm = std::make_shared<Node>();
      arm->kind = Kind::Case;
      if (accept("default")) {
        expect(":");
        arm->flag = true;
      } else {
        if (!at("case"))
          fail("expected 'case' or 'default'");
        while (accept("case")) {
          arm->kids.push_back(parse_unary());
          ++arm->count;
          expect(":");
        }
        if (at("default"))
          fail("'default' cannot share an arm with case labels");
      }
      while (!at("case") && !at("default") && !at("}")) {
        if (!peek())
          fail("expected '}'");
        arm->kids.push_back(parse_statement());
      }
      kids.push_back(std::move(arm));
    }
    expect("}");
    return make(Kind::Switch, std::move(kids));
  }

  // ---- expressions ----

  NodePtr parse_expression() {
    auto lhs = parse_ternary();
    static constexpr std::string_view ops[] = {"=", "+=", "-=", "*=", "/=", "%="};
    for (auto op : ops) {
      if (at(op)) {
        if (lhs->kind != Kind::Name && lhs->kind != Kind::Index)
          fail("invalid assignment target");
        next();
        auto rhs = parse_expression();
        return make_assign(std::string(op), std::move(lhs), std::move(rhs));
      }
    }
    return lhs;
  }

  NodePtr parse_ternary() {
    auto cond = parse_binary(0);
    if (accept("?")) {
      auto a = parse_expression();
      expect(":");
      auto b = parse_ternary();
      return make(Kind::Ternary, {std::move(cond), std::move(a), std::move(b)});
    }
    return cond;
  }

  static int binary_level(std::string_view op) {
    if (op == "||") return 0;
    if (op == "&&") return 1;
    if (op == "==" || op == "!=") return 2;
    if (op == "<" || op == ">" || op == "<=" || op == ">=") return 3;
    if (op == "+" || op == "-") return 4;
    if (op == "*" || op == "/" || op == "%") return 5;
    return -1;
  }

  NodePtr parse_binary(int level) {
    if (level > 5)
      return parse_unary();
    auto lhs = parse_binary(level + 1);
    while (auto *t = peek()) {
      if (t->kind != TokenKind::Operator || binary_level(t->lexeme) != level)
        break;
      std::string op = next().lexeme;
      auto rhs = parse_binary(level + 1);
      lhs = make_binary(std::move(op), std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  NodePtr parse_unary() {
    if (at("!") || at("-")) {
      std::string op = next().lexeme;
      return make_unary(std::move(op), parse_unary());
    }
    if (at("++") || at("--")) {
      std::string op = next().lexeme;
      auto target = parse_unary();
      return make(Kind::Prefix, {std::move(target)}, std::move(op));
    }
    if (at("(") && peek(1) && peek(1)->kind == TokenKind::Keyword &&
        is_type_keyword(peek(1)->lexeme)) {
      std::size_t save = pos_;
      next();
      Type t = parse_type();
      if (accept(")"))
        return make_cast(t, parse_unary());
      pos_ = save;
    }
    return parse_postfix();
  }

  NodePtr parse_postfix() {
    auto e = parse_primary();
    while (true) {
      if (accept("[")) {
        auto idx = parse_expression();
        expect("]");
        e = make(Kind::Index, {std::move(e), std::move(idx)});
      } else if (at(".")) {
        next();
        auto *t = peek();
        if (!t || t->kind != TokenKind::Identifier || t->lexeme != "length")
          fail("only '.length' member access is supported");
        next();
        e = make(Kind::Length, {std::move(e)});
      } else if (at("++") || at("--")) {
        std::string op = next().lexeme;
        e = make(Kind::Postfix, {std::move(e)}, std::move(op));
      } else {
        return e;
      }
    }
  }

  NodePtr parse_primary() {
    auto *t = peek();
    if (!t)
      fail("expected expression");
    switch (t->kind) {
    case TokenKind::IntLiteral:
      return make_literal(LitKind::Int, next().lexeme);
    case TokenKind::LongLiteral:
      return make_literal(LitKind::Long, next().lexeme);
    case TokenKind::DoubleLiteral:
      return make_literal(LitKind::Double, next().lexeme);
    case TokenKind::BoolLiteral:
      return make_literal(LitKind::Bool, next().lexeme);
    case TokenKind::StringLiteral:
      return make_literal(LitKind::String, next().lexeme);
    case TokenKind::Identifier:
      return make_name(next().lexeme);
    default:
      break;
    }
    if (accept("(")) {
      auto inner = parse_expression();
      expect(")");
      return make_paren(std::move(inner));
    }
    if (accept("new")) {
      auto *tt = peek();
      if (!tt || tt->kind != TokenKind::Keyword || !is_type_keyword(tt->lexeme))
        fail("expected element type after 'new'");
      Type elem;
      {
        std::string w = next().lexeme;
        if (w == "int") elem.base = BaseType::Int;
        else if (w == "long") elem.base = BaseType::Long;
        else if (w == "double") elem.base = BaseType::Double;
        else if (w == "boolean") elem.base = BaseType::Boolean;
        else elem.base = BaseType::String;
      }
      expect("[");
      if (accept("]")) {
        expect("{");
        std::vector<NodePtr> elems;
        if (!at("}")) {
          do
            elems.push_back(parse_expression());
          while (accept(","));
        }
        expect("}");
        auto n = make(Kind::ArrayInit, std::move(elems));
        auto m = std::make_shared<Node>(*n);
        m->type = elem;
        return m;
      }
      auto size = parse_expression();
      expect("]");
      auto n = std::make_shared<Node>();
      n->kind = Kind::NewArray;
      n->type = elem;
      n->kids.push_back(std::move(size));
      return n;
    }
    fail("expected expression");
  }
};

} // namespace

MethodAst parse_method_unchecked(std::string_view source) {
  Parser p(tokenize(source));
  return p.parse();
}

MethodAst parse_method(std::string_view source) {
  auto m = parse_method_unchecked(source);
  type_check(m);
  return m;
}

} // namespace refdecomp
