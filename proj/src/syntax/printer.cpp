#include "refdecomp/syntax.hpp"

#include <cctype>

namespace refdecomp {

namespace {

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
         c == '"';
}
// Adjacent characters that would lex as a longer operator or a comment.
bool would_merge(char a, char b) {
  static constexpr std::string_view pairs[] = {"++", "--", "+=", "-=", "*=",
                                               "/=", "%=", "==", "!=", "<=",
                                               ">=", "&&", "||", "//", "/*"};
  for (auto p : pairs)
    if (p[0] == a && p[1] == b)
      return true;
  return false;
}

TokenKind literal_token_kind(LitKind k) {
  switch (k) {
  case LitKind::Int: return TokenKind::IntLiteral;
  case LitKind::Long: return TokenKind::LongLiteral;
  case LitKind::Double: return TokenKind::DoubleLiteral;
  case LitKind::Bool: return TokenKind::BoolLiteral;
  case LitKind::String: return TokenKind::StringLiteral;
  }
  return TokenKind::IntLiteral;
}

class Printer {
public:
  explicit Printer(bool want_text) : want_text_(want_text) {}

  std::string text;
  std::vector<Token> tokens;

  void method(const MethodAst &m) {
    type(m.return_type);
    word(TokenKind::Identifier, m.name);
    sep("(", false);
    for (std::size_t i = 0; i < m.params.size(); ++i) {
      if (i)
        sep(",", false);
      const auto &p = m.params[i];
      if (p.c_style_array) {
        type(p.type.element());
        word(TokenKind::Identifier, p.name);
        sep("[", false);
        sep("]", false);
      } else {
        type(p.type);
        word(TokenKind::Identifier, p.name);
      }
    }
    sep(")", false);
    block_body(m.body, 0);
    if (want_text_)
      text.push_back('\n');
  }

  void stmt(const NodePtr &n, int indent) {
    switch (n->kind) {
    case Kind::Block:
      sep("{", true);
      block_contents(*n, 0, indent + 1);
      newline(indent);
      sep("}", false);
      break;
    case Kind::VarDecl:
      var_decl(*n);
      sep(";", false);
      break;
    case Kind::ExprStmt:
      expr(n->kid(0));
      sep(";", false);
      break;
    case Kind::Return:
      word(TokenKind::Keyword, "return");
      expr(n->kid(0));
      sep(";", false);
      break;
    case Kind::Break:
      word(TokenKind::Keyword, "break");
      sep(";", false);
      break;
    case Kind::If:
      if_stmt(*n, indent);
      break;
    case Kind::While:
      word(TokenKind::Keyword, "while");
      sep("(", true);
      expr(n->kid(0));
      sep(")", false);
      body(n->kid(1), indent);
      break;
    case Kind::For: {
      word(TokenKind::Keyword, "for");
      sep("(", true);
      const auto &init = n->kid(0);
      if (init->kind == Kind::VarDecl)
        var_decl(*init);
      else if (init->kind == Kind::ExprList)
        expr_list(*init);
      sep(";", false);
      if (n->kid(1)->kind != Kind::Empty) {
        space_next_ = true;
        expr(n->kid(1));
      }
      sep(";", false);
      if (!n->kid(2)->kids.empty()) {
        space_next_ = true;
        expr_list(*n->kid(2));
      }
      sep(")", false);
      body(n->kid(3), indent);
      break;
    }
    case Kind::Foreach:
      word(TokenKind::Keyword, "for");
      sep("(", true);
      if (n->flag)
        word(TokenKind::Keyword, "final");
      type(n->type);
      word(TokenKind::Identifier, n->text);
      op(":");
      expr(n->kid(0));
      sep(")", false);
      body(n->kid(1), indent);
      break;
    case Kind::Switch: {
      word(TokenKind::Keyword, "switch");
      sep("(", true);
      expr(n->kid(0));
      sep(")", false);
      sep("{", true);
      for (std::size_t i = 1; i < n->size(); ++i) {
        const auto &arm = *n->kid(i);
        if (arm.flag) {
          newline(indent + 1);
          word(TokenKind::Keyword, "default");
          op_tight(":");
        }
        for (std::size_t l = 0; l < arm.count; ++l) {
          newline(indent + 1);
          word(TokenKind::Keyword, "case");
          expr(arm.kid(l));
          op_tight(":");
        }
        block_contents(arm, arm.count, indent + 2);
      }
      newline(indent);
      sep("}", false);
      break;
    }
    default:
      expr(n);
      break;
    }
  }

  void expr(const NodePtr &n) {
    switch (n->kind) {
    case Kind::Literal:
      word(literal_token_kind(n->lit), n->text);
      break;
    case Kind::Name:
      word(TokenKind::Identifier, n->text);
      break;
    case Kind::Unary:
    case Kind::Prefix:
      op(n->text);
      space_next_ = false;
      glue_next_ = true;
      expr(n->kid(0));
      break;
    case Kind::Postfix:
      expr(n->kid(0));
      op_tight(n->text);
      break;
    case Kind::Binary:
    case Kind::Assign:
      expr(n->kid(0));
      op(n->text);
      expr(n->kid(1));
      break;
    case Kind::Ternary:
      expr(n->kid(0));
      op("?");
      expr(n->kid(1));
      op(":");
      expr(n->kid(2));
      break;
    case Kind::Paren:
      sep("(", true);
      expr(n->kid(0));
      sep(")", false);
      break;
    case Kind::Cast:
      sep("(", true);
      type(n->type);
      sep(")", false);
      space_next_ = true;
      expr(n->kid(0));
      break;
    case Kind::Index:
      expr(n->kid(0));
      sep("[", false);
      expr(n->kid(1));
      sep("]", false);
      break;
    case Kind::Length:
      expr(n->kid(0));
      sep(".", false);
      word(TokenKind::Identifier, "length", false);
      break;
    case Kind::NewArray:
      word(TokenKind::Keyword, "new");
      type(n->type);
      sep("[", false);
      expr(n->kid(0));
      sep("]", false);
      break;
    case Kind::ArrayInit:
      word(TokenKind::Keyword, "new");
      type(n->type);
      sep("[", false);
      sep("]", false);
      sep("{", false);
      for (std::size_t i = 0; i < n->size(); ++i) {
        if (i)
          sep(",", false);
        expr(n->kid(i));
      }
      sep("}", false);
      break;
    default:
      break;
    }
  }

private:
  bool want_text_;
  bool space_next_ = false;
  bool glue_next_ = false;

  void emit(TokenKind kind, std::string_view lexeme, bool space) {
    if (want_text_) {
      if (!text.empty() && text.back() != '\n' && text.back() != ' ') {
        char prev = text.back();
        char first = lexeme.front();
        bool need;
        if (would_merge(prev, first) || (word_char(prev) && word_char(first)))
          need = true;
        else if (glue_next_ || prev == '(' || prev == '[')
          need = false;
        else
          need = space || space_next_;
        if (need)
          text.push_back(' ');
      }
      text.append(lexeme);
    }
    space_next_ = false;
    glue_next_ = false;
    tokens.push_back(Token{kind, std::string(lexeme), 0, 0});
  }

  void word(TokenKind kind, std::string_view w, bool space = true) {
    emit(kind, w, space);
  }
  void op(std::string_view o) {
    emit(TokenKind::Operator, o, true);
    space_next_ = true;
  }
  void op_tight(std::string_view o) { emit(TokenKind::Operator, o, false); }
  void sep(std::string_view s, bool space) {
    bool sp = space;
    if (want_text_ && !text.empty() && s == "(" && text.back() == '(')
      sp = false;
    emit(TokenKind::Separator, s, sp);
    if (s == ",")
      space_next_ = true;
  }

  void type(Type t) {
    switch (t.base) {
    case BaseType::Int: word(TokenKind::Keyword, "int"); break;
    case BaseType::Long: word(TokenKind::Keyword, "long"); break;
    case BaseType::Double: word(TokenKind::Keyword, "double"); break;
    case BaseType::Boolean: word(TokenKind::Keyword, "boolean"); break;
    case BaseType::String: word(TokenKind::Keyword, "String"); break;
    }
    if (t.array) {
      sep("[", false);
      sep("]", false);
    }
  }

  void newline(int indent) {
    if (!want_text_)
      return;
    while (!text.empty() && text.back() == ' ')
      text.pop_back();
    text.push_back('\n');
    text.append(static_cast<std::size_t>(indent) * 4, ' ');
  }

  void var_decl(const Node &n) {
    if (n.flag)
      word(TokenKind::Keyword, "final");
    type(n.type);
    for (std::size_t i = 0; i < n.size(); ++i) {
      if (i)
        sep(",", false);
      const auto &d = *n.kid(i);
      word(TokenKind::Identifier, d.text);
      if (d.flag) {
        sep("[", false);
        sep("]", false);
      }
      if (!d.kids.empty()) {
        op("=");
        expr(d.kid(0));
      }
    }
  }

  void expr_list(const Node &n) {
    for (std::size_t i = 0; i < n.size(); ++i) {
      if (i)
        sep(",", false);
      expr(n.kid(i));
    }
  }

  void block_contents(const Node &n, std::size_t first, int indent) {
    for (std::size_t i = first; i < n.size(); ++i) {
      newline(indent);
      stmt(n.kid(i), indent);
    }
  }

  void block_body(const NodePtr &b, int indent) {
    sep("{", true);
    block_contents(*b, 0, indent + 1);
    newline(indent);
    sep("}", false);
  }

  // Control-structure body; returns true when it ended with a closing brace.
  bool body(const NodePtr &b, int indent) {
    if (b->kind == Kind::Block) {
      block_body(b, indent);
      return true;
    }
    newline(indent + 1);
    stmt(b, indent + 1);
    return false;
  }

  void if_stmt(const Node &n, int indent) {
    word(TokenKind::Keyword, "if");
    sep("(", true);
    expr(n.kid(0));
    sep(")", false);
    bool braced = body(n.kid(1), indent);
    if (n.size() < 3)
      return;
    if (!braced)
      newline(indent);
    word(TokenKind::Keyword, "else");
    const auto &e = n.kid(2);
    if (e->kind == Kind::If)
      if_stmt(*e, indent);
    else
      body(e, indent);
  }
};

} // namespace

std::string print_method(const MethodAst &ast) {
  Printer p(true);
  p.method(ast);
  return std::move(p.text);
}

std::string print_node(const NodePtr &node) {
  Printer p(true);
  if (is_expression(node->kind))
    p.expr(node);
  else
    p.stmt(node, 0);
  return std::move(p.text);
}

std::vector<Token> method_tokens(const MethodAst &ast) {
  Printer p(false);
  p.method(ast);
  return std::move(p.tokens);
}

} // namespace refdecomp
