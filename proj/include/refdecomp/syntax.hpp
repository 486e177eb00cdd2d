#pragma once

#include "refdecomp/ast.hpp"

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace refdecomp {

enum class TokenKind : std::uint8_t {
  Identifier,
  Keyword,
  IntLiteral,
  LongLiteral,
  DoubleLiteral,
  BoolLiteral,
  StringLiteral,
  Operator,
  Separator,
};

const char *to_string(TokenKind k);

struct Token {
  TokenKind kind = TokenKind::Identifier;
  std::string lexeme;
  int line = 0;
  int column = 0;

  /// Tokens compare by (kind, lexeme); positions are informational.
  friend bool operator==(const Token &a, const Token &b) {
    return a.kind == b.kind && a.lexeme == b.lexeme;
  }
};

/// Lexes MiniJ source. Comments and whitespace are dropped.
std::vector<Token> tokenize(std::string_view source);

bool is_keyword(std::string_view word);
bool is_type_keyword(std::string_view word);

/// Numeric value of an int/long literal lexeme (decimal, 0x hex,
/// underscore-grouped, optional L suffix). Empty when malformed.
std::optional<std::uint64_t> integer_literal_value(std::string_view lexeme);
std::optional<double> double_literal_value(std::string_view lexeme);
/// Decodes a quoted string literal lexeme.
std::string string_literal_value(std::string_view lexeme);
std::string quote_string(std::string_view value);

/// Parses and type-checks one method.
MethodAst parse_method(std::string_view source);
/// Parses without type checking.
MethodAst parse_method_unchecked(std::string_view source);

/// Canonical formatting; deterministic.
std::string print_method(const MethodAst &ast);
std::string print_node(const NodePtr &node);
/// Same tokens as tokenize(print_method(ast)) without the text round trip.
std::vector<Token> method_tokens(const MethodAst &ast);

// ---- typing ---------------------------------------------------------------

/// Static facts computed by the type checker for one tree.
struct TypeInfo {
  std::unordered_map<const Node *, Type> expr_types;
  /// Name / Declarator / Foreach node -> symbol id. Params are symbols
  /// 0..arity-1.
  std::unordered_map<const Node *, int> symbols;
  std::vector<std::string> symbol_names;
  std::vector<Type> symbol_types;
  std::vector<bool> symbol_is_param;

  Type type_of(const NodePtr &expr) const;
  Type type_of(const Node *expr) const;
  int symbol_of(const Node *n) const;
};

/// Throws Error(Type) with the offending node path.
TypeInfo type_check(const MethodAst &ast);
bool type_checks(const MethodAst &ast);

// ---- structural validity ---------------------------------------------------

int precedence(const Node &expr);
/// Whether `child` must be parenthesized at child slot `slot` of `parent`.
bool needs_paren(const Node &parent, std::size_t slot, const Node &child);
/// Wraps `child` in a Paren node when required at the given slot.
NodePtr paren_if_needed(const Node &parent, std::size_t slot, NodePtr child);
/// Builds `parent` with kids, inserting required parentheses.
NodePtr make_wrapped(Kind kind, std::string text, std::vector<NodePtr> kids,
                     Type type = {});
/// Strips a Paren that is unnecessary at the new slot; otherwise returns
/// the node as-is.
NodePtr strip_redundant_paren(const Node &parent, std::size_t slot,
                              NodePtr child);

/// True when the tree prints to text that parses back to the same tree:
/// precedence-consistent parentheses and no dangling else.
bool well_formed(const MethodAst &ast);

bool can_complete_normally(const NodePtr &stmt);

} // namespace refdecomp
