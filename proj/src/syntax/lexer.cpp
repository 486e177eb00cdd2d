#include "refdecomp/error.hpp"
#include "refdecomp/syntax.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>

namespace refdecomp {

const char *to_string(TokenKind k) {
  switch (k) {
  case TokenKind::Identifier: return "identifier";
  case TokenKind::Keyword: return "keyword";
  case TokenKind::IntLiteral: return "int_literal";
  case TokenKind::LongLiteral: return "long_literal";
  case TokenKind::DoubleLiteral: return "double_literal";
  case TokenKind::BoolLiteral: return "bool_literal";
  case TokenKind::StringLiteral: return "string_literal";
  case TokenKind::Operator: return "operator";
  case TokenKind::Separator: return "separator";
  }
  return "?";
}

namespace {

constexpr std::array kKeywords = {
    "int",    "long",   "double", "boolean", "String", "if",
    "else",   "switch", "case",   "default", "break",  "for",
    "while",  "return", "final",  "new",
};

constexpr std::array kOperators = {
    "++", "--", "+=", "-=", "*=", "/=", "%=", "==", "!=", "<=",
    ">=", "&&", "||", "!",  "=",  "<",  ">",  "+",  "-",  "*",  "/",
    "%",  "?",  ":",
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

[[noreturn]] void lex_error(const std::string &msg, int line, int col) {
  throw Error(ErrorKind::Lexical, std::to_string(line) + ":" +
                                      std::to_string(col) + ": " + msg);
}

bool valid_underscores(std::string_view digits) {
  if (digits.empty() || digits.front() == '_' || digits.back() == '_')
    return false;
  return true;
}

} // namespace

bool is_keyword(std::string_view word) {
  for (auto *k : kKeywords)
    if (word == k)
      return true;
  return false;
}

bool is_type_keyword(std::string_view word) {
  return word == "int" || word == "long" || word == "double" ||
         word == "boolean" || word == "String";
}

std::optional<std::uint64_t> integer_literal_value(std::string_view lexeme) {
  std::string_view s = lexeme;
  if (!s.empty() && (s.back() == 'L' || s.back() == 'l'))
    s.remove_suffix(1);
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    base = 16;
    s.remove_prefix(2);
  }
  if (!valid_underscores(s))
    return std::nullopt;
  std::string digits;
  for (char c : s)
    if (c != '_')
      digits.push_back(c);
  if (digits.empty())
    return std::nullopt;
  std::uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value, base);
  if (ec != std::errc() || ptr != digits.data() + digits.size())
    return std::nullopt;
  return value;
}

std::optional<double> double_literal_value(std::string_view lexeme) {
  std::string digits;
  for (char c : lexeme)
    if (c != '_' && c != 'd' && c != 'D')
      digits.push_back(c);
  char *end = nullptr;
  double v = std::strtod(digits.c_str(), &end);
  if (end != digits.c_str() + digits.size())
    return std::nullopt;
  return v;
}

std::string string_literal_value(std::string_view lexeme) {
  std::string out;
  for (std::size_t i = 1; i + 1 < lexeme.size(); ++i) {
    char c = lexeme[i];
    if (c == '\\' && i + 2 < lexeme.size()) {
      char e = lexeme[++i];
      switch (e) {
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case 'r': out.push_back('\r'); break;
      case '0': out.push_back('\0'); break;
      default: out.push_back(e); break;
      }
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string quote_string(std::string_view value) {
  std::string out = "\"";
  for (char c : value) {
    switch (c) {
    case '\n': out += "\\n"; break;
    case '\t': out += "\\t"; break;
    case '\r': out += "\\r"; break;
    case '\0': out += "\\0"; break;
    case '"': out += "\\\""; break;
    case '\\': out += "\\\\"; break;
    default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n')
        advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      int l0 = line, c0 = col;
      auto end = src.find("*/", i + 2);
      if (end == std::string_view::npos)
        lex_error("unterminated comment", l0, c0);
      advance(end + 2 - i);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j]))
        ++j;
      tok.lexeme = std::string(src.substr(i, j - i));
      if (tok.lexeme == "true" || tok.lexeme == "false")
        tok.kind = TokenKind::BoolLiteral;
      else if (is_keyword(tok.lexeme))
        tok.kind = TokenKind::Keyword;
      else
        tok.kind = TokenKind::Identifier;
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      bool is_double = false;
      if (c == '0' && j + 1 < src.size() && (src[j + 1] == 'x' || src[j + 1] == 'X')) {
        j += 2;
        while (j < src.size() &&
               (std::isxdigit(static_cast<unsigned char>(src[j])) || src[j] == '_'))
          ++j;
        if (j == i + 2)
          lex_error("malformed hex literal", line, col);
      } else {
        while (j < src.size() &&
               (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '_'))
          ++j;
        if (j + 1 < src.size() && src[j] == '.' &&
            std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
          is_double = true;
          ++j;
          while (j < src.size() &&
                 (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '_'))
            ++j;
        }
        if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
          std::size_t k = j + 1;
          if (k < src.size() && (src[k] == '+' || src[k] == '-'))
            ++k;
          if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
            is_double = true;
            j = k;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
              ++j;
          }
        }
      }
      TokenKind kind = is_double ? TokenKind::DoubleLiteral : TokenKind::IntLiteral;
      if (j < src.size() && (src[j] == 'L' || src[j] == 'l') && !is_double) {
        kind = TokenKind::LongLiteral;
        ++j;
      } else if (j < src.size() && (src[j] == 'd' || src[j] == 'D') &&
                 src.substr(i, 2) != "0x" && src.substr(i, 2) != "0X") {
        kind = TokenKind::DoubleLiteral;
        ++j;
      }
      if (j < src.size() && ident_char(src[j]))
        lex_error("malformed numeric literal", line, col);
      tok.lexeme = std::string(src.substr(i, j - i));
      tok.kind = kind;
      if (kind == TokenKind::IntLiteral || kind == TokenKind::LongLiteral) {
        if (!integer_literal_value(tok.lexeme))
          lex_error("malformed integer literal '" + tok.lexeme + "'", line, col);
        std::string_view digits = tok.lexeme;
        if (digits.size() > 1 && digits[0] == '0' && digits[1] != 'x' &&
            digits[1] != 'X' && digits[1] != 'L' && digits[1] != 'l')
          lex_error("octal literals are not supported", line, col);
      } else if (!double_literal_value(tok.lexeme)) {
        lex_error("malformed floating literal", line, col);
      }
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') {
        if (src[j] == '\\')
          ++j;
        ++j;
      }
      if (j >= src.size() || src[j] != '"')
        lex_error("unterminated string literal", line, col);
      tok.kind = TokenKind::StringLiteral;
      tok.lexeme = std::string(src.substr(i, j + 1 - i));
      advance(j + 1 - i);
      out.push_back(std::move(tok));
      continue;
    }
    if (std::string_view("(){}[];,.").find(c) != std::string_view::npos) {
      tok.kind = TokenKind::Separator;
      tok.lexeme = std::string(1, c);
      advance(1);
      out.push_back(std::move(tok));
      continue;
    }
    bool matched = false;
    for (auto *op : kOperators) {
      std::string_view ops(op);
      if (src.substr(i, ops.size()) == ops) {
        tok.kind = TokenKind::Operator;
        tok.lexeme = std::string(ops);
        advance(ops.size());
        out.push_back(std::move(tok));
        matched = true;
        break;
      }
    }
    if (!matched)
      lex_error(std::string("illegal character '") + c + "'", line, col);
  }
  return out;
}

} // namespace refdecomp
