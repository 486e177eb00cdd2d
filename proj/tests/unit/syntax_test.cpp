#include "refdecomp/error.hpp"
#include "refdecomp/syntax.hpp"
#include "support/random_method.hpp"

#include <gtest/gtest.h>

namespace refdecomp {
namespace {

std::vector<std::string> lexemes(std::string_view src) {
  std::vector<std::string> out;
  for (const auto &t : tokenize(src))
    out.push_back(t.lexeme);
  return out;
}

ErrorKind error_kind_of(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::Io;
}

TEST(Tokenize, SimpleReturn) {
  auto toks = tokenize("return x+1;");
  ASSERT_EQ(toks.size(), 5u);
  EXPECT_EQ(toks[0].kind, TokenKind::Keyword);
  EXPECT_EQ(toks[1].kind, TokenKind::Identifier);
  EXPECT_EQ(toks[2].kind, TokenKind::Operator);
  EXPECT_EQ(toks[3].kind, TokenKind::IntLiteral);
  EXPECT_EQ(toks[4].kind, TokenKind::Separator);
}

TEST(Tokenize, HexLiteral) {
  auto toks = tokenize("0xA");
  ASSERT_EQ(toks.size(), 1u);
  EXPECT_EQ(toks[0].kind, TokenKind::IntLiteral);
  EXPECT_EQ(toks[0].lexeme, "0xA");
  EXPECT_EQ(integer_literal_value("0xA"), 10u);
  EXPECT_EQ(integer_literal_value("1_000"), 1000u);
  EXPECT_EQ(integer_literal_value("0x10L"), 16u);
}

TEST(Tokenize, CommentsDiscarded) {
  EXPECT_EQ(lexemes("int a = /*c*/ 1;"),
            (std::vector<std::string>{"int", "a", "=", "1", ";"}));
  EXPECT_EQ(lexemes("a // tail\n+b"), (std::vector<std::string>{"a", "+", "b"}));
}

TEST(Tokenize, LongestOperatorMatch) {
  EXPECT_EQ(lexemes("a+++b"), (std::vector<std::string>{"a", "++", "+", "b"}));
  EXPECT_EQ(lexemes("x<=y&&!z"),
            (std::vector<std::string>{"x", "<=", "y", "&&", "!", "z"}));
}

TEST(Tokenize, LiteralKinds) {
  auto toks = tokenize("5L 1.5 true \"a\\\"b\"");
  ASSERT_EQ(toks.size(), 4u);
  EXPECT_EQ(toks[0].kind, TokenKind::LongLiteral);
  EXPECT_EQ(toks[1].kind, TokenKind::DoubleLiteral);
  EXPECT_EQ(toks[2].kind, TokenKind::BoolLiteral);
  EXPECT_EQ(toks[3].kind, TokenKind::StringLiteral);
  EXPECT_EQ(string_literal_value(toks[3].lexeme), "a\"b");
}

TEST(Tokenize, LexicalErrors) {
  EXPECT_EQ(error_kind_of([] { tokenize("a # b"); }), ErrorKind::Lexical);
  EXPECT_EQ(error_kind_of([] { tokenize("\"open"); }), ErrorKind::Lexical);
  EXPECT_EQ(error_kind_of([] { tokenize("/* never closed"); }), ErrorKind::Lexical);
  try {
    tokenize("a\n  #");
  } catch (const Error &e) {
    EXPECT_NE(std::string(e.what()).find("2:3"), std::string::npos) << e.what();
  }
}

TEST(Tokenize, SpaceJoinedRoundTrip) {
  std::string src = "int f(int[] a){for(int i=0;i<a.length;i++){a[i]-=-1;}"
                    "return a.length>0?a[0]:0x1F;}";
  auto toks = tokenize(src);
  std::string joined;
  for (const auto &t : toks)
    joined += t.lexeme + " ";
  EXPECT_EQ(tokenize(joined), toks);
}

TEST(Parse, MinimalMethod) {
  auto m = parse_method("int f(int x){return x+1;}");
  EXPECT_EQ(m.name, "f");
  ASSERT_EQ(m.params.size(), 1u);
  EXPECT_EQ(m.params[0].type, Type::int_());
  ASSERT_EQ(m.body->size(), 1u);
  EXPECT_EQ(m.body->kid(0)->kind, Kind::Return);
}

TEST(Parse, UndeclaredIsTypeError) {
  EXPECT_EQ(error_kind_of([] { parse_method("int f(){return y;}"); }),
            ErrorKind::Type);
}

TEST(Parse, CStyleArrayParam) {
  auto m = parse_method("int f(int a[]){return a.length;}");
  ASSERT_EQ(m.params.size(), 1u);
  EXPECT_EQ(m.params[0].type, Type::int_().as_array());
  EXPECT_TRUE(m.params[0].c_style_array);
}

TEST(Parse, Rejections) {
  EXPECT_EQ(error_kind_of([] { parse_method("int f(int x){return x+;}"); }),
            ErrorKind::Parse);
  EXPECT_EQ(error_kind_of([] {
              parse_method("int f(int x){int y = 1; { int y = 2; } return x;}");
            }),
            ErrorKind::Type);
  EXPECT_EQ(error_kind_of([] {
              parse_method("int f(int x){switch(x){case 1: x++; break; case 1: "
                           "break;} return x;}");
            }),
            ErrorKind::Type);
  EXPECT_EQ(error_kind_of([] { parse_method("int f(int x){x = true; return x;}"); }),
            ErrorKind::Type);
  EXPECT_EQ(error_kind_of([] { parse_method("int f(int x){if (x > 0) return 1;}"); }),
            ErrorKind::Type);
  EXPECT_EQ(error_kind_of([] { parse_method("int f(){return 2147483648;}"); }),
            ErrorKind::Type);
  EXPECT_NO_THROW(parse_method("int f(){return -2147483648;}"));
}

TEST(Print, RoundTripIsTokenIdentical) {
  std::string src = "int f(int x){return x+1;}";
  EXPECT_EQ(tokenize(print_method(parse_method(src))), tokenize(src));
}

TEST(Print, ParenthesesPreserved) {
  std::string src = "int f(int x){return ((x))+(1);}";
  auto printed = print_method(parse_method(src));
  EXPECT_EQ(tokenize(printed), tokenize(src));
  EXPECT_NE(printed.find("((x))"), std::string::npos);
}

TEST(Print, Deterministic) {
  auto a = parse_method("int f(int x){if(x>0){x--;}else x++;return x;}");
  auto b = parse_method("int f(int x){ if (x > 0) { x--; } else x++; return x; }");
  ASSERT_TRUE(structurally_equal(a, b));
  EXPECT_EQ(print_method(a), print_method(b));
}

TEST(Print, SeparatesMergingOperators) {
  auto m = parse_method("int f(int x){return x - -x + 1 - --x - -(-x);}");
  EXPECT_EQ(tokenize(print_method(m)), method_tokens(m));
  EXPECT_TRUE(structurally_equal(parse_method(print_method(m)), m));
}

TEST(Path, Resolution) {
  auto m = parse_method("int f(int x){return x;}");
  EXPECT_EQ(resolve_path(m, NodePath{}).get(), m.body.get());
  EXPECT_EQ(resolve_path(m, NodePath{{0}})->kind, Kind::Return);
  EXPECT_EQ(error_kind_of([&] { resolve_path(m, NodePath{{5}}); }),
            ErrorKind::InvalidPath);
  EXPECT_EQ(try_resolve(m, NodePath{{0, 0, 3}}), nullptr);
}

TEST(Structure, NeedsParen) {
  auto m = parse_method("int f(int a, int b, int c){return (a - b) - c + a * (b + c);}");
  EXPECT_TRUE(well_formed(m));
  auto bad = parse_method_unchecked("int f(int a, int b){return a;}");
  // a - (b - c) built without parentheses would print as a - b - c
  auto inner = make_binary("-", make_name("a"), make_name("b"));
  auto outer = make_binary("-", make_name("a"), inner);
  bad.body = make_block({make_return(outer)});
  EXPECT_FALSE(well_formed(bad));
}

TEST(Structure, DanglingElseDetected) {
  auto m = parse_method_unchecked("int f(int a){if (a > 0) { if (a > 1) a++; } else a--; return a;}");
  EXPECT_TRUE(well_formed(m));
  auto outer = m.body->kid(0);
  auto inner_if = outer->kid(1)->kid(0);
  auto rebuilt = make_if(outer->kid(0), inner_if, outer->kid(2));
  EXPECT_FALSE(well_formed(replace_at(m, NodePath{{0}}, rebuilt)));
}

TEST(Structure, CompletesNormally) {
  auto m = parse_method(
      "int f(int a){if (a > 0) { return 1; } else { return 2; }}");
  EXPECT_FALSE(can_complete_normally(m.body));
  auto w = parse_method("int f(int a){while (true) { a++; }}");
  EXPECT_FALSE(can_complete_normally(w.body));
}

TEST(TypeCheck, SymbolsAndTypes) {
  auto m = parse_method("long f(int a){long b = a + 1L; return b * a;}");
  auto info = type_check(m);
  EXPECT_EQ(info.symbol_names.size(), 2u);
  EXPECT_TRUE(info.symbol_is_param[0]);
  auto ret = m.body->kid(1)->kid(0);
  EXPECT_EQ(info.type_of(ret), Type::long_());
}

class RoundTripProperty : public ::testing::TestWithParam<int> {};

TEST_P(RoundTripProperty, ParsePrintIdentity) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
  testing::GenOptions opt;
  opt.redundant_paren = 0.1;
  for (int i = 0; i < 50; ++i) {
    auto m = testing::random_method(rng, opt);
    auto text = print_method(m);
    auto again = parse_method(text);
    ASSERT_TRUE(structurally_equal(again, m)) << text;
    ASSERT_EQ(print_method(again), text);
    ASSERT_EQ(method_tokens(m), tokenize(text)) << text;
    ASSERT_TRUE(well_formed(m)) << text;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RoundTripProperty, ::testing::Range(1, 9));

} // namespace
} // namespace refdecomp
