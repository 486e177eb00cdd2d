#include "refdecomp/diffmetric.hpp"
#include "refdecomp/error.hpp"
#include "support/lcs_oracle.hpp"

#include <gtest/gtest.h>

#include <random>

namespace refdecomp {
namespace {

std::vector<Token> ids(std::initializer_list<const char *> names) {
  std::vector<Token> out;
  for (const char *n : names)
    out.push_back(Token{TokenKind::Identifier, n, 0, 0});
  return out;
}

TEST(TokenDelta, Identical) {
  auto a = ids({"a", "b", "c"});
  EXPECT_EQ(token_delta(a, a), (DeltaSize{0, 0}));
}

TEST(TokenDelta, OneSubstitution) {
  auto d = token_delta(ids({"a", "b", "c"}), ids({"a", "x", "c"}));
  EXPECT_EQ(d.added, 1u);
  EXPECT_EQ(d.deleted, 1u);
  EXPECT_EQ(d.total(), 2u);
}

TEST(TokenDelta, EmptyBaseline) {
  auto d = token_delta({}, ids({"a", "b"}));
  EXPECT_EQ(d, (DeltaSize{2, 0}));
}

TEST(TokenDelta, KindParticipatesInEquality) {
  std::vector<Token> a{{TokenKind::Identifier, "true", 0, 0}};
  std::vector<Token> b{{TokenKind::BoolLiteral, "true", 0, 0}};
  EXPECT_EQ(token_delta(a, b).total(), 2u);
}

TEST(TokenDelta, MultiWordTarget) {
  std::vector<std::uint32_t> a, b;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    a.push_back(static_cast<std::uint32_t>(rng() % 5));
    b.push_back(static_cast<std::uint32_t>(rng() % 5));
  }
  EXPECT_EQ(lcs_length(a, b), testing::lcs_dp(a, b));
}

TEST(TokenDelta, MatchesOraclesOnRandomSequences) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 2000; ++iter) {
    std::uniform_int_distribution<int> len(0, 14);
    std::uniform_int_distribution<std::uint32_t> sym(0, 3);
    std::vector<std::uint32_t> a(static_cast<std::size_t>(len(rng)));
    std::vector<std::uint32_t> b(static_cast<std::size_t>(len(rng)));
    for (auto &x : a)
      x = sym(rng);
    for (auto &x : b)
      x = sym(rng);
    std::size_t brute = testing::lcs_brute_force(a, b);
    ASSERT_EQ(testing::lcs_dp(a, b), brute);
    ASSERT_EQ(lcs_length(a, b), brute);
    ASSERT_EQ(lcs_length(b, a), brute);
  }
}

TEST(TokenDelta, TargetDeltaAgreesWithTokenDelta) {
  auto target = tokenize("int f(int x){return x+1;}");
  TargetDelta td(target);
  for (const char *src : {"int f(int x){return x+1;}", "int g(int y){return 1+y;}",
                          "", "return return return"}) {
    auto toks = tokenize(src);
    EXPECT_EQ(td.delta(toks), token_delta(toks, target)) << src;
  }
}

TEST(Sim, Examples) {
  auto l = parse_method("int f(int x){return x+1;}");
  auto r = parse_method("int f(int x){return 1+x;}");
  EXPECT_DOUBLE_EQ(sim(r, l, r).value, 1.0);
  EXPECT_DOUBLE_EQ(sim(l, l, r).value, 0.0);
  EXPECT_DOUBLE_EQ(sim_from_deltas(1, 2).value, 0.5);
  EXPECT_DOUBLE_EQ(sim_from_deltas(0, 0).value, 1.0);
}

TEST(Sim, HalfwayTokens) {
  auto left = ids({"a", "b", "c"});
  auto right = ids({"a", "x", "c"});
  auto mid = ids({"a", "b", "x", "c"});
  EXPECT_EQ(token_delta(mid, right).total(), 1u);
  EXPECT_DOUBLE_EQ(sim_from_deltas(token_delta(mid, right).total(),
                                   token_delta(left, right).total())
                       .value,
                   0.5);
}

TEST(Sim, BaselineZero) {
  auto l = parse_method("int f(int x){return x+1;}");
  auto mid = parse_method("int f(int x){return 1+x;}");
  try {
    sim(mid, l, l);
    FAIL() << "expected baseline-zero";
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::BaselineZero);
  }
}

TEST(TokenDelta, SymmetricTotal) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<Token> a, b;
    for (int i = 0; i < static_cast<int>(rng() % 30); ++i)
      a.push_back(Token{TokenKind::Identifier, std::string(1, char('a' + rng() % 4)), 0, 0});
    for (int i = 0; i < static_cast<int>(rng() % 30); ++i)
      b.push_back(Token{TokenKind::Identifier, std::string(1, char('a' + rng() % 4)), 0, 0});
    ASSERT_EQ(token_delta(a, b).total(), token_delta(b, a).total());
    ASSERT_EQ(token_delta(a, a).total(), 0u);
  }
}

} // namespace
} // namespace refdecomp
