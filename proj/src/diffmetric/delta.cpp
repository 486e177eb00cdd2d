#include "refdecomp/diffmetric.hpp"
#include "refdecomp/error.hpp"

#include <bit>

namespace refdecomp {

namespace {

// Hyyro's bit-vector LCS: V starts all ones over |b| bits; each zero bit
// left at the end is one matched position.
std::size_t lcs_with_masks(std::span<const std::uint32_t> a,
                           const std::vector<std::vector<std::uint64_t>> &masks,
                           std::size_t bits, std::size_t words) {
  if (bits == 0 || a.empty())
    return 0;
  std::vector<std::uint64_t> v(words, ~std::uint64_t{0});
  for (std::uint32_t id : a) {
    if (id >= masks.size() || masks[id].empty())
      continue;
    const auto &m = masks[id];
    std::uint64_t carry = 0, borrow = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t u = v[w] & m[w];
      std::uint64_t sum = v[w] + u;
      std::uint64_t c1 = sum < v[w];
      std::uint64_t sum2 = sum + carry;
      std::uint64_t c2 = sum2 < sum;
      carry = c1 | c2;
      std::uint64_t diff = v[w] - u;
      std::uint64_t b1 = v[w] < u;
      std::uint64_t diff2 = diff - borrow;
      std::uint64_t b2 = diff < borrow;
      borrow = b1 | b2;
      v[w] = sum2 | diff2;
    }
  }
  std::size_t zeros = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t word = ~v[w];
    std::size_t valid = (w + 1 == words && bits % 64) ? bits % 64 : 64;
    if (valid < 64)
      word &= (std::uint64_t{1} << valid) - 1;
    zeros += static_cast<std::size_t>(std::popcount(word));
  }
  return zeros;
}

std::vector<std::vector<std::uint64_t>>
build_masks(std::span<const std::uint32_t> b, std::size_t words) {
  std::vector<std::vector<std::uint64_t>> masks;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] >= masks.size())
      masks.resize(b[j] + 1);
    auto &m = masks[b[j]];
    if (m.empty())
      m.assign(words, 0);
    m[j / 64] |= std::uint64_t{1} << (j % 64);
  }
  return masks;
}

} // namespace

std::size_t lcs_length(std::span<const std::uint32_t> a,
                       std::span<const std::uint32_t> b) {
  std::size_t words = (b.size() + 63) / 64;
  return lcs_with_masks(a, build_masks(b, words), b.size(), words);
}

std::uint32_t TokenInterner::intern(const Token &t) {
  std::string key;
  key.reserve(t.lexeme.size() + 1);
  key.push_back(static_cast<char>('A' + static_cast<int>(t.kind)));
  key.append(t.lexeme);
  auto [it, inserted] =
      ids_.emplace(std::move(key), static_cast<std::uint32_t>(ids_.size()));
  return it->second;
}

std::vector<std::uint32_t> TokenInterner::intern_all(std::span<const Token> tokens) {
  std::vector<std::uint32_t> out;
  out.reserve(tokens.size());
  for (const auto &t : tokens)
    out.push_back(intern(t));
  return out;
}

DeltaSize token_delta(std::span<const Token> a, std::span<const Token> b) {
  TokenInterner interner;
  auto ia = interner.intern_all(a);
  auto ib = interner.intern_all(b);
  std::size_t l = lcs_length(ia, ib);
  return DeltaSize{b.size() - l, a.size() - l};
}

SimScore sim_from_deltas(std::size_t residual, std::size_t baseline) {
  if (baseline == 0) {
    if (residual == 0)
      return SimScore{1.0};
    throw Error(ErrorKind::BaselineZero,
                "left and right are token-identical but mid differs");
  }
  return SimScore{1.0 - static_cast<double>(residual) /
                            static_cast<double>(baseline)};
}

SimScore sim(const MethodAst &mid, const MethodAst &left, const MethodAst &right) {
  auto tm = method_tokens(mid);
  auto tl = method_tokens(left);
  auto tr = method_tokens(right);
  return sim_from_deltas(token_delta(tm, tr).total(), token_delta(tl, tr).total());
}

TargetDelta::TargetDelta(std::span<const Token> target)
    : target_size_(target.size()), words_((target.size() + 63) / 64) {
  auto ids = interner_.intern_all(target);
  masks_ = build_masks(ids, words_);
}

DeltaSize TargetDelta::delta(std::span<const Token> candidate) {
  auto ids = interner_.intern_all(candidate);
  std::size_t l = lcs_with_masks(ids, masks_, target_size_, words_);
  return DeltaSize{target_size_ - l, candidate.size() - l};
}

DeltaSize TargetDelta::delta(const MethodAst &candidate) {
  return delta(method_tokens(candidate));
}

} // namespace refdecomp
