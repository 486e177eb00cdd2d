#pragma once

#include "refdecomp/syntax.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace refdecomp {

/// Added/deleted token counts between two sequences, from an LCS.
struct DeltaSize {
  std::size_t added = 0;
  std::size_t deleted = 0;

  std::size_t total() const { return added + deleted; }
  friend bool operator==(const DeltaSize &, const DeltaSize &) = default;
};

struct SimScore {
  double value = 0.0;
};

/// Length of the longest common subsequence of two id sequences
/// (bit-parallel, O(|a| * ceil(|b| / 64))).
std::size_t lcs_length(std::span<const std::uint32_t> a,
                       std::span<const std::uint32_t> b);

DeltaSize token_delta(std::span<const Token> a, std::span<const Token> b);

/// 1 - residual / baseline. Throws Error(BaselineZero) when baseline is 0
/// and residual is not.
SimScore sim_from_deltas(std::size_t residual, std::size_t baseline);

SimScore sim(const MethodAst &mid, const MethodAst &left, const MethodAst &right);

/// Maps (kind, lexeme) pairs to dense ids.
class TokenInterner {
public:
  std::uint32_t intern(const Token &t);
  std::vector<std::uint32_t> intern_all(std::span<const Token> tokens);

private:
  std::unordered_map<std::string, std::uint32_t> ids_;
};

/// Delta against a fixed target with the target's match masks precomputed;
/// used when many candidates are compared to the same method.
class TargetDelta {
public:
  explicit TargetDelta(std::span<const Token> target);

  DeltaSize delta(std::span<const Token> candidate);
  DeltaSize delta(const MethodAst &candidate);
  std::size_t target_size() const { return target_size_; }

private:
  TokenInterner interner_;
  std::size_t target_size_ = 0;
  std::size_t words_ = 0;
  std::vector<std::vector<std::uint64_t>> masks_;
};

} // namespace refdecomp
