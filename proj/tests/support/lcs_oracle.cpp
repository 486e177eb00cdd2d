#include "support/lcs_oracle.hpp"

#include <algorithm>
#include <bit>

namespace refdecomp::testing {

std::size_t lcs_dp(const std::vector<std::uint32_t> &a,
                   const std::vector<std::uint32_t> &b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1,
                                          std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1
                                     : std::max(t[i - 1][j], t[i][j - 1]);
  return t[a.size()][b.size()];
}

namespace {

bool is_subsequence(const std::vector<std::uint32_t> &sub,
                    const std::vector<std::uint32_t> &seq) {
  std::size_t i = 0;
  for (std::size_t j = 0; j < seq.size() && i < sub.size(); ++j)
    if (sub[i] == seq[j])
      ++i;
  return i == sub.size();
}

} // namespace

std::size_t lcs_brute_force(const std::vector<std::uint32_t> &a,
                            const std::vector<std::uint32_t> &b) {
  const auto &shorter = a.size() <= b.size() ? a : b;
  const auto &longer = a.size() <= b.size() ? b : a;
  std::size_t n = shorter.size();
  std::size_t best = 0;
  std::vector<std::uint32_t> sub;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    auto bits = static_cast<std::size_t>(std::popcount(mask));
    if (bits <= best)
      continue;
    sub.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1)
        sub.push_back(shorter[i]);
    if (is_subsequence(sub, longer))
      best = bits;
  }
  return best;
}

} // namespace refdecomp::testing
