#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace refdecomp::testing {

/// Textbook O(n*m) dynamic-programming LCS length.
std::size_t lcs_dp(const std::vector<std::uint32_t> &a,
                   const std::vector<std::uint32_t> &b);

/// Exhaustive LCS: tries every subsequence of the shorter input, longest
/// first. Exponential; use on short inputs only.
std::size_t lcs_brute_force(const std::vector<std::uint32_t> &a,
                            const std::vector<std::uint32_t> &b);

} // namespace refdecomp::testing
