#pragma once

#include "refdecomp/ast.hpp"

#include <random>

namespace refdecomp::testing {

struct GenOptions {
  int max_stmts = 9;
  int max_expr_depth = 3;
  /// Probability of wrapping a generated expression in redundant parentheses.
  double redundant_paren = 0.0;
};

/// Random well-typed MiniJ method. Every path returns; loops are bounded.
/// The result has been printed and re-parsed, so it is canonical.
MethodAst random_method(std::mt19937_64 &rng, const GenOptions &opt = {});

} // namespace refdecomp::testing
