#pragma once

#include "refdecomp/ast.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace refdecomp {

enum class Tier : std::uint8_t { Detector, Extended };
const char *to_string(Tier t);

/// A behavior-preserving rewrite schema. `lhs`/`rhs` are display patterns
/// over placeholders ($e expressions, $s statements, $v variables, $T types).
struct RewriteRule {
  std::string id;
  std::string name;
  Tier tier = Tier::Extended;
  std::string lhs;
  std::string rhs;
  std::vector<std::string> guards;
  /// Placeholders of rhs that do not occur in lhs; drawn fresh when matching.
  std::vector<std::string> fresh;
  bool invertible = false;
  /// Id of the rule that undoes this one; empty when not invertible.
  std::string inverse_id;
};

using Bindings = std::vector<std::pair<std::string, std::string>>;

/// One concrete instantiation of a rule on one method.
struct MatchSite {
  std::string rule_id;
  NodePath path;
  Bindings bindings;
  /// Distinguishes alternative rewrites rooted at the same path.
  int variant = 0;
  /// Fingerprint of the method the site was computed on.
  std::uint64_t fingerprint = 0;

  std::string binding(std::string_view key) const;
  std::string summary() const;
};

struct Rewrite {
  MatchSite site;
  MethodAst result;
};

/// All rules, sorted by id.
const std::vector<RewriteRule> &list_rules();
/// Throws Error(InvalidArgument) for an unknown id.
const RewriteRule &rule_by_id(std::string_view id);

std::uint64_t method_fingerprint(const MethodAst &ast);

/// Sites in document order. Fresh names and fragments come from `target`
/// when given (identifiers of target absent from ast), otherwise from a
/// fixed pool. Every returned site yields a well-formed, type-correct method
/// that differs from `ast` in at least one token.
std::vector<MatchSite> find_matches(const RewriteRule &rule, const MethodAst &ast,
                                    const MethodAst *target = nullptr);

/// find_matches together with the rewritten methods.
std::vector<Rewrite> find_rewrites(const RewriteRule &rule, const MethodAst &ast,
                                   const MethodAst *target = nullptr);

/// Throws Error(StaleSite) when `ast` is not the method the site was found
/// on, Error(GuardViolation) when the defensive re-check fails.
MethodAst apply_match(const MethodAst &ast, const MatchSite &site);

} // namespace refdecomp
