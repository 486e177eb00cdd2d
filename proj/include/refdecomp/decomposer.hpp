#pragma once

#include "refdecomp/ast.hpp"
#include "refdecomp/equivalence.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace refdecomp {

enum class TierSet : std::uint8_t { Detector, All };
const char *to_string(TierSet t);
/// Accepts "detector" and "all"; throws InvalidArgument otherwise.
TierSet parse_tier_set(std::string_view text);

struct DecomposeConfig {
  TierSet tiers = TierSet::All;
  /// Number of states kept per iteration; 1 is plain greedy descent.
  int beam_width = 1;
  int max_steps = 200;
  /// Gate every step with differential testing against the left method.
  bool verify = true;
  std::size_t gate_samples = kDefaultSamples;
  std::uint64_t seed = 0;
  /// Run check_equivalent(left, right) first and flag a counterexample.
  bool precheck = false;
};

enum class Stage : std::uint8_t { A, B };
const char *to_string(Stage s);

struct TraceStep {
  Stage stage = Stage::B;
  std::string rule_id;
  NodePath path;
  /// MatchSite::summary() of the applied site.
  std::string site;
  std::size_t delta_before = 0;
  std::size_t delta_after = 0;
};

struct StageResult {
  MethodAst ast;
  std::vector<TraceStep> steps;
  /// Printed methods after each step.
  std::vector<std::string> snapshots;
  /// Renames that were skipped, with the reason.
  std::vector<std::string> skipped;
};

struct DecompositionTrace {
  std::string pair_id;
  std::vector<TraceStep> steps;
  /// snapshots[0] is the printed left method, then one per step.
  std::vector<std::string> snapshots;
  std::vector<std::string> skipped;
  std::size_t baseline_delta = 0;
  std::size_t residual_delta = 0;
  double sim_after_stage_a = 0.0;
  double sim_final = 0.0;
  bool fully_decomposed = false;
  /// Set when the optional pre-check found the pair not equivalent.
  bool not_equivalent = false;

  std::size_t stage_a_steps() const;
};

/// Seed of the equivalence gate for one pair: stable across platforms.
std::uint64_t pair_seed(std::uint64_t seed, std::string_view pair_id);

/// Stage A: gives `left` the method name of `right` and, for equal arities,
/// the parameter names of `right` position by position. Colliding renames and
/// renames that do not reduce the delta are skipped, as are renames the gate
/// rejects when one is given.
StageResult unify_names(const MethodAst &left, const MethodAst &right,
                        const EquivalenceGate *gate = nullptr);

/// Stage B: target-guided descent over the enabled tiers. A step must strictly
/// reduce the token delta to `right` and, when `gate` is given, pass it. Ties
/// go to the lowest rule id, then the earliest site.
StageResult greedy_decompose(const MethodAst &mid, const MethodAst &right,
                             const DecomposeConfig &config,
                             const EquivalenceGate *gate = nullptr);

DecompositionTrace decompose_pair(const MethodAst &left, const MethodAst &right,
                                  const DecomposeConfig &config,
                                  const std::string &pair_id = "");

} // namespace refdecomp
