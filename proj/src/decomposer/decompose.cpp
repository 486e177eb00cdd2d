#include "refdecomp/decomposer.hpp"

#include "refdecomp/catalog.hpp"
#include "refdecomp/diffmetric.hpp"
#include "refdecomp/error.hpp"
#include "refdecomp/syntax.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace refdecomp {

const char *to_string(TierSet t) { return t == TierSet::Detector ? "detector" : "all"; }

TierSet parse_tier_set(std::string_view text) {
  if (text == "detector")
    return TierSet::Detector;
  if (text == "all")
    return TierSet::All;
  throw Error(ErrorKind::InvalidArgument,
              "unknown tier set '" + std::string(text) + "' (expected detector or all)");
}

const char *to_string(Stage s) { return s == Stage::A ? "A" : "B"; }

std::size_t DecompositionTrace::stage_a_steps() const {
  return static_cast<std::size_t>(std::count_if(
      steps.begin(), steps.end(), [](const TraceStep &s) { return s.stage == Stage::A; }));
}

std::uint64_t pair_seed(std::uint64_t seed, std::string_view pair_id) {
  // FNV-1a, so the value does not depend on the standard library.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : pair_id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return seed ^ h;
}

namespace {

std::size_t delta_of(TargetDelta &td, const MethodAst &m) { return td.delta(m).total(); }

TraceStep make_step(Stage stage, const MatchSite &site, std::size_t before, std::size_t after) {
  return TraceStep{stage, site.rule_id, site.path, site.summary(), before, after};
}

/// The rename site of `rule_id` on `ast` binding `to`, optionally restricted
/// to one parameter.
std::optional<Rewrite> rename_to(const char *rule_id, const MethodAst &ast,
                                 const MethodAst &right, const std::string &to,
                                 const std::string &param = "") {
  for (auto &r : find_rewrites(rule_by_id(rule_id), ast, &right))
    if (r.site.binding("to") == to && (param.empty() || r.site.binding("param") == param))
      return std::move(r);
  return std::nullopt;
}

bool enabled(const RewriteRule &rule, TierSet tiers) {
  return tiers == TierSet::All || rule.tier == Tier::Detector;
}

struct SearchState {
  MethodAst ast;
  std::size_t delta = 0;
  std::vector<TraceStep> steps;
  std::vector<std::string> snapshots;
};

struct Candidate {
  std::size_t delta;
  std::size_t rule_index;
  std::size_t site_index;
  std::size_t state_index;
  Rewrite rewrite;

  auto key() const { return std::tie(delta, rule_index, site_index, state_index); }
};

} // namespace

StageResult unify_names(const MethodAst &left, const MethodAst &right,
                        const EquivalenceGate *gate) {
  StageResult out{left, {}, {}, {}};
  TargetDelta td(method_tokens(right));
  std::size_t delta = delta_of(td, left);

  auto attempt = [&](const char *rule_id, const std::string &from, const std::string &to,
                     const std::string &param) {
    auto r = rename_to(rule_id, out.ast, right, to, param);
    std::string what = std::string(rule_id) + " " + from + " -> " + to;
    if (!r) {
      out.skipped.push_back(what + ": name already bound");
      return;
    }
    std::size_t after = delta_of(td, r->result);
    if (after >= delta) {
      out.skipped.push_back(what + ": does not reduce the delta");
      return;
    }
    if (gate && !gate->accepts(r->result)) {
      out.skipped.push_back(what + ": rejected by the equivalence gate");
      return;
    }
    out.steps.push_back(make_step(Stage::A, r->site, delta, after));
    out.ast = std::move(r->result);
    out.snapshots.push_back(print_method(out.ast));
    delta = after;
  };

  if (left.name != right.name)
    attempt("rename-method", left.name, right.name, "");
  if (left.params.size() == right.params.size())
    for (std::size_t i = 0; i < right.params.size(); ++i) {
      const auto &from = out.ast.params[i].name;
      if (from != right.params[i].name)
        attempt("rename-parameter", from, right.params[i].name, std::to_string(i));
    }
  return out;
}

StageResult greedy_decompose(const MethodAst &mid, const MethodAst &right,
                             const DecomposeConfig &config, const EquivalenceGate *gate) {
  if (config.beam_width < 1)
    throw Error(ErrorKind::InvalidArgument, "beam width must be at least 1");
  TargetDelta td(method_tokens(right));
  std::vector<const RewriteRule *> rules;
  for (const auto &r : list_rules())
    if (enabled(r, config.tiers))
      rules.push_back(&r);

  const auto width = static_cast<std::size_t>(config.beam_width);
  std::vector<SearchState> beam{SearchState{mid, delta_of(td, mid), {}, {}}};
  SearchState best = beam.front();

  for (int step = 0; step < config.max_steps; ++step) {
    std::vector<Candidate> candidates;
    for (std::size_t s = 0; s < beam.size(); ++s) {
      const auto &state = beam[s];
      if (state.delta == 0)
        continue;
      for (std::size_t ri = 0; ri < rules.size(); ++ri) {
        auto found = find_rewrites(*rules[ri], state.ast, &right);
        for (std::size_t si = 0; si < found.size(); ++si) {
          std::size_t d = delta_of(td, found[si].result);
          if (d < state.delta)
            candidates.push_back(Candidate{d, ri, si, s, std::move(found[si])});
        }
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate &a, const Candidate &b) { return a.key() < b.key(); });

    std::vector<SearchState> next;
    std::set<std::string> seen;
    for (auto &c : candidates) {
      if (next.size() == width)
        break;
      auto text = print_method(c.rewrite.result);
      if (seen.count(text))
        continue;
      if (gate && !gate->accepts(c.rewrite.result))
        continue;
      seen.insert(text);
      const auto &parent = beam[c.state_index];
      SearchState child{std::move(c.rewrite.result), c.delta, parent.steps, parent.snapshots};
      child.steps.push_back(make_step(Stage::B, c.rewrite.site, parent.delta, c.delta));
      child.snapshots.push_back(std::move(text));
      next.push_back(std::move(child));
    }
    if (next.empty())
      break;
    beam = std::move(next);
    if (beam.front().delta < best.delta)
      best = beam.front();
  }
  return StageResult{std::move(best.ast), std::move(best.steps), std::move(best.snapshots), {}};
}

DecompositionTrace decompose_pair(const MethodAst &left, const MethodAst &right,
                                  const DecomposeConfig &config, const std::string &pair_id) {
  DecompositionTrace trace;
  trace.pair_id = pair_id;
  trace.snapshots.push_back(print_method(left));

  TargetDelta td(method_tokens(right));
  trace.baseline_delta = delta_of(td, left);
  std::uint64_t seed = pair_seed(config.seed, pair_id);

  if (config.precheck)
    trace.not_equivalent = !check_equivalent(left, right, config.gate_samples, seed).consistent();

  std::optional<EquivalenceGate> gate;
  if (config.verify)
    gate.emplace(left, config.gate_samples, seed);
  const EquivalenceGate *g = gate ? &*gate : nullptr;

  auto a = unify_names(left, right, g);
  std::size_t after_a = delta_of(td, a.ast);
  trace.sim_after_stage_a = sim_from_deltas(after_a, trace.baseline_delta).value;

  auto b = greedy_decompose(a.ast, right, config, g);
  trace.residual_delta = delta_of(td, b.ast);
  trace.sim_final = sim_from_deltas(trace.residual_delta, trace.baseline_delta).value;
  trace.fully_decomposed = trace.residual_delta == 0;

  trace.steps = std::move(a.steps);
  trace.steps.insert(trace.steps.end(), b.steps.begin(), b.steps.end());
  trace.snapshots.insert(trace.snapshots.end(), a.snapshots.begin(), a.snapshots.end());
  trace.snapshots.insert(trace.snapshots.end(), b.snapshots.begin(), b.snapshots.end());
  trace.skipped = std::move(a.skipped);
  return trace;
}

} // namespace refdecomp
