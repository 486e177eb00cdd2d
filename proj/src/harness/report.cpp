#include "refdecomp/harness.hpp"

#include "refdecomp/catalog.hpp"
#include "refdecomp/diffmetric.hpp"
#include "refdecomp/equivalence.hpp"
#include "refdecomp/error.hpp"
#include "refdecomp/syntax.hpp"

#include <algorithm>
#include <charconv>

using nlohmann::json;
using nlohmann::ordered_json;

namespace refdecomp {

ordered_json trace_to_json(const DecompositionTrace &trace, TierSet tiers, bool snapshots) {
  ordered_json steps = ordered_json::array();
  for (const auto &s : trace.steps)
    steps.push_back({{"stage", to_string(s.stage)},
                     {"rule_id", s.rule_id},
                     {"site", s.site},
                     {"path", s.path.steps},
                     {"delta_before", s.delta_before},
                     {"delta_after", s.delta_after}});
  ordered_json j{{"pair_id", trace.pair_id},
                 {"tier_config", to_string(tiers)},
                 {"baseline_delta_tokens", trace.baseline_delta},
                 {"residual_delta_tokens", trace.residual_delta},
                 {"sim_after_stage_a", trace.sim_after_stage_a},
                 {"sim_final", trace.sim_final},
                 {"fully_decomposed", trace.fully_decomposed},
                 {"not_equivalent", trace.not_equivalent},
                 {"steps", steps},
                 {"skipped_renames", trace.skipped}};
  if (snapshots)
    j["snapshots"] = trace.snapshots;
  return j;
}

std::vector<TierAggregate> aggregate(const std::vector<EvalRow> &rows) {
  std::vector<TierAggregate> out;
  for (const auto &r : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const TierAggregate &a) {
      return a.tier_config == r.tier_config;
    });
    if (it == out.end()) {
      out.push_back({r.tier_config});
      it = std::prev(out.end());
    }
    ++it->pairs;
    // Sums for now, divided below.
    it->mean_sim_after_stage_a += r.sim_after_stage_a;
    it->mean_sim_final += r.sim_final;
    it->with_steps += r.steps > 0;
    it->fully_decomposed += r.fully_decomposed;
  }
  for (auto &a : out) {
    a.mean_sim_after_stage_a /= static_cast<double>(a.pairs);
    a.mean_sim_final /= static_cast<double>(a.pairs);
  }
  return out;
}

ordered_json summary_to_json(const EvalSummary &summary) {
  ordered_json rows = ordered_json::array();
  for (const auto &r : summary.rows)
    rows.push_back({{"pair_id", r.pair_id},
                    {"tier_config", r.tier_config},
                    {"sim_after_stage_a", r.sim_after_stage_a},
                    {"sim_final", r.sim_final},
                    {"steps", r.steps},
                    {"residual_delta_tokens", r.residual_delta},
                    {"fully_decomposed", r.fully_decomposed}});
  ordered_json aggs = ordered_json::array();
  for (const auto &a : summary.aggregates)
    aggs.push_back({{"tier_config", a.tier_config},
                    {"pairs", a.pairs},
                    {"mean_sim_after_stage_a", a.mean_sim_after_stage_a},
                    {"mean_sim_final", a.mean_sim_final},
                    {"pairs_with_steps", a.with_steps},
                    {"fully_decomposed", a.fully_decomposed}});
  ordered_json failures = ordered_json::array();
  for (const auto &f : summary.failures)
    failures.push_back({{"pair_id", f.pair_id}, {"message", f.message}});
  return {{"aggregates", aggs}, {"rows", rows}, {"failures", failures}};
}

EvalSummary summary_from_json(const json &j) {
  EvalSummary s;
  try {
    for (const auto &r : j.at("rows"))
      s.rows.push_back({r.at("pair_id"), r.at("tier_config"), r.at("sim_after_stage_a"),
                        r.at("sim_final"), r.at("steps"), r.at("residual_delta_tokens"),
                        r.at("fully_decomposed")});
    for (const auto &a : j.at("aggregates"))
      s.aggregates.push_back({a.at("tier_config"), a.at("pairs"),
                              a.at("mean_sim_after_stage_a"), a.at("mean_sim_final"),
                              a.at("pairs_with_steps"), a.at("fully_decomposed")});
    for (const auto &f : j.at("failures"))
      s.failures.push_back({f.at("pair_id"), f.at("message")});
  } catch (const json::exception &e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed summary: ") + e.what());
  }
  return s;
}

namespace {

/// Shortest round-trip form, independent of the locale.
std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

} // namespace

std::string sims_csv(const EvalSummary &summary) {
  std::vector<std::string> order;
  for (const auto &r : summary.rows)
    if (std::find(order.begin(), order.end(), r.tier_config) == order.end())
      order.push_back(r.tier_config);

  std::string out = "pair_id,tier_config,sim_final\n";
  for (const auto &tier : order) {
    std::vector<const EvalRow *> rows;
    for (const auto &r : summary.rows)
      if (r.tier_config == tier)
        rows.push_back(&r);
    std::stable_sort(rows.begin(), rows.end(), [](const EvalRow *a, const EvalRow *b) {
      return a->sim_final < b->sim_final;
    });
    for (const auto *r : rows)
      out += r->pair_id + "," + tier + "," + format_double(r->sim_final) + "\n";
  }
  return out;
}

TraceCheck verify_trace(const json &report, const MethodAst &right, std::size_t samples,
                        std::uint64_t seed) {
  TraceCheck check;
  auto fail = [&](std::string msg) { check.problems.push_back(std::move(msg)); };
  if (!report.contains("snapshots") || !report.contains("steps")) {
    fail("report has no snapshots");
    return check;
  }
  const auto &steps = report.at("steps");
  const auto &snaps = report.at("snapshots");
  if (snaps.size() != steps.size() + 1) {
    fail("expected one snapshot per step plus the left method");
    return check;
  }

  std::vector<MethodAst> mids;
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    try {
      mids.push_back(parse_method(snaps[i].get<std::string>()));
    } catch (const Error &e) {
      fail("snapshot " + std::to_string(i) + " does not parse: " + e.what());
      return check;
    }
  }

  TargetDelta td(method_tokens(right));
  std::vector<std::size_t> deltas;
  for (const auto &m : mids)
    deltas.push_back(td.delta(m).total());

  std::size_t stage_a_end = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto &s = steps[i];
    const auto where = "step " + std::to_string(i) + ": ";
    const std::string rule_id = s.value("rule_id", "");
    if (s.value("stage", "") == "A")
      stage_a_end = i + 1;
    if (s.value("delta_before", std::size_t{0}) != deltas[i] ||
        s.value("delta_after", std::size_t{0}) != deltas[i + 1])
      fail(where + "recorded deltas do not match the snapshots");
    if (deltas[i + 1] >= deltas[i])
      fail(where + "delta does not strictly decrease");

    std::vector<Rewrite> found;
    try {
      found = find_rewrites(rule_by_id(rule_id), mids[i], &right);
    } catch (const Error &e) {
      fail(where + e.what());
      continue;
    }
    const auto next = snaps[i + 1].get<std::string>();
    const auto site = s.value("site", "");
    bool replayed = std::any_of(found.begin(), found.end(), [&](const Rewrite &r) {
      return r.site.summary() == site && print_method(r.result) == next;
    });
    if (!replayed)
      fail(where + rule_id + " has no site turning the snapshot into the next one");
    if (!check_equivalent(mids[i], mids[i + 1], samples, seed).consistent())
      fail(where + "snapshots are not equivalent");
  }

  const auto baseline = deltas.front();
  const auto residual = deltas.back();
  if (report.value("residual_delta_tokens", std::size_t{0}) != residual)
    fail("residual delta does not match the last snapshot");
  if (report.value("fully_decomposed", false) != (residual == 0))
    fail("fully_decomposed disagrees with the residual delta");
  if (report.value("sim_final", -1.0) != sim_from_deltas(residual, baseline).value)
    fail("sim_final does not match the snapshots");
  if (report.value("sim_after_stage_a", -1.0) !=
      sim_from_deltas(deltas[stage_a_end], baseline).value)
    fail("sim_after_stage_a does not match the snapshots");
  return check;
}

} // namespace refdecomp
