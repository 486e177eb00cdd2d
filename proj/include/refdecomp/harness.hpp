#pragma once

#include "refdecomp/ast.hpp"
#include "refdecomp/decomposer.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace refdecomp {

// ---- scrambling -------------------------------------------------------------

struct ScrambleOp {
  std::string rule_id;
  std::string site;
};

struct Scrambled {
  MethodAst left;
  std::vector<ScrambleOp> ops;
};

/// Applies `k` randomly drawn invertible rules from `tiers` to `right`. Each
/// step must pass a differential gate against `right` with `gate_samples`
/// inputs. Empty when fewer than `k` steps could be applied.
std::optional<Scrambled> scramble(const MethodAst &right, int k, TierSet tiers,
                                  std::mt19937_64 &rng,
                                  std::size_t gate_samples = kDefaultSamples);

// ---- corpus -----------------------------------------------------------------

struct PairMeta {
  std::string seed_method;
  std::uint64_t seed = 0;
  int k = 0;
  std::vector<ScrambleOp> ops;
};

struct PairRecord {
  std::string pair_id;
  std::filesystem::path left_path;
  std::filesystem::path right_path;
  std::optional<PairMeta> meta;
};

struct GenerateConfig {
  int k_max = 5;
  int n_pairs = 200;
  std::uint64_t seed = 0;
  TierSet tiers = TierSet::All;
  std::size_t step_samples = 200;
  /// Inputs for the final left/right check of every pair.
  std::size_t pair_samples = 500;
  int attempts = 5;
};

struct GenerateReport {
  std::vector<std::string> written;
  /// One line per pair that could not be produced.
  std::vector<std::string> skipped;
};

/// Writes `pair-NNN/{left.mj,right.mj,meta.json}` under `out_dir`. Right is
/// a seed method (round robin over the sorted `*.mj` files of `seeds_dir`),
/// Left its scramble with k drawn uniformly from 0..k_max. Output depends
/// only on the seed files and the config.
GenerateReport generate_corpus(const std::filesystem::path &seeds_dir,
                               const std::filesystem::path &out_dir,
                               const GenerateConfig &config);

/// Reads seed methods (sorted `*.mj` files). Throws EmptyCorpus when none.
std::vector<std::pair<std::string, MethodAst>>
load_seeds(const std::filesystem::path &seeds_dir);

/// Pair directories sorted by id. Throws Io for a missing directory and
/// EmptyCorpus when no pair is found.
std::vector<PairRecord> load_corpus(const std::filesystem::path &corpus_dir);

std::string read_text(const std::filesystem::path &path);
/// Writes through a temporary file in the same directory and renames it.
void write_text_atomic(const std::filesystem::path &path, const std::string &text);

// ---- evaluation ---------------------------------------------------------------

struct EvalConfig {
  DecomposeConfig decompose;
  /// Each pair is decomposed once per entry; decompose.tiers is ignored.
  std::vector<TierSet> tier_sets{TierSet::Detector, TierSet::All};
  /// Artifacts are skipped when empty.
  std::filesystem::path out_dir;
  int jobs = 1;
  bool emit_snapshots = false;
};

struct EvalRow {
  std::string pair_id;
  std::string tier_config;
  double sim_after_stage_a = 0.0;
  double sim_final = 0.0;
  std::size_t steps = 0;
  std::size_t residual_delta = 0;
  bool fully_decomposed = false;
};

struct TierAggregate {
  std::string tier_config;
  std::size_t pairs = 0;
  double mean_sim_after_stage_a = 0.0;
  double mean_sim_final = 0.0;
  std::size_t with_steps = 0;
  std::size_t fully_decomposed = 0;
};

struct PairFailure {
  std::string pair_id;
  std::string message;
};

struct EvalSummary {
  /// Grouped by tier set in configuration order, then sorted by pair id.
  std::vector<EvalRow> rows;
  std::vector<TierAggregate> aggregates;
  std::vector<PairFailure> failures;
};

/// Aggregates per tier config, in order of first appearance in `rows`.
std::vector<TierAggregate> aggregate(const std::vector<EvalRow> &rows);

/// Decomposes every pair of the corpus under each tier set, in parallel. With
/// an output directory, writes `traces/<tier>/<pair>.json`, `summary.json`
/// and `sims.csv`.
EvalSummary eval_corpus(const std::filesystem::path &corpus_dir, const EvalConfig &config);

// ---- reports ---------------------------------------------------------------

nlohmann::ordered_json trace_to_json(const DecompositionTrace &trace, TierSet tiers,
                                     bool snapshots);
nlohmann::ordered_json summary_to_json(const EvalSummary &summary);
EvalSummary summary_from_json(const nlohmann::json &j);
/// `pair_id,tier_config,sim_final` rows, ascending by sim within each tier
/// config.
std::string sims_csv(const EvalSummary &summary);

struct TraceCheck {
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
};

/// Replays a report with snapshots: every step must be a site of its rule on
/// the previous snapshot that produces the next one, strictly reduce the
/// delta to `right`, and preserve behavior over `samples` inputs.
TraceCheck verify_trace(const nlohmann::json &report, const MethodAst &right,
                        std::size_t samples = kDefaultSamples, std::uint64_t seed = 0);

} // namespace refdecomp
