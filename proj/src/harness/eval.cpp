#include "refdecomp/harness.hpp"

#include "refdecomp/error.hpp"
#include "refdecomp/syntax.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace fs = std::filesystem;

namespace refdecomp {

namespace {

struct ParsedPair {
  std::string pair_id;
  MethodAst left;
  MethodAst right;
};

struct Task {
  const ParsedPair *pair;
  TierSet tiers;
  std::size_t tier_index;
};

/// Runs `work(i)` for i in [0, n) on up to `jobs` threads. The first
/// exception is rethrown after all workers stop.
template <class F> void parallel_for(std::size_t n, int jobs, F work) {
  const auto workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        work(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
        next = n;
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back(run);
  }
  if (error)
    std::rethrow_exception(error);
}

} // namespace

EvalSummary eval_corpus(const fs::path &corpus_dir, const EvalConfig &config) {
  if (config.tier_sets.empty())
    throw Error(ErrorKind::InvalidArgument, "no tier set configured");
  auto records = load_corpus(corpus_dir);

  EvalSummary summary;
  std::vector<ParsedPair> pairs;
  for (const auto &rec : records) {
    try {
      pairs.push_back({rec.pair_id, parse_method(read_text(rec.left_path)),
                       parse_method(read_text(rec.right_path))});
    } catch (const Error &e) {
      summary.failures.push_back({rec.pair_id, e.what()});
    }
  }

  std::vector<Task> tasks;
  for (std::size_t t = 0; t < config.tier_sets.size(); ++t)
    for (const auto &p : pairs)
      tasks.push_back({&p, config.tier_sets[t], t});

  if (!config.out_dir.empty())
    for (auto tiers : config.tier_sets)
      fs::create_directories(config.out_dir / "traces" / to_string(tiers));

  std::vector<EvalRow> rows(tasks.size());
  std::vector<std::string> errors(tasks.size());
  parallel_for(tasks.size(), config.jobs, [&](std::size_t i) {
    const auto &task = tasks[i];
    auto dc = config.decompose;
    dc.tiers = task.tiers;
    DecompositionTrace trace;
    try {
      trace = decompose_pair(task.pair->left, task.pair->right, dc, task.pair->pair_id);
    } catch (const Error &e) {
      // Signature mismatches and similar per-pair problems.
      errors[i] = e.what();
      return;
    }
    rows[i] = {trace.pair_id,        to_string(task.tiers), trace.sim_after_stage_a,
               trace.sim_final,      trace.steps.size(),    trace.residual_delta,
               trace.fully_decomposed};
    if (!config.out_dir.empty()) {
      auto path = config.out_dir / "traces" / to_string(task.tiers) / (trace.pair_id + ".json");
      write_text_atomic(path, trace_to_json(trace, task.tiers, config.emit_snapshots).dump(2) + "\n");
    }
  });

  // Tasks are already grouped by tier set in config order, then by pair id.
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (errors[i].empty())
      summary.rows.push_back(std::move(rows[i]));
    else
      summary.failures.push_back({tasks[i].pair->pair_id + " [" + to_string(tasks[i].tiers) + "]",
                                  errors[i]});
  }
  std::sort(summary.failures.begin(), summary.failures.end(),
            [](const PairFailure &a, const PairFailure &b) { return a.pair_id < b.pair_id; });
  summary.aggregates = aggregate(summary.rows);

  if (!config.out_dir.empty()) {
    write_text_atomic(config.out_dir / "summary.json", summary_to_json(summary).dump(2) + "\n");
    write_text_atomic(config.out_dir / "sims.csv", sims_csv(summary));
  }
  return summary;
}

} // namespace refdecomp
