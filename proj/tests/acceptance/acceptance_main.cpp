// Acceptance suite: one PASS/FAIL line per criterion. Exit status is non-zero
// when any criterion fails.
#include "refdecomp/catalog.hpp"
#include "refdecomp/decomposer.hpp"
#include "refdecomp/diffmetric.hpp"
#include "refdecomp/equivalence.hpp"
#include "refdecomp/error.hpp"
#include "refdecomp/harness.hpp"
#include "refdecomp/syntax.hpp"
#include "support/lcs_oracle.hpp"
#include "support/random_method.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <unistd.h>

namespace fs = std::filesystem;
using namespace refdecomp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Result {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char *title, const Result &r) {
  std::cout << "criterion " << id << " (" << title << "): " << (r.pass ? "PASS" : "FAIL")
            << " - " << r.detail << std::endl;
  failures += !r.pass;
}

std::string fmt(double v, int prec = 3) {
  std::ostringstream s;
  s.precision(prec);
  s << std::fixed << v;
  return s.str();
}

// ---- 1: metric oracle -------------------------------------------------------

Result metric_oracle() {
  const std::vector<Token> vocab{
      {TokenKind::Identifier, "a"},   {TokenKind::Identifier, "b"},
      {TokenKind::Identifier, "int"}, {TokenKind::Keyword, "int"},
      {TokenKind::Operator, "+"},     {TokenKind::Operator, "="},
      {TokenKind::Separator, ";"},    {TokenKind::IntLiteral, "1"},
      {TokenKind::LongLiteral, "1L"}, {TokenKind::StringLiteral, "\"a\""}};
  std::mt19937_64 rng(1);
  auto draw = [&] {
    std::vector<Token> seq(rng() % 41);
    for (auto &t : seq)
      t = vocab[rng() % vocab.size()];
    return seq;
  };
  // Ids assigned by the test, keyed on (kind, lexeme).
  std::map<std::pair<int, std::string>, std::uint32_t> ids;
  auto to_ids = [&](const std::vector<Token> &seq) {
    std::vector<std::uint32_t> out;
    for (const auto &t : seq) {
      auto key = std::make_pair(static_cast<int>(t.kind), t.lexeme);
      auto it = ids.emplace(key, static_cast<std::uint32_t>(ids.size())).first;
      out.push_back(it->second);
    }
    return out;
  };

  auto t0 = Clock::now();
  std::size_t mismatches = 0, brute_checked = 0;
  for (int i = 0; i < 10000; ++i) {
    auto a = draw(), b = draw();
    auto ia = to_ids(a), ib = to_ids(b);
    std::size_t lcs = testing::lcs_dp(ia, ib);
    if (std::min(ia.size(), ib.size()) <= 12) {
      ++brute_checked;
      mismatches += testing::lcs_brute_force(ia, ib) != lcs;
    }
    auto d = token_delta(a, b);
    mismatches += d.deleted != a.size() - lcs || d.added != b.size() - lcs;
  }
  double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 30.0,
          "10000 pairs (" + std::to_string(brute_checked) + " also enumerated exhaustively), " +
              std::to_string(mismatches) + " mismatches, " + fmt(secs, 2) + " s"};
}

// ---- 2: rule soundness -------------------------------------------------------

/// Random method with up to three random rewrites applied, so that sites of
/// the inverse forms occur as well.
MethodAst varied_method(std::mt19937_64 &rng) {
  testing::GenOptions opt;
  opt.redundant_paren = 0.1;
  auto m = testing::random_method(rng, opt);
  const auto &rules = list_rules();
  for (int s = static_cast<int>(rng() % 4); s > 0; --s) {
    auto found = find_rewrites(rules[rng() % rules.size()], m);
    if (!found.empty())
      m = found[rng() % found.size()].result;
  }
  return m;
}

Result rule_soundness(const std::vector<std::pair<std::string, MethodAst>> &seeds) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(2);
  std::vector<MethodAst> methods;
  for (int i = 0; i < 1000; ++i)
    methods.push_back(varied_method(rng));
  for (const auto &s : seeds)
    methods.push_back(s.second);

  std::size_t matches = 0, violations = 0;
  std::map<std::string, std::size_t> per_rule;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const auto &m = methods[i];
    for (const auto &rule : list_rules()) {
      for (const auto &site : find_matches(rule, m)) {
        ++matches;
        ++per_rule[rule.id];
        try {
          auto out = apply_match(m, site);
          if (!check_equivalent(m, out, 200, i).consistent()) {
            ++violations;
            std::cerr << "  unsound: " << site.summary() << "\n" << print_method(m) << "\n";
          }
        } catch (const Error &e) {
          ++violations;
          std::cerr << "  apply failed: " << site.summary() << ": " << e.what() << "\n";
        }
      }
    }
  }
  std::size_t unexercised = 0;
  for (const auto &rule : list_rules())
    if (!per_rule.count(rule.id)) {
      ++unexercised;
      std::cerr << "  no site for " << rule.id << "\n";
    }
  double secs = seconds_since(t0);
  return {violations == 0 && unexercised == 0 && secs < 600.0,
          std::to_string(methods.size()) + " methods, " + std::to_string(matches) +
              " matches, " + std::to_string(violations) + " violations, " +
              std::to_string(unexercised) + " rules without sites, " + fmt(secs, 1) + " s"};
}

// ---- 3: inverse round trip ------------------------------------------------------

Result inverse_round_trip() {
  std::mt19937_64 rng(3);
  std::size_t rules = 0, short_rules = 0, broken = 0;
  for (const auto &rule : list_rules()) {
    if (!rule.invertible)
      continue;
    ++rules;
    const auto &inverse = rule_by_id(rule.inverse_id);
    int cycles = 0;
    for (int attempt = 0; attempt < 5000 && cycles < 100; ++attempt) {
      auto m = varied_method(rng);
      auto found = find_rewrites(rule, m);
      if (found.empty()) {
        // Create a site by applying the inverse first.
        auto seedable = find_rewrites(inverse, m);
        if (seedable.empty())
          continue;
        m = seedable[rng() % seedable.size()].result;
        found = find_rewrites(rule, m);
        if (found.empty())
          continue;
      }
      const auto &fwd = found[rng() % found.size()];
      auto want = method_tokens(m);
      bool restored = false;
      for (const auto &back : find_rewrites(inverse, fwd.result, &m))
        if (method_tokens(back.result) == want) {
          restored = true;
          break;
        }
      if (!restored) {
        ++broken;
        std::cerr << "  no inverse for " << fwd.site.summary() << "\n"
                  << print_method(m) << "\n";
      }
      ++cycles;
    }
    if (cycles < 100) {
      ++short_rules;
      std::cerr << "  only " << cycles << " cycles for " << rule.id << "\n";
    }
  }
  return {broken == 0 && short_rules == 0,
          std::to_string(rules) + " invertible rules x 100 cycles, " + std::to_string(broken) +
              " not restored, " + std::to_string(short_rules) + " rules short of cycles"};
}

// ---- 4, 5, 7: corpus evaluation -------------------------------------------------------

class ScratchDir {
public:
  ScratchDir() : path_(fs::temp_directory_path() / ("refdecomp-accept-" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }
  ScratchDir(const ScratchDir &) = delete;
  ScratchDir &operator=(const ScratchDir &) = delete;
  const fs::path &path() const { return path_; }

private:
  fs::path path_;
};

std::map<std::string, std::string> tree_bytes(const fs::path &root) {
  std::map<std::string, std::string> out;
  for (const auto &e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file())
      out[fs::relative(e.path(), root).string()] = read_text(e.path());
  return out;
}

struct CorpusRun {
  EvalSummary summary;
  double eval_seconds = 0.0;
  fs::path out_dir;
};

const TierAggregate &tier(const EvalSummary &s, const char *name) {
  for (const auto &a : s.aggregates)
    if (a.tier_config == name)
      return a;
  throw Error(ErrorKind::InvalidArgument, std::string("no rows for tier ") + name);
}

Result recovery(const CorpusRun &run, std::size_t generated) {
  const auto &all = tier(run.summary, "all");
  const auto &det = tier(run.summary, "detector");
  double full_rate = static_cast<double>(all.fully_decomposed) / static_cast<double>(all.pairs);
  std::map<std::string, double> det_sim;
  for (const auto &r : run.summary.rows)
    if (r.tier_config == "detector")
      det_sim[r.pair_id] = r.sim_final;
  std::size_t dominance_breaks = 0;
  for (const auto &r : run.summary.rows)
    if (r.tier_config == "all" && r.sim_final < det_sim[r.pair_id])
      ++dominance_breaks;

  bool pass = generated == 200 && all.pairs == 200 && run.summary.failures.empty() &&
              full_rate >= 0.90 && all.mean_sim_final >= 0.95 &&
              det.mean_sim_final < all.mean_sim_final;
  return {pass, std::to_string(all.pairs) + " pairs; full tiers: sim=1 on " +
                    fmt(100 * full_rate, 1) + "%, mean " + fmt(all.mean_sim_final, 4) +
                    "; detector tier: mean " + fmt(det.mean_sim_final, 4) + ", sim=1 on " +
                    std::to_string(det.fully_decomposed) + "; pairs where full < detector: " +
                    std::to_string(dominance_breaks)};
}

Result monotone_and_deterministic(const CorpusRun &first, const CorpusRun &second,
                                  const fs::path &corpus, bool corpus_reproduced) {
  std::size_t traces = 0, non_monotone = 0, replay_failures = 0;
  for (const auto &rec : load_corpus(corpus)) {
    auto right = parse_method(read_text(rec.right_path));
    for (const char *t : {"detector", "all"}) {
      auto j = nlohmann::json::parse(
          read_text(first.out_dir / "traces" / t / (rec.pair_id + ".json")));
      ++traces;
      for (const auto &s : j.at("steps"))
        non_monotone += s.at("delta_after").get<std::size_t>() >=
                        s.at("delta_before").get<std::size_t>();
      if (!verify_trace(j, right).ok())
        ++replay_failures;
    }
  }
  bool identical = tree_bytes(first.out_dir) == tree_bytes(second.out_dir);
  return {non_monotone == 0 && replay_failures == 0 && identical && corpus_reproduced,
          std::to_string(traces) + " traces, " + std::to_string(non_monotone) +
              " non-decreasing steps, " + std::to_string(replay_failures) +
              " failed replays; rerun reports " + (identical ? "byte-identical" : "DIFFER") +
              "; regenerated corpus " + (corpus_reproduced ? "byte-identical" : "DIFFERS")};
}

// ---- 6: degenerate cases -------------------------------------------------------------

Result degenerate_cases() {
  auto same = parse_method("int f(int x) { int y = x * 2; return y; }");
  auto t1 = decompose_pair(same, same, {});
  auto left = parse_method("int f(int x) { return x + 1; }");
  auto right = parse_method("int f(int x) { return x + 2; }");
  auto t2 = decompose_pair(left, right, {});
  bool ok1 = t1.sim_final == 1.0 && t1.steps.empty() && t1.fully_decomposed;
  bool ok2 = t2.sim_final == 0.0 && t2.steps.empty() && !t2.fully_decomposed;
  return {ok1 && ok2, "identical pair: sim " + fmt(t1.sim_final, 1) + ", " +
                          std::to_string(t1.steps.size()) + " steps; x+1 vs x+2: sim " +
                          fmt(t2.sim_final, 1) + ", " + std::to_string(t2.steps.size()) +
                          " steps, fully_decomposed " + (t2.fully_decomposed ? "true" : "false")};
}

// ---- 7: performance -------------------------------------------------------------------

Result performance(const CorpusRun &run, const fs::path &corpus) {
  // Per-pair time over the evaluation corpus plus larger random pairs of
  // 150 to 200 tokens.
  std::vector<std::pair<MethodAst, MethodAst>> pairs;
  for (const auto &rec : load_corpus(corpus))
    pairs.emplace_back(parse_method(read_text(rec.left_path)),
                       parse_method(read_text(rec.right_path)));
  std::mt19937_64 rng(7);
  testing::GenOptions opt;
  opt.max_stmts = 20;
  std::size_t large = 0;
  for (int attempt = 0; attempt < 2000 && large < 20; ++attempt) {
    auto right = testing::random_method(rng, opt);
    auto n = method_tokens(right).size();
    if (n < 150 || n > 190)
      continue;
    auto s = scramble(right, 5, TierSet::All, rng);
    if (!s || method_tokens(s->left).size() > 200)
      continue;
    pairs.emplace_back(s->left, right);
    ++large;
  }

  double worst = 0.0;
  std::size_t max_tokens = 0;
  for (const auto &[l, r] : pairs) {
    auto t0 = Clock::now();
    decompose_pair(l, r, {}, "timing");
    worst = std::max(worst, seconds_since(t0));
    max_tokens = std::max({max_tokens, method_tokens(l).size(), method_tokens(r).size()});
  }
  bool pass = worst <= 5.0 && run.eval_seconds <= 600.0 && large == 20;
  return {pass, "slowest of " + std::to_string(pairs.size()) + " pairs (up to " +
                    std::to_string(max_tokens) + " tokens): " + fmt(worst, 3) +
                    " s; 200-pair eval over both tier sets: " + fmt(run.eval_seconds, 1) + " s"};
}

CorpusRun evaluate(const fs::path &corpus, const fs::path &out) {
  EvalConfig c;
  c.out_dir = out;
  c.emit_snapshots = true;
  c.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto t0 = Clock::now();
  auto s = eval_corpus(corpus, c);
  return {std::move(s), seconds_since(t0), out};
}

} // namespace

int main() {
  try {
    const fs::path seeds_dir = REFDECOMP_SEEDS_DIR;
    auto seeds = load_seeds(seeds_dir);

    report(1, "metric oracle", metric_oracle());
    report(2, "rule soundness", rule_soundness(seeds));
    report(3, "inverse round trip", inverse_round_trip());

    ScratchDir scratch;
    GenerateConfig g;
    g.k_max = 5;
    g.n_pairs = 200;
    g.seed = 2024;
    auto gen = generate_corpus(seeds_dir, scratch.path() / "corpus", g);
    for (const auto &s : gen.skipped)
      std::cerr << "  skipped " << s << "\n";
    generate_corpus(seeds_dir, scratch.path() / "corpus-again", g);
    bool corpus_reproduced =
        tree_bytes(scratch.path() / "corpus") == tree_bytes(scratch.path() / "corpus-again");

    auto first = evaluate(scratch.path() / "corpus", scratch.path() / "eval-1");
    auto second = evaluate(scratch.path() / "corpus", scratch.path() / "eval-2");

    report(4, "recovery", recovery(first, gen.written.size()));
    report(5, "monotonicity and determinism",
           monotone_and_deterministic(first, second, scratch.path() / "corpus", corpus_reproduced));
    report(6, "degenerate cases", degenerate_cases());
    report(7, "performance", performance(first, scratch.path() / "corpus"));
  } catch (const std::exception &e) {
    std::cout << "acceptance aborted: " << e.what() << std::endl;
    return 2;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
