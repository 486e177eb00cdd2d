// refdecomp: command-line front end for decomposition, evaluation and corpus
// generation.
#include "refdecomp/catalog.hpp"
#include "refdecomp/decomposer.hpp"
#include "refdecomp/equivalence.hpp"
#include "refdecomp/error.hpp"
#include "refdecomp/harness.hpp"
#include "refdecomp/syntax.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using namespace refdecomp;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitCounterexample = 3;

std::uint64_t default_seed() {
  const char *env = std::getenv("REFDECOMP_SEED");
  if (!env || !*env)
    return 0;
  std::uint64_t v = 0;
  std::string_view text(env);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorKind::InvalidArgument, "REFDECOMP_SEED is not an unsigned integer");
  return v;
}

MethodAst load_method(const std::string &path) {
  try {
    return parse_method(read_text(path));
  } catch (const Error &e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

struct SearchFlags {
  std::string tiers = "all";
  int beam = 1;
  int max_steps = 200;
  std::uint64_t seed = 0;
  std::size_t samples = kDefaultSamples;
  bool no_verify = false;
  bool snapshots = false;

  void attach(CLI::App &cmd) {
    cmd.add_option("--beam", beam, "Beam width (1 = greedy)")->check(CLI::PositiveNumber);
    cmd.add_option("--max-steps", max_steps, "Step cap for the search")->check(CLI::NonNegativeNumber);
    cmd.add_option("--seed", seed, "Seed of the equivalence gate (default: $REFDECOMP_SEED or 0)");
    cmd.add_option("--samples", samples, "Inputs per equivalence gate check")->check(CLI::PositiveNumber);
    cmd.add_flag("--no-verify", no_verify, "Skip the per-step equivalence gate");
    cmd.add_flag("--emit-snapshots", snapshots, "Include intermediate methods in traces");
  }

  DecomposeConfig config() const {
    DecomposeConfig c;
    c.tiers = parse_tier_set(tiers);
    c.beam_width = beam;
    c.max_steps = max_steps;
    c.verify = !no_verify;
    c.gate_samples = samples;
    c.seed = seed;
    return c;
  }
};

std::string describe_input(const InputVector &input) {
  std::string out = "(";
  for (std::size_t i = 0; i < input.size(); ++i)
    out += (i ? ", " : "") + display(input[i]);
  return out + ")";
}

int run(int argc, char **argv) {
  CLI::App app{"Decompose pairs of equivalent MiniJ methods into catalog rewrites"};
  app.require_subcommand(1);
  const auto seed = default_seed();

  SearchFlags dflags;
  dflags.seed = seed;
  std::string left_path, right_path, pair_id;
  bool precheck = false;
  auto *decompose = app.add_subcommand("decompose", "Decompose one pair; report JSON on stdout");
  decompose->add_option("left", left_path, "Left method file")->required();
  decompose->add_option("right", right_path, "Right method file")->required();
  decompose->add_option("--tiers", dflags.tiers, "detector or all")
      ->check(CLI::IsMember({"detector", "all"}));
  decompose->add_option("--pair-id", pair_id, "Identifier recorded in the report");
  decompose->add_flag("--precheck", precheck, "Check the pair for equivalence first");
  dflags.attach(*decompose);

  SearchFlags eflags;
  eflags.seed = seed;
  std::string corpus_dir, out_dir;
  std::vector<std::string> tier_list{"detector", "all"};
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto *eval = app.add_subcommand("eval", "Evaluate a corpus; writes traces, summary.json and sims.csv");
  eval->add_option("corpus", corpus_dir, "Corpus directory")->required();
  eval->add_option("-o,--out", out_dir, "Output directory")->required();
  eval->add_option("--tiers", tier_list, "Tier sets to evaluate")
      ->check(CLI::IsMember({"detector", "all"}))
      ->delimiter(',');
  eval->add_option("-j,--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  eflags.attach(*eval);

  std::string seeds_dir, gen_out;
  GenerateConfig gen;
  gen.seed = seed;
  std::string gen_tiers = "all";
  auto *generate = app.add_subcommand("generate", "Generate scrambled pairs from seed methods");
  generate->add_option("seeds", seeds_dir, "Directory of seed .mj methods")->required();
  generate->add_option("out", gen_out, "Output corpus directory")->required();
  generate->add_option("--k-max", gen.k_max, "Largest scramble length")->check(CLI::NonNegativeNumber);
  generate->add_option("-n,--pairs", gen.n_pairs, "Number of pairs")->check(CLI::NonNegativeNumber);
  generate->add_option("--seed", gen.seed, "Generator seed (default: $REFDECOMP_SEED or 0)");
  generate->add_option("--tiers", gen_tiers, "Tiers the scrambler draws from")
      ->check(CLI::IsMember({"detector", "all"}));

  std::string a_path, b_path;
  std::size_t samples = kDefaultSamples;
  std::uint64_t eq_seed = seed;
  auto *check = app.add_subcommand("check-equivalence", "Differential test of two methods");
  check->add_option("a", a_path, "First method file")->required();
  check->add_option("b", b_path, "Second method file")->required();
  check->add_option("-n,--samples", samples, "Number of inputs")->check(CLI::PositiveNumber);
  check->add_option("--seed", eq_seed, "Input seed (default: $REFDECOMP_SEED or 0)");

  auto *catalog = app.add_subcommand("catalog", "Inspect the rewrite catalog");
  catalog->require_subcommand(1);
  auto *list = catalog->add_subcommand("list", "Print id, tier, name, invertibility and inverse id");

  std::string report_path, vright_path;
  std::size_t vsamples = kDefaultSamples;
  std::uint64_t vseed = seed;
  auto *verify = app.add_subcommand("verify-trace", "Replay a report produced with --emit-snapshots");
  verify->add_option("report", report_path, "Report JSON")->required();
  verify->add_option("right", vright_path, "Right method file")->required();
  verify->add_option("-n,--samples", vsamples, "Inputs per step check")->check(CLI::PositiveNumber);
  verify->add_option("--seed", vseed, "Input seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*decompose) {
    auto left = load_method(left_path);
    auto right = load_method(right_path);
    auto config = dflags.config();
    config.precheck = precheck;
    auto trace = decompose_pair(left, right, config, pair_id);
    if (trace.not_equivalent)
      std::cerr << "warning: the pair is not equivalent on the sampled inputs\n";
    std::cout << trace_to_json(trace, config.tiers, dflags.snapshots).dump(2) << "\n";
    return 0;
  }

  if (*eval) {
    EvalConfig config;
    config.decompose = eflags.config();
    config.tier_sets.clear();
    for (const auto &t : tier_list)
      config.tier_sets.push_back(parse_tier_set(t));
    config.out_dir = out_dir;
    config.jobs = jobs;
    config.emit_snapshots = eflags.snapshots;
    auto summary = eval_corpus(corpus_dir, config);
    for (const auto &f : summary.failures)
      std::cerr << "failed: " << f.pair_id << ": " << f.message << "\n";
    std::cout << summary_to_json(summary)["aggregates"].dump(2) << "\n";
    return 0;
  }

  if (*generate) {
    gen.tiers = parse_tier_set(gen_tiers);
    auto report = generate_corpus(seeds_dir, gen_out, gen);
    for (const auto &s : report.skipped)
      std::cerr << "skipped: " << s << "\n";
    std::cout << "wrote " << report.written.size() << " pairs to " << gen_out << "\n";
    return 0;
  }

  if (*check) {
    auto a = load_method(a_path);
    auto b = load_method(b_path);
    auto verdict = check_equivalent(a, b, samples, eq_seed);
    if (verdict.consistent()) {
      std::cout << "consistent on " << samples << " inputs\n";
      return 0;
    }
    const auto &cx = *verdict.counterexample;
    std::cout << "counterexample " << describe_input(cx.input) << ": " << cx.outcome_a.str()
              << " vs " << cx.outcome_b.str() << "\n";
    return kExitCounterexample;
  }

  if (*list) {
    for (const auto &r : list_rules())
      std::cout << r.id << "\t" << to_string(r.tier) << "\t" << r.name << "\t"
                << (r.invertible ? "yes" : "no") << "\t" << r.inverse_id << "\n";
    return 0;
  }

  if (*verify) {
    auto report = nlohmann::json::parse(read_text(report_path), nullptr, false);
    if (report.is_discarded())
      throw Error(ErrorKind::Parse, report_path + ": not valid JSON");
    auto result = verify_trace(report, load_method(vright_path), vsamples, vseed);
    for (const auto &p : result.problems)
      std::cout << p << "\n";
    if (result.ok())
      std::cout << "trace verified\n";
    return result.ok() ? 0 : 1;
  }
  return kExitUsage;
}

} // namespace

int main(int argc, char **argv) {
  try {
    return run(argc, argv);
  } catch (const Error &e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    switch (e.kind()) {
    case ErrorKind::Lexical:
    case ErrorKind::Parse:
    case ErrorKind::Type:
    case ErrorKind::InvalidArgument:
    case ErrorKind::EmptyCorpus:
    case ErrorKind::SignatureMismatch:
    case ErrorKind::UnsupportedType:
    case ErrorKind::Io:
      return kExitUsage;
    default:
      return 1;
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
