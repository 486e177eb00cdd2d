#include "refdecomp/harness.hpp"

#include "refdecomp/catalog.hpp"
#include "refdecomp/equivalence.hpp"
#include "refdecomp/error.hpp"
#include "refdecomp/syntax.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace refdecomp {

std::string read_text(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_atomic(const fs::path &path, const std::string &text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out)
      throw Error(ErrorKind::Io, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec)
    throw Error(ErrorKind::Io, "cannot rename " + tmp.string() + ": " + ec.message());
}

std::optional<Scrambled> scramble(const MethodAst &right, int k, TierSet tiers,
                                  std::mt19937_64 &rng, std::size_t gate_samples) {
  std::vector<const RewriteRule *> pool;
  for (const auto &r : list_rules())
    if (r.invertible && (tiers == TierSet::All || r.tier == Tier::Detector))
      pool.push_back(&r);
  if (pool.empty())
    throw Error(ErrorKind::InvalidArgument, "no invertible rule in the tier set");

  Scrambled out{right, {}};
  if (k <= 0)
    return out;
  EquivalenceGate gate(right, gate_samples, rng());
  // Draws per step before giving up; enough for every rule to be tried a few times.
  const std::size_t max_draws = pool.size() * 4;
  for (int step = 0; step < k; ++step) {
    bool applied = false;
    for (std::size_t draw = 0; draw < max_draws && !applied; ++draw) {
      const auto &rule = *pool[rng() % pool.size()];
      auto found = find_rewrites(rule, out.left);
      if (found.empty())
        continue;
      auto &pick = found[rng() % found.size()];
      if (!gate.accepts(pick.result))
        continue;
      out.ops.push_back({rule.id, pick.site.summary()});
      out.left = std::move(pick.result);
      applied = true;
    }
    if (!applied)
      return std::nullopt;
  }
  return out;
}

std::vector<std::pair<std::string, MethodAst>> load_seeds(const fs::path &seeds_dir) {
  if (!fs::is_directory(seeds_dir))
    throw Error(ErrorKind::Io, "not a directory: " + seeds_dir.string());
  std::vector<fs::path> files;
  for (const auto &e : fs::directory_iterator(seeds_dir))
    if (e.is_regular_file() && e.path().extension() == ".mj")
      files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw Error(ErrorKind::EmptyCorpus, "no .mj seed methods in " + seeds_dir.string());

  std::vector<std::pair<std::string, MethodAst>> seeds;
  for (const auto &f : files) {
    try {
      seeds.emplace_back(f.filename().string(), parse_method(read_text(f)));
    } catch (const Error &e) {
      throw Error(e.kind(), f.filename().string() + ": " + e.what());
    }
  }
  return seeds;
}

namespace {

std::string pair_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "pair-%03d", index);
  return buf;
}

ordered_json meta_to_json(const std::string &pair_id, const PairMeta &meta) {
  ordered_json ops = ordered_json::array();
  for (const auto &op : meta.ops)
    ops.push_back({{"rule_id", op.rule_id}, {"site", op.site}});
  return {{"pair_id", pair_id}, {"seed_method", meta.seed_method}, {"seed", meta.seed},
          {"k", meta.k}, {"ops", ops}};
}

std::optional<PairMeta> meta_from_file(const fs::path &path) {
  if (!fs::exists(path))
    return std::nullopt;
  auto j = json::parse(read_text(path), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    return std::nullopt;
  PairMeta m;
  m.seed_method = j.value("seed_method", "");
  m.seed = j.value("seed", std::uint64_t{0});
  m.k = j.value("k", 0);
  if (j.contains("ops") && j["ops"].is_array())
    for (const auto &op : j["ops"])
      m.ops.push_back({op.value("rule_id", ""), op.value("site", "")});
  return m;
}

} // namespace

GenerateReport generate_corpus(const fs::path &seeds_dir, const fs::path &out_dir,
                               const GenerateConfig &config) {
  if (config.k_max < 0 || config.n_pairs < 0 || config.attempts < 1)
    throw Error(ErrorKind::InvalidArgument, "k_max and n_pairs must be non-negative");
  auto seeds = load_seeds(seeds_dir);
  fs::create_directories(out_dir);

  GenerateReport report;
  for (int i = 0; i < config.n_pairs; ++i) {
    const auto id = pair_name(i);
    const auto &[seed_name, right] = seeds[static_cast<std::size_t>(i) % seeds.size()];
    std::mt19937_64 rng(pair_seed(config.seed, id));
    const int k = static_cast<int>(rng() % static_cast<std::uint64_t>(config.k_max + 1));

    std::optional<Scrambled> made;
    for (int a = 0; a < config.attempts && !made; ++a) {
      auto s = scramble(right, k, config.tiers, rng, config.step_samples);
      if (s && check_equivalent(s->left, right, config.pair_samples, rng()).consistent())
        made = std::move(s);
    }
    if (!made) {
      report.skipped.push_back(id + " (" + seed_name + ", k=" + std::to_string(k) +
                               "): no applicable scramble");
      continue;
    }

    auto dir = out_dir / id;
    fs::create_directories(dir);
    write_text_atomic(dir / "left.mj", print_method(made->left));
    write_text_atomic(dir / "right.mj", print_method(right));
    PairMeta meta{seed_name, config.seed, k, std::move(made->ops)};
    write_text_atomic(dir / "meta.json", meta_to_json(id, meta).dump(2) + "\n");
    report.written.push_back(id);
  }
  return report;
}

std::vector<PairRecord> load_corpus(const fs::path &corpus_dir) {
  if (!fs::is_directory(corpus_dir))
    throw Error(ErrorKind::Io, "not a directory: " + corpus_dir.string());
  std::vector<PairRecord> pairs;
  for (const auto &e : fs::directory_iterator(corpus_dir)) {
    if (!e.is_directory())
      continue;
    auto left = e.path() / "left.mj";
    auto right = e.path() / "right.mj";
    if (!fs::is_regular_file(left) || !fs::is_regular_file(right))
      continue;
    pairs.push_back({e.path().filename().string(), left, right,
                     meta_from_file(e.path() / "meta.json")});
  }
  if (pairs.empty())
    throw Error(ErrorKind::EmptyCorpus, "no pairs in " + corpus_dir.string());
  std::sort(pairs.begin(), pairs.end(),
            [](const PairRecord &a, const PairRecord &b) { return a.pair_id < b.pair_id; });
  return pairs;
}

} // namespace refdecomp
