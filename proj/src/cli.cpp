#include "nearsim/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nearsim/corpus_io.hpp"
#include "nearsim/engine.hpp"
#include "nearsim/shingle.hpp"

namespace nearsim::cli {
namespace fs = std::filesystem;

namespace {

struct Invocation {
  std::string corpus_root;
  std::string file;
  std::size_t k = 5;
  double threshold = 0.9;
  std::string strategy = "weighted-length";
  std::string out_dir = "nearsim-out";
  std::string cache;
  bool no_normalize_whitespace = false;
  bool lowercase = false;
  unsigned jobs = 0;

  RunConfig config() const {
    return RunConfig{k, threshold, !no_normalize_whitespace, lowercase};
  }
};

struct LoadedCorpus {
  std::vector<ShingleProfile> profiles;
  std::vector<SkippedDocument> skipped;
};

LoadedCorpus load(const Invocation& inv, std::ostream& err) {
  const RunConfig config = inv.config();
  if (!inv.cache.empty() && fs::exists(inv.cache)) {
    auto profiles = load_profile_cache(inv.cache, config);
    err << "loaded " << profiles.size() << " profiles from cache " << inv.cache << "\n";
    return {std::move(profiles), {}};
  }
  Corpus corpus = ingest(inv.corpus_root, config, err, inv.jobs);
  if (!inv.cache.empty()) save_profile_cache(inv.cache, config, corpus.profiles);
  return {std::move(corpus.profiles), std::move(corpus.manifest.skipped)};
}

std::string percent(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", ratio * 100.0);
  return buf;
}

void print_summary(std::ostream& out, const RunStats& s) {
  out << to_string(s.strategy) << ": docs=" << s.doc_count << " comparisons=" << s.comparisons
      << " dismissed=" << s.dismissed << " similar_pairs=" << s.similar_pairs << " time_ms=" << s.wall_time_ms
      << "\n";
}

void print_pairs(std::ostream& os, std::string_view label, std::span<const SimilarityRecord> records) {
  for (const auto& r : records) os << "  " << label << " " << r.doc_a << " " << r.doc_b << " " << r.score << "\n";
}

Report base_report(const Invocation& inv, const LoadedCorpus& corpus) {
  Report report;
  report.config = inv.config();
  report.doc_count = corpus.profiles.size();
  report.skipped = corpus.skipped;
  return report;
}

int cmd_run(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const auto corpus = load(inv, err);
  const auto strategy = *parse_strategy(inv.strategy);
  auto result = run(corpus.profiles, strategy, inv.threshold, {inv.jobs});

  Report report = base_report(inv, corpus);
  report.stats.push_back(result.stats);
  report.records = std::move(result.records);
  write_report(report, inv.out_dir);
  print_summary(out, result.stats);
  return kOk;
}

int cmd_compare(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const auto corpus = load(inv, err);
  auto baseline = run(corpus.profiles, FilterStrategy::kSetLength, inv.threshold, {inv.jobs});
  auto candidate = run(corpus.profiles, FilterStrategy::kWeightedLength, inv.threshold, {inv.jobs});
  const auto delta = compare_runs(baseline, candidate);

  print_summary(out, baseline.stats);
  print_summary(out, candidate.stats);
  const auto divergent = delta.only_in_baseline.size() + delta.only_in_candidate.size();
  out << "comparison reduction=" << percent(delta.reduction_ratio) << " divergence=" << divergent << "\n";
  if (delta.diverged()) {
    out << "DIVERGENCE: " << divergent << " similar pair(s) differ between " << to_string(delta.baseline)
        << " and " << to_string(delta.candidate) << "\n";
    err << "warning: result sets diverge\n";
    print_pairs(err, "only-in-" + std::string(to_string(delta.baseline)), delta.only_in_baseline);
    print_pairs(err, "only-in-" + std::string(to_string(delta.candidate)), delta.only_in_candidate);
  }

  Report report = base_report(inv, corpus);
  report.stats = {baseline.stats, candidate.stats};
  report.records = std::move(baseline.records);
  report.comparison = delta;
  write_report(report, inv.out_dir);
  return kOk;
}

int cmd_audit(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const auto corpus = load(inv, err);
  const auto strategy = *parse_strategy(inv.strategy);
  auto oracle = run(corpus.profiles, FilterStrategy::kAllPairs, inv.threshold, {inv.jobs});
  auto found = run(corpus.profiles, strategy, inv.threshold, {inv.jobs});
  auto result = audit_results(strategy, oracle.records, found.records);

  print_summary(out, oracle.stats);
  print_summary(out, found.stats);
  char recall[32];
  std::snprintf(recall, sizeof recall, "%.6f", result.recall);
  out << "audit " << to_string(strategy) << ": oracle_pairs=" << result.oracle_pairs
      << " found_pairs=" << result.found_pairs << " recall=" << recall << " missed=" << result.missed.size()
      << "\n";
  print_pairs(out, "missed", result.missed);

  Report report = base_report(inv, corpus);
  report.stats = {oracle.stats, found.stats};
  report.records = std::move(found.records);
  report.audit = result;
  write_report(report, inv.out_dir);
  return result.missed.empty() ? kOk : kMissedPairs;
}

int cmd_shingle(const Invocation& inv, std::ostream& out, std::ostream& err) {
  std::ifstream in(inv.file, std::ios::binary);
  if (!in) {
    err << "error: cannot read " << inv.file << "\n";
    return kFatal;
  }
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto text = normalize(bytes, inv.config());
  if (text.replaced_sequences > 0) {
    err << "warning: " << inv.file << ": " << text.replaced_sequences
        << " invalid UTF-8 sequence(s) replaced with U+FFFD\n";
  }
  const auto profile = build_profile(inv.file, text.text, inv.config());

  out << "k=" << profile.k() << " entries=" << profile.entries().size() << "\n";
  for (const auto& e : profile.entries()) {
    out << nlohmann::json(e.shingle).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << " "
        << e.count << "\n";
  }
  out << "set_length=" << profile.set_length() << "\n";
  out << "weighted_length=" << profile.weighted_length() << "\n";
  return kOk;
}

void add_profile_flags(CLI::App* sub, Invocation& inv) {
  sub->add_option("--k", inv.k, "Shingle length in characters")->capture_default_str();
  sub->add_flag("--no-normalize-whitespace", inv.no_normalize_whitespace,
                "Keep whitespace runs and line breaks as they are");
  sub->add_flag("--lowercase", inv.lowercase, "Fold ASCII letters to lower case");
}

void add_corpus_flags(CLI::App* sub, Invocation& inv, bool with_strategy) {
  sub->add_option("corpus", inv.corpus_root, "Directory of text documents")->required();
  add_profile_flags(sub, inv);
  sub->add_option("--threshold", inv.threshold, "Minimum Jaccard similarity, in (0, 1]")->capture_default_str();
  if (with_strategy) {
    sub->add_option("--strategy", inv.strategy, "all-pairs | set-length | weighted-length")
        ->check(CLI::IsMember({"all-pairs", "set-length", "weighted-length"}))
        ->capture_default_str();
  }
  sub->add_option("--out", inv.out_dir, "Directory receiving pairs.csv and stats.json")->capture_default_str();
  sub->add_option("--cache", inv.cache, "Profile cache (JSON Lines); read if present, written otherwise");
  sub->add_option("--jobs", inv.jobs, "Worker threads, 0 = available parallelism")->capture_default_str();
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Near-duplicate document detection with length-filtered Jaccard joins", "nearsim"};
  app.require_subcommand(1);
  Invocation inv;

  auto* run_cmd = app.add_subcommand("run", "Find similar pairs with one filter strategy");
  add_corpus_flags(run_cmd, inv, true);
  auto* compare_cmd = app.add_subcommand("compare", "Run set-length and weighted-length side by side");
  add_corpus_flags(compare_cmd, inv, false);
  auto* audit_cmd = app.add_subcommand("audit", "Check a strategy's recall against all-pairs");
  add_corpus_flags(audit_cmd, inv, true);
  auto* shingle_cmd = app.add_subcommand("shingle", "Print one document's shingle profile");
  shingle_cmd->add_option("file", inv.file, "Text file")->required();
  add_profile_flags(shingle_cmd, inv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    validate(inv.config());
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(inv, out, err);
    if (compare_cmd->parsed()) return cmd_compare(inv, out, err);
    if (audit_cmd->parsed()) return cmd_audit(inv, out, err);
    return cmd_shingle(inv, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFatal;
  }
}

}  // namespace nearsim::cli
