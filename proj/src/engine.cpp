#include "nearsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "nearsim/candidate_filter.hpp"

namespace nearsim {
namespace {

unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Scores every candidate into its own slot; the output is independent of
// the thread count and scheduling.
std::vector<double> score_all(const InternedCorpus& corpus, std::span<const CandidatePair> pairs,
                              unsigned jobs) {
  std::vector<double> scores(pairs.size());
  constexpr std::size_t kChunk = 4096;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= pairs.size()) return;
      const std::size_t end = std::min(pairs.size(), begin + kChunk);
      for (std::size_t i = begin; i < end; ++i) {
        scores[i] = jaccard(corpus.tokens(pairs[i].first), corpus.tokens(pairs[i].second));
      }
    }
  };
  const unsigned threads = std::min<std::size_t>(jobs, (pairs.size() + kChunk - 1) / kChunk);
  if (threads <= 1) {
    worker();
    return scores;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return scores;
}

}  // namespace

RunResult run(std::span<const ShingleProfile> profiles, FilterStrategy strategy, double j,
              const EngineOptions& options) {
  const auto started = std::chrono::steady_clock::now();

  const CandidateSet set = candidates(profiles, strategy, j);
  const InternedCorpus corpus(profiles);
  const auto scores = score_all(corpus, set.pairs, resolve_jobs(options.jobs));

  RunResult result;
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    if (scores[i] >= j) {
      const auto& pair = set.pairs[i];
      result.records.push_back(make_record(profiles[pair.first].doc_id(), profiles[pair.second].doc_id(), scores[i]));
    }
  }
  std::sort(result.records.begin(), result.records.end(), pair_less);

  const auto elapsed = std::chrono::steady_clock::now() - started;
  result.stats.strategy = strategy;
  result.stats.doc_count = profiles.size();
  result.stats.comparisons = set.pairs.size();
  result.stats.dismissed = set.dismissed;
  result.stats.similar_pairs = result.records.size();
  result.stats.wall_time_ms =
      static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count());
  return result;
}

RecallAudit audit_results(FilterStrategy strategy, std::span<const SimilarityRecord> oracle,
                          std::span<const SimilarityRecord> found) {
  RecallAudit audit;
  audit.strategy = strategy;
  audit.oracle_pairs = oracle.size();
  std::set_difference(oracle.begin(), oracle.end(), found.begin(), found.end(), std::back_inserter(audit.missed),
                      pair_less);
  audit.found_pairs = audit.oracle_pairs - audit.missed.size();
  audit.recall = audit.oracle_pairs == 0
                     ? 1.0
                     : static_cast<double>(audit.found_pairs) / static_cast<double>(audit.oracle_pairs);
  return audit;
}

RecallAudit audit(std::span<const ShingleProfile> profiles, FilterStrategy strategy, double j,
                  const EngineOptions& options) {
  const RunResult oracle = run(profiles, FilterStrategy::kAllPairs, j, options);
  const RunResult found = run(profiles, strategy, j, options);
  return audit_results(strategy, oracle.records, found.records);
}

ComparisonDelta compare_runs(const RunResult& baseline, const RunResult& candidate) {
  ComparisonDelta delta;
  delta.baseline = baseline.stats.strategy;
  delta.candidate = candidate.stats.strategy;
  if (baseline.stats.comparisons > 0) {
    delta.reduction_ratio = 1.0 - static_cast<double>(candidate.stats.comparisons) /
                                      static_cast<double>(baseline.stats.comparisons);
  }
  std::set_difference(baseline.records.begin(), baseline.records.end(), candidate.records.begin(),
                      candidate.records.end(), std::back_inserter(delta.only_in_baseline), pair_less);
  std::set_difference(candidate.records.begin(), candidate.records.end(), baseline.records.begin(),
                      baseline.records.end(), std::back_inserter(delta.only_in_candidate), pair_less);
  return delta;
}

}  // namespace nearsim
