#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nearsim/config.hpp"
#include "nearsim/shingle.hpp"
#include "nearsim/similarity.hpp"

namespace nearsim {

struct RunStats {
  FilterStrategy strategy = FilterStrategy::kAllPairs;
  std::uint64_t doc_count = 0;
  // Jaccard evaluations performed.
  std::uint64_t comparisons = 0;
  // Pairs pruned by the length filter.
  std::uint64_t dismissed = 0;
  std::uint64_t similar_pairs = 0;
  std::uint64_t wall_time_ms = 0;
};

struct RunResult {
  // Canonical records sorted by (doc_a, doc_b).
  std::vector<SimilarityRecord> records;
  RunStats stats;
};

struct RecallAudit {
  FilterStrategy strategy = FilterStrategy::kAllPairs;
  std::uint64_t oracle_pairs = 0;
  std::uint64_t found_pairs = 0;
  // Oracle pairs the strategy failed to report, sorted.
  std::vector<SimilarityRecord> missed;
  // found_pairs / oracle_pairs, 1.0 when the oracle found nothing.
  double recall = 1.0;
};

struct EngineOptions {
  // Scoring threads; 0 picks std::thread::hardware_concurrency().
  unsigned jobs = 0;
};

// Generates candidates under `strategy`, scores each one once and keeps
// pairs with similarity >= j. Timing covers candidate generation and scoring.
RunResult run(std::span<const ShingleProfile> profiles, FilterStrategy strategy, double j,
              const EngineOptions& options = {});

// Diff of a strategy's output against the all-pairs oracle output. Both
// inputs must be sorted canonical record lists.
RecallAudit audit_results(FilterStrategy strategy, std::span<const SimilarityRecord> oracle,
                          std::span<const SimilarityRecord> found);

// Runs the oracle and `strategy` and diffs them.
RecallAudit audit(std::span<const ShingleProfile> profiles, FilterStrategy strategy, double j,
                  const EngineOptions& options = {});

struct ComparisonDelta {
  FilterStrategy baseline = FilterStrategy::kSetLength;
  FilterStrategy candidate = FilterStrategy::kWeightedLength;
  // 1 - candidate comparisons / baseline comparisons (0 when baseline did none).
  double reduction_ratio = 0.0;
  std::vector<SimilarityRecord> only_in_baseline;
  std::vector<SimilarityRecord> only_in_candidate;

  bool diverged() const noexcept { return !only_in_baseline.empty() || !only_in_candidate.empty(); }
};

ComparisonDelta compare_runs(const RunResult& baseline, const RunResult& candidate);

}  // namespace nearsim
