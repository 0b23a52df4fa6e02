#include <doctest.h>

#include <random>

#include "nearsim/engine.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

using namespace nearsim;

namespace {

constexpr FilterStrategy kAll[] = {FilterStrategy::kAllPairs, FilterStrategy::kSetLength,
                                   FilterStrategy::kWeightedLength};

bool canonical(const std::vector<SimilarityRecord>& records) {
  for (const auto& r : records) {
    if (!(r.doc_a < r.doc_b)) return false;
  }
  return std::is_sorted(records.begin(), records.end(), pair_less) &&
         std::adjacent_find(records.begin(), records.end(), [](const auto& a, const auto& b) {
           return !pair_less(a, b);
         }) == records.end();
}

bool subset(const std::vector<SimilarityRecord>& inner, const std::vector<SimilarityRecord>& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end(), pair_less);
}

}  // namespace

TEST_CASE("two identical documents form one pair with score 1") {
  const auto profiles = synthetic::profiles_of({"the quick brown fox", "the quick brown fox"}, 3);
  for (auto s : kAll) {
    const auto result = run(profiles, s, 0.9);
    REQUIRE(result.records.size() == 1);
    CHECK(result.records[0] == SimilarityRecord{"doc00000", "doc00001", 1.0});
    CHECK(result.stats.comparisons == 1);
    CHECK(result.stats.dismissed == 0);
    CHECK(result.stats.similar_pairs == 1);
    CHECK(result.stats.doc_count == 2);
    CHECK(result.stats.strategy == s);
  }
}

TEST_CASE("30 random documents: results match scoring all pairs by brute force") {
  std::mt19937_64 rng(30);
  synthetic::CorpusShape shape;
  shape.docs = 30;
  shape.near_duplicate_rate = 0.5;
  const auto profiles = synthetic::profiles_of(synthetic::zipf_texts(rng, shape), 5);
  for (double j : {0.5, 0.7, 0.9}) {
    const auto expected = oracle::similar_pairs(profiles, j);
    const auto oracle_run = run(profiles, FilterStrategy::kAllPairs, j);
    CHECK(oracle_run.records == expected);
    CHECK(oracle_run.stats.comparisons == 435);
    CHECK(run(profiles, FilterStrategy::kSetLength, j).records == expected);
  }
}

TEST_CASE("subset law, comparison accounting and canonical output on random corpora") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 25; ++round) {
    synthetic::CorpusShape shape;
    shape.docs = 20 + round * 4;
    shape.skew = 0.8 + 0.05 * round;
    const auto profiles = synthetic::profiles_of(synthetic::zipf_texts(rng, shape), 4);
    const std::uint64_t n = profiles.size();
    for (double j : {0.5, 0.9}) {
      const auto oracle_run = run(profiles, FilterStrategy::kAllPairs, j);
      CHECK(oracle_run.stats.comparisons == n * (n - 1) / 2);
      CHECK(oracle_run.stats.dismissed == 0);
      for (auto s : kAll) {
        const auto r = run(profiles, s, j);
        CHECK(canonical(r.records));
        CHECK(subset(r.records, oracle_run.records));
        CHECK(r.stats.comparisons + r.stats.dismissed == n * (n - 1) / 2);
        CHECK(r.stats.similar_pairs <= r.stats.comparisons);
        CHECK(r.stats.similar_pairs == r.records.size());
        for (const auto& rec : r.records) CHECK(rec.score >= j);
      }
      CHECK(run(profiles, FilterStrategy::kSetLength, j).stats.comparisons <= oracle_run.stats.comparisons);
      CHECK(run(profiles, FilterStrategy::kSetLength, j).records == oracle_run.records);
    }
  }
}

TEST_CASE("results and counts do not depend on the number of scoring threads") {
  std::mt19937_64 rng(32);
  synthetic::CorpusShape shape;
  shape.docs = 150;
  const auto profiles = synthetic::profiles_of(synthetic::zipf_texts(rng, shape), 4);
  for (auto s : kAll) {
    const auto serial = run(profiles, s, 0.7, {1});
    const auto threaded = run(profiles, s, 0.7, {4});
    CHECK(serial.records == threaded.records);
    CHECK(serial.stats.comparisons == threaded.stats.comparisons);
    CHECK(serial.stats.dismissed == threaded.stats.dismissed);
    const auto again = run(profiles, s, 0.7, {3});
    CHECK(again.records == serial.records);
  }
}

TEST_CASE("audit of set-length is always complete") {
  std::mt19937_64 rng(33);
  for (int round = 0; round < 10; ++round) {
    const auto profiles = synthetic::random_profiles(rng, 60, 2, 30, 20);
    const auto a = audit(profiles, FilterStrategy::kSetLength, 0.5);
    CHECK(a.recall == 1.0);
    CHECK(a.missed.empty());
    CHECK(a.found_pairs == a.oracle_pairs);
  }
}

TEST_CASE("audit catches the weighted filter's false dismissal") {
  const auto profiles = synthetic::weighted_counterexample();
  const auto a = audit(profiles, FilterStrategy::kWeightedLength, 0.5);
  CHECK(a.strategy == FilterStrategy::kWeightedLength);
  CHECK(a.oracle_pairs == 1);
  CHECK(a.found_pairs == 0);
  CHECK(a.recall == 0.0);
  REQUIRE(a.missed.size() == 1);
  CHECK(a.missed[0] == SimilarityRecord{"s", "t", 0.5});
}

TEST_CASE("no similar pairs means recall 1 by convention") {
  const auto profiles = synthetic::profiles_of({"aaaaaaa", "bbbbbbb", "ccccccc"}, 3);
  for (auto s : kAll) {
    const auto a = audit(profiles, s, 0.9);
    CHECK(a.oracle_pairs == 0);
    CHECK(a.recall == 1.0);
  }
  CHECK(audit(std::span<const ShingleProfile>{}, FilterStrategy::kSetLength, 0.9).recall == 1.0);
}

TEST_CASE("audit_results diffs sorted record lists") {
  const std::vector<SimilarityRecord> oracle{{"a", "b", 1.0}, {"a", "c", 0.9}, {"b", "c", 0.95}};
  const std::vector<SimilarityRecord> found{{"a", "b", 1.0}, {"b", "c", 0.95}};
  const auto a = audit_results(FilterStrategy::kWeightedLength, oracle, found);
  CHECK(a.oracle_pairs == 3);
  CHECK(a.found_pairs == 2);
  CHECK(a.recall == doctest::Approx(2.0 / 3.0));
  REQUIRE(a.missed.size() == 1);
  CHECK(a.missed[0].doc_b == "c");
}

TEST_CASE("compare_runs reports reduction and divergence") {
  RunResult base;
  base.stats.strategy = FilterStrategy::kSetLength;
  base.stats.comparisons = 25854;
  base.records = {{"a", "b", 1.0}, {"c", "d", 0.9}};
  RunResult cand;
  cand.stats.strategy = FilterStrategy::kWeightedLength;
  cand.stats.comparisons = 12324;
  cand.records = {{"a", "b", 1.0}};
  const auto delta = compare_runs(base, cand);
  CHECK(delta.reduction_ratio == doctest::Approx(1.0 - 12324.0 / 25854.0));
  CHECK(delta.reduction_ratio == doctest::Approx(0.5233).epsilon(1e-3));
  CHECK(delta.diverged());
  REQUIRE(delta.only_in_baseline.size() == 1);
  CHECK(delta.only_in_candidate.empty());

  cand.records = base.records;
  CHECK_FALSE(compare_runs(base, cand).diverged());
}

TEST_CASE("empty corpus produces an empty result") {
  const auto r = run(std::span<const ShingleProfile>{}, FilterStrategy::kWeightedLength, 0.9);
  CHECK(r.records.empty());
  CHECK(r.stats.comparisons == 0);
  CHECK(r.stats.dismissed == 0);
  CHECK(r.stats.doc_count == 0);
}
