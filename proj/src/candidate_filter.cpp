#include "nearsim/candidate_filter.hpp"

#include <algorithm>

namespace nearsim {

std::uint64_t sort_key(const ShingleProfile& profile, FilterStrategy strategy) {
  switch (strategy) {
    case FilterStrategy::kWeightedLength:
      return profile.weighted_length();
    case FilterStrategy::kAllPairs:
    case FilterStrategy::kSetLength:
      break;
  }
  return profile.set_length();
}

bool admit(std::uint64_t len_s, std::uint64_t len_t, double j) {
  if (len_t == 0) return true;
  // Equivalent to len_t <= len_s / j over the reals. Any Jaccard score
  // computed as overlap / union satisfies overlap <= len_s and union >= len_t,
  // and correctly rounded division is monotone, so a pair scoring >= j is
  // never rejected here.
  return static_cast<double>(len_s) / static_cast<double>(len_t) >= j;
}

std::vector<std::size_t> scan_order(std::span<const ShingleProfile> profiles, FilterStrategy strategy) {
  std::vector<std::size_t> order;
  order.reserve(profiles.size());
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    if (!profiles[i].empty()) order.push_back(i);
  }
  std::vector<std::uint64_t> keys(profiles.size());
  for (auto i : order) keys[i] = sort_key(profiles[i], strategy);
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    if (keys[l] != keys[r]) return keys[l] < keys[r];
    if (profiles[l].doc_id() != profiles[r].doc_id()) return profiles[l].doc_id() < profiles[r].doc_id();
    return l < r;
  });
  return order;
}

std::uint64_t for_each_candidate(std::span<const ShingleProfile> profiles, FilterStrategy strategy,
                                 double j, const std::function<void(const CandidatePair&)>& emit) {
  for (const auto& p : profiles) {
    if (p.k() != profiles.front().k()) {
      throw ConfigError("profiles built with different k: " + profiles.front().doc_id() + " vs " + p.doc_id());
    }
  }
  const auto order = scan_order(profiles, strategy);
  const std::uint64_t n = order.size();
  std::vector<std::uint64_t> keys(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) keys[i] = sort_key(profiles[order[i]], strategy);

  std::uint64_t emitted = 0;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    for (std::size_t m = i + 1; m < order.size(); ++m) {
      // Keys ascend, so once admit fails it fails for every later m.
      if (strategy != FilterStrategy::kAllPairs && !admit(keys[i], keys[m], j)) break;
      emit(CandidatePair{order[i], order[m], keys[i], keys[m]});
      ++emitted;
    }
  }
  const std::uint64_t total = n < 2 ? 0 : n * (n - 1) / 2;
  return total - emitted;
}

CandidateSet candidates(std::span<const ShingleProfile> profiles, FilterStrategy strategy, double j) {
  CandidateSet set;
  set.dismissed = for_each_candidate(profiles, strategy, j,
                                     [&](const CandidatePair& pair) { set.pairs.push_back(pair); });
  for (const auto& p : profiles) set.eligible += p.empty() ? 0 : 1;
  return set;
}

}  // namespace nearsim
