#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nearsim/config.hpp"
#include "nearsim/shingle.hpp"

namespace nearsim {

// Length measure the scan sorts by: set length for kAllPairs and kSetLength,
// weighted length for kWeightedLength.
std::uint64_t sort_key(const ShingleProfile& profile, FilterStrategy strategy);

// Length filter predicate for s preceding t in scan order (len_s <= len_t):
// true iff len_t <= len_s / j. Evaluated as len_s / len_t >= j so that the
// rounding of the bound can never fall below a computed similarity.
bool admit(std::uint64_t len_s, std::uint64_t len_t, double j);

// Indices refer to the profile span handed to the scan. `first` is the
// document scanned from, i.e. the one with the smaller (key, doc_id).
struct CandidatePair {
  std::size_t first = 0;
  std::size_t second = 0;
  std::uint64_t length_first = 0;
  std::uint64_t length_second = 0;

  friend bool operator==(const CandidatePair&, const CandidatePair&) = default;
};

struct CandidateSet {
  std::vector<CandidatePair> pairs;
  // C(eligible, 2) minus the number of emitted pairs.
  std::uint64_t dismissed = 0;
  // Profiles taking part in the scan; empty profiles are left out.
  std::size_t eligible = 0;
};

// Indices of non-empty profiles sorted ascending by (sort_key, doc_id).
std::vector<std::size_t> scan_order(std::span<const ShingleProfile> profiles, FilterStrategy strategy);

// Sorted scan: every document is paired with its successors while admit()
// holds, stopping at the first successor it rejects. kAllPairs admits all.
// Returns the dismissed count. Throws ConfigError when k differs.
std::uint64_t for_each_candidate(std::span<const ShingleProfile> profiles, FilterStrategy strategy,
                                 double j, const std::function<void(const CandidatePair&)>& emit);

CandidateSet candidates(std::span<const ShingleProfile> profiles, FilterStrategy strategy, double j);

}  // namespace nearsim
