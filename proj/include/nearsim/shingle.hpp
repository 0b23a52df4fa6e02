#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nearsim/config.hpp"

namespace nearsim {

struct ShingleCount {
  std::string shingle;
  std::uint64_t count = 0;

  friend bool operator==(const ShingleCount&, const ShingleCount&) = default;
};

// Every distinct run of k consecutive characters (code points) in `text`
// with its number of occurrences, overlapping windows included. Sorted by
// the shingle's byte sequence. Empty when text has fewer than k characters.
std::vector<ShingleCount> extract_shingles(std::string_view text, std::size_t k);

// Σ i × count_i over 1-based ranks of the already sorted entries.
std::uint64_t weighted_length(std::span<const ShingleCount> sorted_entries);

// Immutable multiset of one document's k-shingles.
//
// Entries are sorted ascending by byte order, which doubles as the global
// symbol order: two profiles rank their shared shingles consistently without
// the universal set ever being materialized. The set length is the number of
// distinct shingles; the weighted length multiplies each entry's 1-based rank
// within this document by its repetition count.
class ShingleProfile {
 public:
  // Throws std::invalid_argument if entries are unsorted, duplicated, carry a
  // zero count, or hold a shingle that is not exactly k characters long.
  ShingleProfile(std::string doc_id, std::size_t k, std::vector<ShingleCount> entries);

  const std::string& doc_id() const noexcept { return doc_id_; }
  std::size_t k() const noexcept { return k_; }
  std::span<const ShingleCount> entries() const noexcept { return entries_; }
  std::uint64_t set_length() const noexcept { return entries_.size(); }
  std::uint64_t weighted_length() const noexcept { return weighted_length_; }
  bool empty() const noexcept { return entries_.empty(); }

  friend bool operator==(const ShingleProfile&, const ShingleProfile&) = default;

 private:
  std::string doc_id_;
  std::size_t k_;
  std::vector<ShingleCount> entries_;
  std::uint64_t weighted_length_;
};

// `text` must already be normalized (see corpus_io.hpp).
ShingleProfile build_profile(std::string doc_id, std::string_view text, const RunConfig& config);

inline std::uint64_t weighted_length(const ShingleProfile& profile) {
  return profile.weighted_length();
}

}  // namespace nearsim
