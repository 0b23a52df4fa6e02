#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nearsim/shingle.hpp"

namespace nearsim {

// Unordered document pair; doc_a < doc_b in byte order.
struct SimilarityRecord {
  std::string doc_a;
  std::string doc_b;
  double score = 0.0;

  friend bool operator==(const SimilarityRecord&, const SimilarityRecord&) = default;
};

// Orders the ids so that the record is canonical.
SimilarityRecord make_record(std::string first, std::string second, double score);

// Ordering by (doc_a, doc_b); the score does not participate.
bool pair_less(const SimilarityRecord& lhs, const SimilarityRecord& rhs);

// |A ∩ B| / |A ∪ B| given the two distinct-set sizes. Two empty sets are
// defined to be identical (1.0); empty vs non-empty is 0.0.
double jaccard_from_overlap(std::uint64_t overlap, std::uint64_t size_a, std::uint64_t size_b);

// Set Jaccard over distinct shingles; counts are ignored.
// Throws ConfigError when the profiles were built with different k.
double jaccard(const ShingleProfile& p, const ShingleProfile& q);
double jaccard_distance(const ShingleProfile& p, const ShingleProfile& q);

// Jaccard over two ascending, duplicate-free token id lists.
double jaccard(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

// Maps every shingle of a corpus to a dense id assigned in byte order, so each
// profile becomes an ascending id list and intersections reduce to integer
// merges. Ranks and set sizes are unchanged by the mapping.
class InternedCorpus {
 public:
  // Throws ConfigError when profiles disagree on k.
  explicit InternedCorpus(std::span<const ShingleProfile> profiles);

  std::span<const std::uint32_t> tokens(std::size_t doc) const noexcept {
    return {ids_.data() + offsets_[doc], ids_.data() + offsets_[doc + 1]};
  }
  std::size_t size() const noexcept { return offsets_.size() - 1; }
  std::size_t vocabulary_size() const noexcept { return vocabulary_size_; }

 private:
  std::vector<std::uint32_t> ids_;
  std::vector<std::size_t> offsets_;
  std::size_t vocabulary_size_ = 0;
};

}  // namespace nearsim
