#include "nearsim/similarity.hpp"

#include <algorithm>
#include <limits>
#include <string_view>
#include <tuple>

namespace nearsim {
namespace {

void require_same_k(const ShingleProfile& p, const ShingleProfile& q) {
  if (p.k() != q.k()) {
    throw ConfigError("profiles built with different k: " + p.doc_id() + " (k=" + std::to_string(p.k()) +
                      ") vs " + q.doc_id() + " (k=" + std::to_string(q.k()) + ")");
  }
}

}  // namespace

SimilarityRecord make_record(std::string first, std::string second, double score) {
  if (second < first) std::swap(first, second);
  return {std::move(first), std::move(second), score};
}

bool pair_less(const SimilarityRecord& lhs, const SimilarityRecord& rhs) {
  return std::tie(lhs.doc_a, lhs.doc_b) < std::tie(rhs.doc_a, rhs.doc_b);
}

double jaccard_from_overlap(std::uint64_t overlap, std::uint64_t size_a, std::uint64_t size_b) {
  const std::uint64_t union_size = size_a + size_b - overlap;
  if (union_size == 0) return 1.0;
  return static_cast<double>(overlap) / static_cast<double>(union_size);
}

double jaccard(const ShingleProfile& p, const ShingleProfile& q) {
  require_same_k(p, q);
  const auto a = p.entries();
  const auto b = q.entries();
  std::uint64_t overlap = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const int cmp = a[i].shingle.compare(b[j].shingle);
    if (cmp == 0) {
      ++overlap;
      ++i;
      ++j;
    } else if (cmp < 0) {
      ++i;
    } else {
      ++j;
    }
  }
  return jaccard_from_overlap(overlap, a.size(), b.size());
}

double jaccard_distance(const ShingleProfile& p, const ShingleProfile& q) { return 1.0 - jaccard(p, q); }

double jaccard(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  // Branch-free merge; the hot loop of every run.
  std::uint64_t overlap = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const std::uint32_t x = a[i];
    const std::uint32_t y = b[j];
    overlap += x == y;
    i += x <= y;
    j += y <= x;
  }
  return jaccard_from_overlap(overlap, a.size(), b.size());
}

InternedCorpus::InternedCorpus(std::span<const ShingleProfile> profiles) {
  std::size_t total = 0;
  for (const auto& p : profiles) {
    if (p.k() != profiles.front().k()) require_same_k(profiles.front(), p);
    total += p.entries().size();
  }

  std::vector<std::string_view> vocabulary;
  vocabulary.reserve(total);
  for (const auto& p : profiles) {
    for (const auto& e : p.entries()) vocabulary.emplace_back(e.shingle);
  }
  std::sort(vocabulary.begin(), vocabulary.end());
  vocabulary.erase(std::unique(vocabulary.begin(), vocabulary.end()), vocabulary.end());
  if (vocabulary.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw ConfigError("shingle vocabulary exceeds 2^32 entries");
  }
  vocabulary_size_ = vocabulary.size();

  ids_.reserve(total);
  offsets_.reserve(profiles.size() + 1);
  offsets_.push_back(0);
  for (const auto& p : profiles) {
    // Entries ascend, so each lookup can start where the previous one ended.
    auto from = vocabulary.begin();
    for (const auto& e : p.entries()) {
      from = std::lower_bound(from, vocabulary.end(), std::string_view(e.shingle));
      ids_.push_back(static_cast<std::uint32_t>(from - vocabulary.begin()));
    }
    offsets_.push_back(ids_.size());
  }
}

}  // namespace nearsim
