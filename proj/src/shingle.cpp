#include "nearsim/shingle.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "nearsim/utf8.hpp"

namespace nearsim {

std::vector<ShingleCount> extract_shingles(std::string_view text, std::size_t k) {
  if (k == 0) throw std::invalid_argument("shingle length k must be positive");

  // Byte offset of every character start, plus the end sentinel.
  std::vector<std::size_t> starts;
  starts.reserve(text.size() + 1);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!utf8::is_continuation(static_cast<unsigned char>(text[i]))) starts.push_back(i);
  }
  starts.push_back(text.size());
  const std::size_t chars = starts.size() - 1;
  if (chars < k) return {};

  std::unordered_map<std::string_view, std::uint64_t> counts;
  counts.reserve(chars - k + 1);
  for (std::size_t c = 0; c + k <= chars; ++c) {
    ++counts[text.substr(starts[c], starts[c + k] - starts[c])];
  }

  std::vector<ShingleCount> entries;
  entries.reserve(counts.size());
  for (const auto& [shingle, count] : counts) entries.push_back({std::string(shingle), count});
  std::sort(entries.begin(), entries.end(),
            [](const ShingleCount& a, const ShingleCount& b) { return a.shingle < b.shingle; });
  return entries;
}

std::uint64_t weighted_length(std::span<const ShingleCount> sorted_entries) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < sorted_entries.size(); ++i) {
    total += static_cast<std::uint64_t>(i + 1) * sorted_entries[i].count;
  }
  return total;
}

ShingleProfile::ShingleProfile(std::string doc_id, std::size_t k, std::vector<ShingleCount> entries)
    : doc_id_(std::move(doc_id)), k_(k), entries_(std::move(entries)) {
  if (k_ == 0) throw std::invalid_argument("profile " + doc_id_ + ": k must be positive");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.count == 0) {
      throw std::invalid_argument("profile " + doc_id_ + ": zero count for shingle '" + e.shingle + "'");
    }
    if (utf8::length(e.shingle) != k_ || (!e.shingle.empty() && utf8::is_continuation(e.shingle[0]))) {
      throw std::invalid_argument("profile " + doc_id_ + ": shingle '" + e.shingle + "' is not " +
                                  std::to_string(k_) + " characters long");
    }
    if (i > 0 && !(entries_[i - 1].shingle < e.shingle)) {
      throw std::invalid_argument("profile " + doc_id_ + ": entries not strictly ascending at '" +
                                  e.shingle + "'");
    }
  }
  weighted_length_ = nearsim::weighted_length(entries_);
}

ShingleProfile build_profile(std::string doc_id, std::string_view text, const RunConfig& config) {
  return ShingleProfile(std::move(doc_id), config.k, extract_shingles(text, config.k));
}

}  // namespace nearsim
