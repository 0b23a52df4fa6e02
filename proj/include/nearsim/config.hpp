#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nearsim {

// Raised when inputs were produced under incompatible settings (k mismatch,
// out-of-range threshold, cache header disagreeing with the run).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::size_t k = 5;
  // Minimum Jaccard similarity for a pair to be reported.
  double threshold_j = 0.9;
  bool normalize_whitespace = true;
  bool lowercase = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Throws ConfigError unless k >= 1 and 0 < threshold_j <= 1.
void validate(const RunConfig& config);

enum class FilterStrategy {
  kAllPairs,
  kSetLength,
  kWeightedLength,
};

// Flag-surface names: "all-pairs", "set-length", "weighted-length".
std::string_view to_string(FilterStrategy strategy);
std::optional<FilterStrategy> parse_strategy(std::string_view name);

}  // namespace nearsim
