#include "nearsim/config.hpp"

#include <cmath>
#include <string>

namespace nearsim {

void validate(const RunConfig& config) {
  if (config.k < 1) {
    throw ConfigError("k must be at least 1");
  }
  if (!(config.threshold_j > 0.0 && config.threshold_j <= 1.0)) {
    throw ConfigError("threshold must lie in (0, 1], got " + std::to_string(config.threshold_j));
  }
}

std::string_view to_string(FilterStrategy strategy) {
  switch (strategy) {
    case FilterStrategy::kAllPairs:
      return "all-pairs";
    case FilterStrategy::kSetLength:
      return "set-length";
    case FilterStrategy::kWeightedLength:
      return "weighted-length";
  }
  return "unknown";
}

std::optional<FilterStrategy> parse_strategy(std::string_view name) {
  for (auto s : {FilterStrategy::kAllPairs, FilterStrategy::kSetLength, FilterStrategy::kWeightedLength}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

}  // namespace nearsim
