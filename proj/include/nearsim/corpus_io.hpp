#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nearsim/config.hpp"
#include "nearsim/engine.hpp"
#include "nearsim/shingle.hpp"

namespace nearsim {

struct ManifestEntry {
  std::string doc_id;  // path relative to the corpus root, '/' separated
  std::uint64_t byte_length = 0;
};

struct SkippedDocument {
  std::string doc_id;
  std::string reason;  // "shorter than k" or "io-error"
};

struct CorpusManifest {
  std::filesystem::path root;
  std::vector<ManifestEntry> documents;
  std::vector<SkippedDocument> skipped;
};

struct Corpus {
  CorpusManifest manifest;
  // Parallel to manifest.documents.
  std::vector<ShingleProfile> profiles;
};

struct NormalizedText {
  std::string text;
  std::size_t replaced_sequences = 0;
};

// Lossy UTF-8 decode, then optional whitespace collapsing (ASCII whitespace
// runs become one space, ends trimmed) and optional ASCII lowercasing.
NormalizedText normalize(std::string_view raw_bytes, const RunConfig& config);

// Reads every regular file below `root` in relative-path order and profiles
// it. Lossy decodes and skipped files are reported on `warnings`.
// Throws IoError if root is not a readable directory.
Corpus ingest(const std::filesystem::path& root, const RunConfig& config, std::ostream& warnings,
              unsigned jobs = 0);

// JSON Lines profile cache: a header line recording format version, k and the
// normalization flags, then one {"doc_id", "entries": [[shingle, count], ...]}
// object per document.
inline constexpr int kCacheFormatVersion = 1;

void save_profile_cache(const std::filesystem::path& path, const RunConfig& config,
                        std::span<const ShingleProfile> profiles);

// Throws ConfigError if the header's k or flags differ from `config`, and
// IoError on unreadable or malformed files.
std::vector<ShingleProfile> load_profile_cache(const std::filesystem::path& path, const RunConfig& config);

struct Report {
  RunConfig config;
  std::uint64_t doc_count = 0;
  std::vector<SkippedDocument> skipped;
  std::vector<SimilarityRecord> records;
  std::vector<RunStats> stats;
  std::optional<RecallAudit> audit;
  std::optional<ComparisonDelta> comparison;
};

inline constexpr std::string_view kPairsFileName = "pairs.csv";
inline constexpr std::string_view kStatsFileName = "stats.json";

// "doc_a,doc_b,score" header, one row per record, score with 6 decimals.
std::string format_pairs_csv(std::span<const SimilarityRecord> records);
std::string format_stats_json(const Report& report);

// Writes pairs.csv and stats.json into `out_dir`, creating it if needed.
// Throws IoError if the directory or files cannot be written.
void write_report(const Report& report, const std::filesystem::path& out_dir);

}  // namespace nearsim
