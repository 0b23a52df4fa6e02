#include "nearsim/corpus_io.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nearsim/utf8.hpp"

namespace nearsim {
namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kCacheFormatName = "nearsim-profile-cache";
// Doc ids come from file names, which need not be valid UTF-8.
constexpr auto kReplaceInvalid = nlohmann::json::error_handler_t::replace;

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) return std::nullopt;
  return bytes;
}

struct FileOutcome {
  std::optional<ShingleProfile> profile;
  std::uint64_t byte_length = 0;
  std::size_t replaced = 0;
  bool io_error = false;
};

template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& body) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) body(i);
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  if (threads <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
}

void write_file(const fs::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

std::string format_score(double score) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, score, std::chars_format::fixed, 6);
  return {buf, res.ptr};
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

ordered_json records_json(std::span<const SimilarityRecord> records) {
  auto out = ordered_json::array();
  for (const auto& r : records) {
    out.push_back(ordered_json{{"doc_a", r.doc_a}, {"doc_b", r.doc_b}, {"score", r.score}});
  }
  return out;
}

ordered_json cache_header(const RunConfig& config) {
  return ordered_json{{"format", kCacheFormatName},
                      {"format_version", kCacheFormatVersion},
                      {"k", config.k},
                      {"normalize_whitespace", config.normalize_whitespace},
                      {"lowercase", config.lowercase}};
}

}  // namespace

NormalizedText normalize(std::string_view raw_bytes, const RunConfig& config) {
  auto decoded = utf8::decode_lossy(raw_bytes);
  NormalizedText result{std::move(decoded.text), decoded.replaced};

  if (config.normalize_whitespace) {
    std::string collapsed;
    collapsed.reserve(result.text.size());
    bool pending_space = false;
    for (char c : result.text) {
      if (is_ascii_space(c)) {
        pending_space = !collapsed.empty();
        continue;
      }
      if (pending_space) collapsed += ' ';
      pending_space = false;
      collapsed += c;
    }
    result.text = std::move(collapsed);
  }
  if (config.lowercase) {
    for (char& c : result.text) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
  }
  return result;
}

Corpus ingest(const fs::path& root, const RunConfig& config, std::ostream& warnings, unsigned jobs) {
  validate(config);
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw IoError("corpus root " + root.string() + " is not a readable directory");
  }

  std::vector<std::pair<std::string, fs::path>> files;
  fs::recursive_directory_iterator it(root, ec);
  if (ec) throw IoError("cannot read corpus root " + root.string() + ": " + ec.message());
  for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
    if (ec) throw IoError("cannot enumerate " + root.string() + ": " + ec.message());
    std::error_code type_ec;
    if (!it->is_regular_file(type_ec)) continue;
    files.emplace_back(it->path().lexically_relative(root).generic_string(), it->path());
  }
  if (ec) throw IoError("cannot enumerate " + root.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());

  std::vector<FileOutcome> outcomes(files.size());
  parallel_for(files.size(), jobs, [&](std::size_t i) {
    auto bytes = read_file(files[i].second);
    if (!bytes) {
      outcomes[i].io_error = true;
      return;
    }
    outcomes[i].byte_length = bytes->size();
    auto text = normalize(*bytes, config);
    outcomes[i].replaced = text.replaced_sequences;
    outcomes[i].profile = build_profile(files[i].first, text.text, config);
  });

  Corpus corpus;
  corpus.manifest.root = root;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto& doc_id = files[i].first;
    auto& outcome = outcomes[i];
    if (outcome.io_error) {
      warnings << "warning: " << doc_id << ": unreadable, skipped\n";
      corpus.manifest.skipped.push_back({doc_id, "io-error"});
      continue;
    }
    if (outcome.replaced > 0) {
      warnings << "warning: " << doc_id << ": " << outcome.replaced
               << " invalid UTF-8 sequence(s) replaced with U+FFFD\n";
    }
    if (outcome.profile->empty()) {
      warnings << "warning: " << doc_id << ": shorter than k=" << config.k << ", skipped\n";
      corpus.manifest.skipped.push_back({doc_id, "shorter than k"});
      continue;
    }
    corpus.manifest.documents.push_back({doc_id, outcome.byte_length});
    corpus.profiles.push_back(std::move(*outcome.profile));
  }
  return corpus;
}

void save_profile_cache(const fs::path& path, const RunConfig& config, std::span<const ShingleProfile> profiles) {
  std::string out = cache_header(config).dump(-1, ' ', false, kReplaceInvalid) + "\n";
  for (const auto& p : profiles) {
    if (p.k() != config.k) {
      throw ConfigError("profile " + p.doc_id() + " has k=" + std::to_string(p.k()) + ", cache expects k=" +
                        std::to_string(config.k));
    }
    auto entries = ordered_json::array();
    for (const auto& e : p.entries()) entries.push_back(ordered_json::array({e.shingle, e.count}));
    out += ordered_json{{"doc_id", p.doc_id()}, {"entries", std::move(entries)}}.dump(-1, ' ', false, kReplaceInvalid);
    out += '\n';
  }
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  write_file(path, out);
}

std::vector<ShingleProfile> load_profile_cache(const fs::path& path, const RunConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open profile cache " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw IoError("profile cache " + path.string() + " is empty");
  ordered_json header;
  try {
    header = ordered_json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("profile cache " + path.string() + ": bad header: " + e.what());
  }
  if (header.value("format", "") != kCacheFormatName || header.value("format_version", -1) != kCacheFormatVersion) {
    throw IoError("profile cache " + path.string() + ": unsupported format");
  }
  if (header.value("k", std::size_t{0}) != config.k ||
      header.value("normalize_whitespace", !config.normalize_whitespace) != config.normalize_whitespace ||
      header.value("lowercase", !config.lowercase) != config.lowercase) {
    throw ConfigError("profile cache " + path.string() + " was built with " + header.dump() +
                      ", which does not match the run configuration");
  }

  std::vector<ShingleProfile> profiles;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto record = ordered_json::parse(line);
      std::vector<ShingleCount> entries;
      for (const auto& e : record.at("entries")) {
        entries.push_back({e.at(0).get<std::string>(), e.at(1).get<std::uint64_t>()});
      }
      profiles.emplace_back(record.at("doc_id").get<std::string>(), config.k, std::move(entries));
    } catch (const std::exception& e) {
      throw IoError("profile cache " + path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return profiles;
}

std::string format_pairs_csv(std::span<const SimilarityRecord> records) {
  std::string out = "doc_a,doc_b,score\n";
  for (const auto& r : records) {
    out += csv_field(r.doc_a);
    out += ',';
    out += csv_field(r.doc_b);
    out += ',';
    out += format_score(r.score);
    out += '\n';
  }
  return out;
}

std::string format_stats_json(const Report& report) {
  ordered_json doc;
  doc["config"] = ordered_json{{"k", report.config.k},
                               {"threshold", report.config.threshold_j},
                               {"normalize_whitespace", report.config.normalize_whitespace},
                               {"lowercase", report.config.lowercase}};
  doc["doc_count"] = report.doc_count;
  auto skipped = ordered_json::array();
  for (const auto& s : report.skipped) skipped.push_back(ordered_json{{"doc_id", s.doc_id}, {"reason", s.reason}});
  doc["skipped"] = std::move(skipped);

  auto runs = ordered_json::array();
  for (const auto& s : report.stats) {
    runs.push_back(ordered_json{{"strategy", to_string(s.strategy)},
                                {"doc_count", s.doc_count},
                                {"comparisons", s.comparisons},
                                {"dismissed", s.dismissed},
                                {"similar_pairs", s.similar_pairs},
                                {"wall_time_ms", s.wall_time_ms}});
  }
  doc["runs"] = std::move(runs);

  if (report.audit) {
    const auto& a = *report.audit;
    doc["audit"] = ordered_json{{"strategy", to_string(a.strategy)},
                                {"oracle_pairs", a.oracle_pairs},
                                {"found_pairs", a.found_pairs},
                                {"recall", a.recall},
                                {"missed", records_json(a.missed)}};
  }
  if (report.comparison) {
    const auto& c = *report.comparison;
    doc["comparison"] = ordered_json{{"baseline", to_string(c.baseline)},
                                     {"candidate", to_string(c.candidate)},
                                     {"reduction_ratio", c.reduction_ratio},
                                     {"diverged", c.diverged()},
                                     {"only_in_baseline", records_json(c.only_in_baseline)},
                                     {"only_in_candidate", records_json(c.only_in_candidate)}};
  }
  return doc.dump(2, ' ', false, kReplaceInvalid) + "\n";
}

void write_report(const Report& report, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw IoError("cannot create output directory " + out_dir.string() + (ec ? ": " + ec.message() : ""));
  }
  write_file(out_dir / kPairsFileName, format_pairs_csv(report.records));
  write_file(out_dir / kStatsFileName, format_stats_json(report));
}

}  // namespace nearsim
