#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ibsumm/backends.hpp"
#include "ibsumm/selection.hpp"

namespace ibsumm {

enum class SearchMode { none, greedy, beam };
enum class ViewSet { keywords, keywords_category };

/// Every tunable of a run. Defaults: 10 keyphrases, 50 candidates, window 3,
/// 5 starts, beam 5, 10-sentence summaries.
struct PipelineConfig {
  double alpha = 1.0;  // category view weight; forced to 0 for ViewSet::keywords
  double beta = 1.0;   // keyword view weight
  double epsilon = kDefaultEpsilon;
  std::size_t num_keyphrases = 10;
  std::size_t keyphrase_min_frequency = 1;
  std::size_t keyphrase_max_words = 0;
  std::size_t top_n = 50;
  std::size_t window = 3;
  std::size_t k_starts = 5;
  std::size_t beam_width = 5;
  std::size_t summary_len = 10;
  std::size_t min_words = 8;
  std::size_t max_words = 80;
  SearchMode search_mode = SearchMode::beam;
  RankingMode ranking_mode = RankingMode::eq4;
  ViewSet views = ViewSet::keywords;
  BackendConfig backend;
};

using ConfigEntry = std::pair<std::string, std::string>;

/// Sets one key from its text form. Keys are the field names above, with
/// backend fields spelled "backend.mode", "backend.endpoint",
/// "backend.embedding_file", "backend.timeout", "backend.batch_size",
/// "backend.labels". Throws ConfigError on unknown keys or bad values.
void apply_setting(PipelineConfig& config, std::string_view key, std::string_view value);

/// Flat "key = value" text; '#' starts a comment.
PipelineConfig parse_config(std::istream& in, PipelineConfig base = {});
PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base = {});

/// All keys in canonical order with their text values.
std::vector<ConfigEntry> config_entries(const PipelineConfig& config);
std::vector<std::string> config_keys();

/// Range checks on the algorithm fields (backend fields are checked when the
/// backends are built). Throws ConfigError.
void validate(const PipelineConfig& config);

/// Validated copy with derived settings applied (alpha = 0 for keyword-only runs).
PipelineConfig effective_config(PipelineConfig config);

/// Stable 16-hex-digit hash of the semantic fields of the effective config.
/// Transport settings (timeout, batch size) do not participate.
std::string fingerprint(const PipelineConfig& config);

/// Row label for metrics tables, e.g. "keywords+beamSearch".
std::string system_name(const PipelineConfig& config);

std::string to_string(SearchMode mode);
std::string to_string(RankingMode mode);
std::string to_string(ViewSet views);
std::string to_string(BackendMode mode);

}  // namespace ibsumm
