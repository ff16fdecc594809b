#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ibsumm/backends.hpp"
#include "ibsumm/config.hpp"
#include "ibsumm/corpus.hpp"
#include "ibsumm/evalsuite.hpp"
#include "ibsumm/keyphrase.hpp"
#include "ibsumm/realization.hpp"
#include "ibsumm/selection.hpp"

namespace ibsumm {

struct SummaryResult {
  std::string document_id;
  std::vector<Sentence> summary;  // strictly increasing source indices
  std::size_t document_sentences = 0;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::string config_fingerprint;
  std::vector<std::string> warnings;

  // Intermediate state, kept for diagnostics dumps.
  std::vector<Keyphrase> keyphrases;
  std::vector<ScoredSentence> scored;
  std::optional<NspMatrix> matrix;
};

/// filter -> keyphrases -> score -> top-N -> NSP matrix -> search -> realize.
/// search_mode `none` skips realization and keeps the summary_len best
/// sentences in document order. Throws DocumentSkipped when no sentence
/// survives the length filter.
SummaryResult summarize_document(const Document& doc, const PipelineConfig& config,
                                 const Backends& backends);

struct RunOptions {
  std::filesystem::path corpus;
  std::filesystem::path out_dir;
  std::optional<std::size_t> limit;
  std::size_t workers = 0;  // 0 = hardware concurrency
  bool dump_keyphrases = false;
  bool dump_scores = false;
  bool dump_matrices = false;
};

struct DocumentIssue {
  std::string id;
  std::string reason;
};

struct RunManifest {
  std::string version;
  std::string system;
  std::string fingerprint;
  std::vector<ConfigEntry> config;
  std::size_t documents = 0;  // loaded and admitted
  std::size_t malformed_lines = 0;
  std::size_t empty_records = 0;
  std::size_t summarized = 0;
  std::vector<DocumentIssue> skipped;
  std::vector<DocumentIssue> failed;
  std::optional<CorpusMetrics> metrics;
  std::size_t workers = 0;
  double wall_time_s = 0.0;
  std::string started_at;

  /// More than 10% of the loaded documents failed.
  bool partial_failure() const { return failed.size() * 10 > documents; }
};

/// Summarizes a whole corpus into out_dir: summaries.jsonl (ordered by
/// document id), metrics.csv when references exist, positions.csv and
/// manifest.json, plus the requested diagnostic dumps. Per-document failures
/// are recorded, not thrown; configuration errors and unreadable or empty
/// corpora throw.
RunManifest run_corpus(const RunOptions& options, const PipelineConfig& config, const Backends& backends);

/// Version string baked in at build time.
std::string library_version();

}  // namespace ibsumm
