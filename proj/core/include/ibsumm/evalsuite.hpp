#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ibsumm/corpus.hpp"
#include "ibsumm/summary_io.hpp"

namespace ibsumm {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// F1 from precision and recall; 0 when both are 0.
RougeScore make_rouge(double precision, double recall);

/// Clipped n-gram overlap for n in {1, 2}. Empty n-gram multisets on either
/// side give all zeros. Throws ContractViolation for other n.
RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference,
                   int n);

/// Summary-level LCS over the two whole token sequences.
RougeScore rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference);

struct RougeOptions {
  bool stemming = false;
};

/// Concatenated sentence tokens, Porter-stemmed when requested.
std::vector<std::string> rouge_tokens(std::span<const Sentence> sentences, const RougeOptions& options = {});

struct RougeTriple {
  RougeScore r1, r2, rl;
};

RougeTriple score_summary(std::span<const Sentence> summary, std::span<const Sentence> reference,
                          const RougeOptions& options = {});

/// Greedy extractive upper bound: repeatedly adds the sentence that most
/// increases mean(ROUGE-1 F1, ROUGE-2 F1) against the reference; stops when
/// nothing improves or `max_sentences` are chosen. Output is in document
/// order. Throws Error on an empty reference.
std::vector<Sentence> oracle_extract(const Document& doc, std::size_t max_sentences,
                                     const RougeOptions& options = {});

std::vector<Sentence> lead_k(const Document& doc, std::size_t k = 3);

/// Source positions of one summary and the length of its document.
struct PositionedSummary {
  std::vector<std::size_t> indices;
  std::size_t document_sentences = 0;
};

struct PositionHistogram {
  std::vector<double> mass;  // one entry per bin
  std::size_t counted = 0;   // summary sentences binned

  bool empty() const { return counted == 0; }
};

/// Bins every summary sentence at floor(bins * index / doc_len), clamped to
/// the last bin, then normalizes by the number of sentences counted.
PositionHistogram position_histogram(std::span<const PositionedSummary> summaries, std::size_t bins = 10);

struct CorpusMetrics {
  std::string system;
  double rouge1_f1 = 0.0;
  double rouge2_f1 = 0.0;
  double rougeL_f1 = 0.0;
  std::size_t num_docs = 0;
  std::size_t skipped_no_reference = 0;
  std::vector<std::string> unknown_ids;  // summaries naming no corpus document
};

/// Corpus means of per-document F1, accumulated in summary order.
CorpusMetrics evaluate_corpus(std::span<const Document> docs, std::span<const SummaryRecord> summaries,
                              const std::string& system, const RougeOptions& options = {});

/// Header "system,rouge1_f1,rouge2_f1,rougeL_f1,num_docs", values to 4 decimals.
void write_metrics_csv(std::ostream& out, std::span<const CorpusMetrics> rows);
/// Header "bin,mass".
void write_histogram_csv(std::ostream& out, const PositionHistogram& hist);

}  // namespace ibsumm
