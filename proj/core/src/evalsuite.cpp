#include "ibsumm/evalsuite.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>
#include <unordered_map>

#include "ibsumm/error.hpp"
#include "ibsumm/text.hpp"

namespace ibsumm {

namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts count_ngrams(std::span<const std::string> tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double mean_r12(std::span<const std::string> cand, std::span<const std::string> ref) {
  return 0.5 * (rouge_n(cand, ref, 1).f1 + rouge_n(cand, ref, 2).f1);
}

}  // namespace

RougeScore make_rouge(double precision, double recall) {
  const double denom = precision + recall;
  return {precision, recall, denom > 0.0 ? 2.0 * precision * recall / denom : 0.0};
}

RougeScore rouge_n(std::span<const std::string> candidate, std::span<const std::string> reference,
                   int n) {
  if (n != 1 && n != 2) throw ContractViolation("rouge_n: n must be 1 or 2");
  const auto cand = count_ngrams(candidate, static_cast<std::size_t>(n));
  const auto ref = count_ngrams(reference, static_cast<std::size_t>(n));
  if (cand.empty() || ref.empty()) return {};
  std::size_t overlap = 0;
  for (const auto& [gram, c] : cand) {
    if (const auto it = ref.find(gram); it != ref.end()) overlap += std::min(c, it->second);
  }
  const auto cand_total = static_cast<double>(candidate.size() - static_cast<std::size_t>(n) + 1);
  const auto ref_total = static_cast<double>(reference.size() - static_cast<std::size_t>(n) + 1);
  return make_rouge(static_cast<double>(overlap) / cand_total, static_cast<double>(overlap) / ref_total);
}

RougeScore rouge_l(std::span<const std::string> candidate, std::span<const std::string> reference) {
  if (candidate.empty() || reference.empty()) return {};
  const auto l = static_cast<double>(lcs_length(candidate, reference));
  return make_rouge(l / static_cast<double>(candidate.size()), l / static_cast<double>(reference.size()));
}

std::vector<std::string> rouge_tokens(std::span<const Sentence> sentences, const RougeOptions& options) {
  std::vector<std::string> out;
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) out.push_back(options.stemming ? porter_stem(t) : t);
  }
  return out;
}

RougeTriple score_summary(std::span<const Sentence> summary, std::span<const Sentence> reference,
                          const RougeOptions& options) {
  const auto cand = rouge_tokens(summary, options);
  const auto ref = rouge_tokens(reference, options);
  return {rouge_n(cand, ref, 1), rouge_n(cand, ref, 2), rouge_l(cand, ref)};
}

std::vector<Sentence> oracle_extract(const Document& doc, std::size_t max_sentences,
                                     const RougeOptions& options) {
  if (doc.reference.empty()) throw Error("oracle_extract: document '" + doc.id + "' has no reference");
  const auto ref = rouge_tokens(doc.reference, options);
  std::vector<std::vector<std::string>> sent_tokens;
  sent_tokens.reserve(doc.sentences.size());
  for (const auto& s : doc.sentences) sent_tokens.push_back(rouge_tokens(std::span(&s, 1), options));

  std::vector<bool> chosen(doc.sentences.size(), false);
  std::vector<std::string> current;
  double current_score = 0.0;
  std::size_t count = 0;
  while (count < max_sentences) {
    std::size_t best = doc.sentences.size();
    double best_score = current_score;
    for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
      if (chosen[i]) continue;
      auto trial = current;
      trial.insert(trial.end(), sent_tokens[i].begin(), sent_tokens[i].end());
      const double score = mean_r12(trial, ref);
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    if (best == doc.sentences.size()) break;
    chosen[best] = true;
    current.insert(current.end(), sent_tokens[best].begin(), sent_tokens[best].end());
    current_score = best_score;
    ++count;
  }

  std::vector<Sentence> out;
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    if (chosen[i]) out.push_back(doc.sentences[i]);
  }
  return out;
}

std::vector<Sentence> lead_k(const Document& doc, std::size_t k) {
  const auto n = std::min(k, doc.sentences.size());
  return {doc.sentences.begin(), doc.sentences.begin() + static_cast<std::ptrdiff_t>(n)};
}

PositionHistogram position_histogram(std::span<const PositionedSummary> summaries, std::size_t bins) {
  if (bins == 0) throw ConfigError("position histogram needs at least one bin");
  PositionHistogram hist{std::vector<double>(bins, 0.0), 0};
  for (const auto& s : summaries) {
    for (std::size_t idx : s.indices) {
      if (s.document_sentences == 0 || idx >= s.document_sentences) {
        throw ContractViolation("position_histogram: sentence index " + std::to_string(idx) +
                                " outside a " + std::to_string(s.document_sentences) +
                                "-sentence document");
      }
      const std::size_t bin = std::min(bins - 1, bins * idx / s.document_sentences);
      hist.mass[bin] += 1.0;
      ++hist.counted;
    }
  }
  if (hist.counted > 0) {
    for (auto& m : hist.mass) m /= static_cast<double>(hist.counted);
  }
  return hist;
}

CorpusMetrics evaluate_corpus(std::span<const Document> docs, std::span<const SummaryRecord> summaries,
                              const std::string& system, const RougeOptions& options) {
  std::unordered_map<std::string, const Document*> by_id;
  for (const auto& d : docs) by_id.emplace(d.id, &d);

  CorpusMetrics m;
  m.system = system;
  double r1 = 0.0, r2 = 0.0, rl = 0.0;
  for (const auto& rec : summaries) {
    const auto it = by_id.find(rec.article_id);
    if (it == by_id.end()) {
      m.unknown_ids.push_back(rec.article_id);
      continue;
    }
    const Document& doc = *it->second;
    if (doc.reference.empty()) {
      ++m.skipped_no_reference;
      continue;
    }
    std::vector<Sentence> summary;
    summary.reserve(rec.sentences.size());
    for (std::size_t i = 0; i < rec.sentences.size(); ++i) {
      summary.push_back(make_sentence(rec.sentence_indices[i], rec.sentences[i]));
    }
    const auto t = score_summary(summary, doc.reference, options);
    r1 += t.r1.f1;
    r2 += t.r2.f1;
    rl += t.rl.f1;
    ++m.num_docs;
  }
  if (m.num_docs > 0) {
    const auto n = static_cast<double>(m.num_docs);
    m.rouge1_f1 = r1 / n;
    m.rouge2_f1 = r2 / n;
    m.rougeL_f1 = rl / n;
  }
  return m;
}

void write_metrics_csv(std::ostream& out, std::span<const CorpusMetrics> rows) {
  out << "system,rouge1_f1,rouge2_f1,rougeL_f1,num_docs\n";
  out << std::fixed << std::setprecision(4);
  for (const auto& r : rows) {
    out << r.system << ',' << r.rouge1_f1 << ',' << r.rouge2_f1 << ',' << r.rougeL_f1 << ','
        << r.num_docs << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

void write_histogram_csv(std::ostream& out, const PositionHistogram& hist) {
  out << "bin,mass\n";
  out << std::fixed << std::setprecision(6);
  for (std::size_t b = 0; b < hist.mass.size(); ++b) out << b << ',' << hist.mass[b] << '\n';
  out.unsetf(std::ios::floatfield);
}

}  // namespace ibsumm
