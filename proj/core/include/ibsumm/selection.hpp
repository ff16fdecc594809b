#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ibsumm/backends.hpp"
#include "ibsumm/corpus.hpp"
#include "ibsumm/keyphrase.hpp"

namespace ibsumm {

// Content selection. Each signal view turns a sentence into a probability-like
// affinity p in [epsilon, 1] and the view's relevance term is p * ln(p). For
// the keyword view the term is summed over every keyphrase. A sentence's
// total is alpha * (category term) + beta * (keyword term); higher is better,
// and the maximum 0 is reached only when every p equals 1.

enum class RankingMode {
  eq4,             // sum of p * ln(p)
  similarity_sum,  // sum of p (clamped cosine) for keywords, p for category
};

inline constexpr double kDefaultEpsilon = 1e-2;

struct ViewScore {
  std::string view_id;
  double p = 1.0;             // clamped affinity (keyword view: mean over keyphrases)
  double contribution = 0.0;  // sum of p_y * ln(p_y)
  double similarity = 0.0;    // sum of p_y
};

/// p * ln(p) with p clamped into [epsilon, 1].
double plogp_term(double p, double epsilon);

/// Keyword view: p_y = clamp(cos(sentence, y), epsilon, 1) for every keyphrase
/// vector y. Precondition: keyphrase_vecs non-empty.
ViewScore keyword_view(const EmbeddingVector& sentence_vec,
                       std::span<const EmbeddingVector> keyphrase_vecs, double epsilon);

/// Category view: p is the probability of `target_label`, or the highest
/// class probability when no target is given. Throws ConfigError when the
/// target is not among `labels`, ContractViolation when the distribution is
/// not normalized.
ViewScore category_view(std::span<const double> class_probs, std::span<const std::string> labels,
                        const std::optional<std::string>& target_label, double epsilon);

struct ScoredSentence {
  Sentence sentence;
  std::vector<ViewScore> view_scores;
  double total = 0.0;
};

struct CandidateSet {
  std::vector<ScoredSentence> members;  // ascending sentence index
  std::size_t n_requested = 0;
};

struct ScoringOptions {
  double alpha = 0.0;  // category view weight
  double beta = 1.0;   // keyword view weight
  double epsilon = kDefaultEpsilon;
  RankingMode ranking = RankingMode::eq4;
};

struct CategorySignal {
  const CategoryClassifier* classifier = nullptr;
  std::optional<std::string> target_label;
};

/// Scores every sentence. With no keyphrases the keyword view is skipped and
/// a warning appended; a null `category` runs the single (keyword) view.
std::vector<ScoredSentence> score_sentences(std::span<const Sentence> sentences,
                                            std::span<const Keyphrase> keyphrases,
                                            const Embedder& embedder,
                                            const CategorySignal* category,
                                            const ScoringOptions& options,
                                            std::vector<std::string>* warnings = nullptr);

/// Keeps the n highest totals (ties: smaller sentence index), re-sorted by
/// sentence index.
CandidateSet select_top_n(std::span<const ScoredSentence> scored, std::size_t n);

}  // namespace ibsumm
