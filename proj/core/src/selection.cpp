#include "ibsumm/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ibsumm/error.hpp"

namespace ibsumm {

double plogp_term(double p, double epsilon) {
  const double q = std::clamp(p, epsilon, 1.0);
  return q * std::log(q);
}

ViewScore keyword_view(const EmbeddingVector& sentence_vec,
                       std::span<const EmbeddingVector> keyphrase_vecs, double epsilon) {
  if (keyphrase_vecs.empty()) throw ContractViolation("keyword_view: no keyphrase vectors");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
  ViewScore v{"keywords", 0.0, 0.0, 0.0};
  for (const auto& y : keyphrase_vecs) {
    const double p = std::clamp(cosine(sentence_vec, y), epsilon, 1.0);
    v.contribution += p * std::log(p);
    v.similarity += p;
  }
  v.p = v.similarity / static_cast<double>(keyphrase_vecs.size());
  return v;
}

ViewScore category_view(std::span<const double> class_probs, std::span<const std::string> labels,
                        const std::optional<std::string>& target_label, double epsilon) {
  if (class_probs.empty() || class_probs.size() != labels.size()) {
    throw ContractViolation("category_view: distribution has " + std::to_string(class_probs.size()) +
                            " entries for " + std::to_string(labels.size()) + " labels");
  }
  const double sum = std::accumulate(class_probs.begin(), class_probs.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-6) {
    throw ContractViolation("category_view: distribution sums to " + std::to_string(sum));
  }
  double raw = 0.0;
  if (target_label) {
    const auto it = std::find(labels.begin(), labels.end(), *target_label);
    if (it == labels.end()) {
      throw ConfigError("category label '" + *target_label + "' is not in the classifier label set");
    }
    raw = class_probs[static_cast<std::size_t>(it - labels.begin())];
  } else {
    raw = *std::max_element(class_probs.begin(), class_probs.end());
  }
  const double p = std::clamp(raw, epsilon, 1.0);
  return {"category", p, p * std::log(p), p};
}

std::vector<ScoredSentence> score_sentences(std::span<const Sentence> sentences,
                                            std::span<const Keyphrase> keyphrases,
                                            const Embedder& embedder,
                                            const CategorySignal* category,
                                            const ScoringOptions& options,
                                            std::vector<std::string>* warnings) {
  if (!(options.epsilon > 0.0 && options.epsilon < 1.0)) {
    throw ConfigError("epsilon must lie in (0, 1)");
  }
  std::vector<ScoredSentence> out;
  if (sentences.empty()) {
    if (warnings) warnings->push_back("no admissible sentences to score");
    return out;
  }
  std::vector<std::string> texts;
  texts.reserve(sentences.size());
  for (const auto& s : sentences) texts.push_back(s.text);

  std::vector<EmbeddingVector> sentence_vecs;
  std::vector<EmbeddingVector> phrase_vecs;
  if (keyphrases.empty()) {
    if (warnings) warnings->push_back("keyword view skipped: no keyphrases extracted");
  } else {
    std::vector<std::string> phrases;
    phrases.reserve(keyphrases.size());
    for (const auto& k : keyphrases) phrases.push_back(k.text());
    sentence_vecs = embedder.embed(texts);
    phrase_vecs = embedder.embed(phrases);
    if (sentence_vecs.size() != texts.size() || phrase_vecs.size() != phrases.size()) {
      throw ContractViolation("embedder returned the wrong number of vectors");
    }
  }

  std::vector<std::vector<double>> class_probs;
  if (category) {
    if (!category->classifier) throw ConfigError("category view requested without a classifier");
    class_probs = category->classifier->classify(texts);
    if (class_probs.size() != texts.size()) {
      throw ContractViolation("classifier returned the wrong number of distributions");
    }
  }

  const bool eq4 = options.ranking == RankingMode::eq4;
  out.reserve(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    ScoredSentence s{sentences[i], {}, 0.0};
    if (category) {
      auto v = category_view(class_probs[i], category->classifier->labels(), category->target_label,
                             options.epsilon);
      s.total += options.alpha * (eq4 ? v.contribution : v.similarity);
      s.view_scores.push_back(std::move(v));
    }
    if (!phrase_vecs.empty()) {
      auto v = keyword_view(sentence_vecs[i], phrase_vecs, options.epsilon);
      s.total += options.beta * (eq4 ? v.contribution : v.similarity);
      s.view_scores.push_back(std::move(v));
    }
    out.push_back(std::move(s));
  }
  return out;
}

CandidateSet select_top_n(std::span<const ScoredSentence> scored, std::size_t n) {
  std::vector<std::size_t> order(scored.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scored[a].total != scored[b].total) return scored[a].total > scored[b].total;
    return scored[a].sentence.index < scored[b].sentence.index;
  });
  order.resize(std::min(n, order.size()));

  CandidateSet set;
  set.n_requested = n;
  for (std::size_t i : order) set.members.push_back(scored[i]);
  std::sort(set.members.begin(), set.members.end(), [](const auto& a, const auto& b) {
    return a.sentence.index < b.sentence.index;
  });
  return set;
}

}  // namespace ibsumm
