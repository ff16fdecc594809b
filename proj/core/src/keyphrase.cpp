#include "ibsumm/keyphrase.hpp"

#include <algorithm>
#include <unordered_map>

namespace ibsumm {

std::vector<Phrase> extract_candidates(std::span<const std::vector<std::string>> sentence_tokens,
                                       const StopwordSet& stopwords) {
  std::vector<Phrase> out;
  for (const auto& tokens : sentence_tokens) {
    Phrase run;
    const auto flush = [&] {
      if (run.empty()) return;
      if (!(run.size() == 1 && is_numeric(run.front()))) out.push_back(std::move(run));
      run.clear();
    };
    for (const auto& t : tokens) {
      if (stopwords.contains(t)) {
        flush();
      } else {
        run.push_back(t);
      }
    }
    flush();
  }
  return out;
}

std::map<Phrase, double> score_candidates(std::span<const Phrase> candidates) {
  std::unordered_map<std::string, double> freq;
  std::unordered_map<std::string, double> deg;
  for (const auto& phrase : candidates) {
    const double extra = static_cast<double>(phrase.size()) - 1.0;
    std::vector<const std::string*> seen;
    for (const auto& w : phrase) {
      freq[w] += 1.0;
      const bool first_in_phrase =
          std::none_of(seen.begin(), seen.end(), [&](const std::string* s) { return *s == w; });
      if (first_in_phrase) {
        deg[w] += extra;
        seen.push_back(&w);
      }
    }
  }

  std::map<Phrase, double> scores;
  for (const auto& phrase : candidates) {
    if (scores.contains(phrase)) continue;
    double total = 0.0;
    for (const auto& w : phrase) total += (deg[w] + freq[w]) / freq[w];
    scores.emplace(phrase, total);
  }
  return scores;
}

std::vector<Keyphrase> top_keyphrases(const Document& doc, std::size_t k,
                                      const StopwordSet& stopwords, const RakeOptions& options) {
  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(doc.sentences.size());
  for (const auto& s : doc.sentences) tokens.push_back(s.tokens);

  auto candidates = extract_candidates(tokens, stopwords);
  if (options.max_words > 0) {
    std::erase_if(candidates, [&](const Phrase& p) { return p.size() > options.max_words; });
  }
  if (candidates.empty()) return {};

  const auto scores = score_candidates(candidates);

  struct Ranked {
    const Phrase* phrase;
    double score;
    std::size_t first;
    std::size_t count;
  };
  std::map<Phrase, std::size_t> slot;
  std::vector<Ranked> ranked;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto [it, inserted] = slot.try_emplace(candidates[i], ranked.size());
    if (inserted) {
      ranked.push_back({&it->first, scores.at(candidates[i]), i, 1});
    } else {
      ++ranked[it->second].count;
    }
  }
  std::erase_if(ranked, [&](const Ranked& r) { return r.count < options.min_frequency; });
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.first != b.first) return a.first < b.first;
    return *a.phrase < *b.phrase;
  });

  std::vector<Keyphrase> out;
  for (std::size_t i = 0; i < ranked.size() && i < k; ++i) {
    out.push_back({*ranked[i].phrase, ranked[i].score});
  }
  return out;
}

}  // namespace ibsumm
