#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ibsumm/corpus.hpp"
#include "ibsumm/text.hpp"

namespace ibsumm {

using Phrase = std::vector<std::string>;

struct Keyphrase {
  std::vector<std::string> words;
  double score = 0.0;

  std::string text() const { return join(words); }
};

struct RakeOptions {
  std::size_t min_frequency = 1;  // phrase must occur at least this often
  std::size_t max_words = 0;      // 0 = no cap on phrase length
};

/// Maximal runs of consecutive non-stopword tokens inside each sentence, in
/// document order. Duplicates are kept. Single-token numeric runs are dropped.
std::vector<Phrase> extract_candidates(std::span<const std::vector<std::string>> sentence_tokens,
                                       const StopwordSet& stopwords);

/// RAKE word/phrase scoring over a candidate multiset:
///   freq(w) = occurrences of w across all candidates
///   deg(w)  = freq(w) + sum over candidates containing w of (|candidate| - 1)
///   score(phrase) = sum of deg(w) / freq(w) over the phrase's words
/// Each distinct phrase appears once in the result.
std::map<Phrase, double> score_candidates(std::span<const Phrase> candidates);

/// The k best distinct phrases of the document's article sentences (the
/// reference abstract is never read). Ties: earlier first occurrence, then
/// lexicographic order.
std::vector<Keyphrase> top_keyphrases(const Document& doc, std::size_t k,
                                      const StopwordSet& stopwords = smart_stopwords(),
                                      const RakeOptions& options = {});

}  // namespace ibsumm
