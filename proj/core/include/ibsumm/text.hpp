#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace ibsumm {

using StopwordSet = std::unordered_set<std::string>;

/// The pipeline-wide tokenizer: ASCII-lowercased runs of [A-Za-z0-9].
/// Every other byte (punctuation, whitespace, non-ASCII) is a boundary.
/// Keyphrase extraction, selection, NSP fallback and ROUGE all share it.
std::vector<std::string> tokenize(std::string_view text);

/// Bundled SMART stoplist (571 entries), split with `tokenize`.
const StopwordSet& smart_stopwords();

bool is_numeric(std::string_view token);

std::string join(const std::vector<std::string>& words, std::string_view sep = " ");

std::string_view trim(std::string_view s);

/// Porter (1980) suffix stripper, for optional stemmed ROUGE.
std::string porter_stem(std::string_view word);

}  // namespace ibsumm
