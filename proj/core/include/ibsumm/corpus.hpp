#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ibsumm {

struct Sentence {
  std::size_t index = 0;  // zero-based position in the source document
  std::string text;
  std::vector<std::string> tokens;

  std::size_t word_count() const { return tokens.size(); }
};

/// Builds a sentence from trimmed text, tokenized with the pipeline tokenizer.
Sentence make_sentence(std::size_t index, std::string_view text);

struct Document {
  std::string id;
  std::vector<Sentence> sentences;
  std::vector<Sentence> reference;  // the abstract; empty when unevaluated
  std::optional<std::string> category;
};

/// Rule-based splitter. Breaks after '.', '?' or '!' (optionally followed by
/// closing quotes/brackets) when whitespace and then an uppercase letter or
/// digit follow. A '.' that ends a guarded abbreviation ("et al.", "Fig.",
/// "e.g.", single-letter initials, ...) never breaks.
std::vector<Sentence> segment(std::string_view raw_text);

struct LengthBounds {
  std::size_t min_words = 8;
  std::size_t max_words = 80;
};

/// Keeps sentences with min_words <= word_count <= max_words; indices are
/// preserved. Throws ConfigError when min_words > max_words.
std::vector<Sentence> filter_by_length(std::span<const Sentence> sentences, LengthBounds bounds);

struct LineError {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct CorpusLoad {
  std::vector<Document> documents;
  std::size_t skipped_empty = 0;  // records with no usable article sentence
  std::vector<LineError> errors;
};

/// Reads a JSON-lines corpus. Malformed lines are reported in `errors` and
/// skipped. Throws IoError when the file cannot be read and Error when no
/// valid document remains.
CorpusLoad load_corpus(const std::filesystem::path& path,
                       std::optional<std::size_t> limit = std::nullopt);
CorpusLoad read_corpus(std::istream& in, std::optional<std::size_t> limit = std::nullopt);

/// Parses one corpus line. Throws Error describing the schema violation.
Document parse_document_line(std::string_view line);

/// Serializes with pre-split "article_text"; the inverse of parse_document_line.
std::string document_to_json_line(const Document& doc);
void write_corpus(const std::filesystem::path& path, std::span<const Document> docs);

}  // namespace ibsumm
