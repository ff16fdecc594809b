#include "ibsumm/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>
#include <json.hpp>

#include "ibsumm/error.hpp"
#include "ibsumm/text.hpp"

namespace ibsumm {

namespace {

using json = nlohmann::json;

// Lowercased, without the final period. Multi-part forms ("e.g", "i.e") are
// matched against the whole whitespace-delimited word before the period.
constexpr std::array<std::string_view, 30> kAbbreviations{
    "al",   "fig",  "figs", "eq",     "eqs",  "i.e",  "e.g",  "cf",   "vs",    "sec",
    "secs", "ref",  "refs", "tab",    "no",   "nos",  "vol",  "pp",   "approx", "resp",
    "dr",   "mr",   "mrs",  "ms",     "prof", "viz",  "ch",   "app",  "ca",    "eds"};

bool is_guarded_abbreviation(std::string_view word) {
  // Strip leading punctuation such as "(" or quotes.
  while (!word.empty() && !std::isalnum(static_cast<unsigned char>(word.front()))) {
    word.remove_prefix(1);
  }
  if (word.empty()) return false;
  if (word.size() == 1 && std::isalpha(static_cast<unsigned char>(word.front()))) {
    return true;  // initial
  }
  std::string lower(word);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) != kAbbreviations.end();
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

bool starts_sentence(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && (std::isupper(u) || std::isdigit(u));
}

std::string_view strip_sentence_tags(std::string_view s) {
  s = trim(s);
  if (s.starts_with("<S>")) s.remove_prefix(3);
  if (s.ends_with("</S>")) s.remove_suffix(4);
  return trim(s);
}

std::vector<Sentence> sentences_from_array(const json& arr, std::string_view field) {
  if (!arr.is_array()) throw Error(std::string(field) + " must be an array of strings");
  std::vector<Sentence> out;
  for (const auto& item : arr) {
    if (!item.is_string()) throw Error(std::string(field) + " must be an array of strings");
    const auto text = strip_sentence_tags(item.get_ref<const std::string&>());
    if (text.empty()) continue;
    out.push_back(make_sentence(out.size(), text));
  }
  return out;
}

}  // namespace

Sentence make_sentence(std::size_t index, std::string_view text) {
  Sentence s;
  s.index = index;
  s.text = std::string(trim(text));
  s.tokens = tokenize(s.text);
  return s;
}

std::vector<Sentence> segment(std::string_view raw) {
  std::vector<Sentence> out;
  std::size_t start = 0;
  const auto emit = [&](std::size_t end) {
    const auto piece = trim(raw.substr(start, end - start));
    if (!piece.empty()) out.push_back(make_sentence(out.size(), piece));
    start = end;
  };

  for (std::size_t i = 0; i < raw.size(); ++i) {
    const char c = raw[i];
    if (c != '.' && c != '?' && c != '!') continue;

    std::size_t end = i + 1;
    while (end < raw.size() && is_closer(raw[end])) ++end;
    if (end >= raw.size() || !is_space(raw[end])) continue;
    std::size_t next = end;
    while (next < raw.size() && is_space(raw[next])) ++next;
    if (next >= raw.size() || !starts_sentence(raw[next])) continue;

    if (c == '.') {
      std::size_t word_begin = i;
      while (word_begin > start && !is_space(raw[word_begin - 1])) --word_begin;
      if (is_guarded_abbreviation(raw.substr(word_begin, i - word_begin))) continue;
    }
    emit(end);
    i = end - 1;
  }
  emit(raw.size());
  return out;
}

std::vector<Sentence> filter_by_length(std::span<const Sentence> sentences, LengthBounds bounds) {
  if (bounds.min_words > bounds.max_words) {
    throw ConfigError("min_words (" + std::to_string(bounds.min_words) + ") exceeds max_words (" +
                      std::to_string(bounds.max_words) + ")");
  }
  std::vector<Sentence> out;
  for (const auto& s : sentences) {
    if (s.word_count() >= bounds.min_words && s.word_count() <= bounds.max_words) out.push_back(s);
  }
  return out;
}

Document parse_document_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("record is not a JSON object");

  Document doc;
  const auto id = j.find("article_id");
  if (id == j.end() || !id->is_string()) throw Error("missing string field \"article_id\"");
  doc.id = id->get<std::string>();

  const auto article = j.find("article_text");
  const auto raw = j.find("raw_text");
  const bool has_article = article != j.end() && !article->is_null();
  const bool has_raw = raw != j.end() && !raw->is_null();
  if (has_article == has_raw) {
    throw Error("exactly one of \"article_text\" or \"raw_text\" is required");
  }
  if (has_article) {
    doc.sentences = sentences_from_array(*article, "article_text");
  } else {
    if (!raw->is_string()) throw Error("\"raw_text\" must be a string");
    doc.sentences = segment(raw->get_ref<const std::string&>());
  }

  if (const auto abs = j.find("abstract_text"); abs != j.end() && !abs->is_null()) {
    doc.reference = sentences_from_array(*abs, "abstract_text");
  }
  if (const auto cat = j.find("category"); cat != j.end() && !cat->is_null()) {
    if (!cat->is_string()) throw Error("\"category\" must be a string");
    doc.category = cat->get<std::string>();
  }
  return doc;
}

CorpusLoad read_corpus(std::istream& in, std::optional<std::size_t> limit) {
  CorpusLoad result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (limit && result.documents.size() >= *limit) break;
    if (trim(line).empty()) continue;
    try {
      auto doc = parse_document_line(line);
      if (doc.sentences.empty()) {
        ++result.skipped_empty;
        continue;
      }
      result.documents.push_back(std::move(doc));
    } catch (const Error& e) {
      result.errors.push_back({line_no, e.what()});
    }
  }
  if (result.documents.empty()) {
    throw Error("corpus contains no valid documents (" + std::to_string(result.errors.size()) +
                " malformed lines, " + std::to_string(result.skipped_empty) + " empty)");
  }
  return result;
}

CorpusLoad load_corpus(const std::filesystem::path& path, std::optional<std::size_t> limit) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read corpus file: " + path.string());
  return read_corpus(in, limit);
}

std::string document_to_json_line(const Document& doc) {
  json j;
  j["article_id"] = doc.id;
  auto& article = j["article_text"] = json::array();
  for (const auto& s : doc.sentences) article.push_back(s.text);
  auto& abstract = j["abstract_text"] = json::array();
  for (const auto& s : doc.reference) abstract.push_back(s.text);
  if (doc.category) j["category"] = *doc.category;
  return j.dump();
}

void write_corpus(const std::filesystem::path& path, std::span<const Document> docs) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write corpus file: " + path.string());
  for (const auto& d : docs) out << document_to_json_line(d) << '\n';
}

}  // namespace ibsumm
