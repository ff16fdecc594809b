#include "ibsumm/summary_io.hpp"

#include <fstream>
#include <json.hpp>

#include "ibsumm/error.hpp"
#include "ibsumm/text.hpp"

namespace ibsumm {

using json = nlohmann::json;

SummaryRecord make_summary_record(const std::string& article_id, std::span<const Sentence> sentences) {
  SummaryRecord r{article_id, {}, {}};
  for (const auto& s : sentences) {
    r.sentence_indices.push_back(s.index);
    r.sentences.push_back(s.text);
  }
  return r;
}

std::string summary_to_json_line(const SummaryRecord& record) {
  json j;
  j["article_id"] = record.article_id;
  j["sentence_indices"] = record.sentence_indices;
  j["sentences"] = record.sentences;
  return j.dump();
}

SummaryRecord parse_summary_line(std::string_view line) {
  try {
    const auto j = json::parse(line);
    SummaryRecord r;
    r.article_id = j.at("article_id").get<std::string>();
    r.sentence_indices = j.at("sentence_indices").get<std::vector<std::size_t>>();
    r.sentences = j.at("sentences").get<std::vector<std::string>>();
    if (r.sentence_indices.size() != r.sentences.size()) {
      throw Error("sentence_indices and sentences differ in length");
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("invalid summary record: ") + e.what());
  }
}

void write_summaries(std::ostream& out, std::span<const SummaryRecord> records) {
  for (const auto& r : records) out << summary_to_json_line(r) << '\n';
}

void write_summaries(const std::filesystem::path& path, std::span<const SummaryRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write summaries: " + path.string());
  write_summaries(out, records);
}

std::vector<SummaryRecord> read_summaries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read summaries: " + path.string());
  std::vector<SummaryRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      out.push_back(parse_summary_line(line));
    } catch (const Error& e) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace ibsumm
