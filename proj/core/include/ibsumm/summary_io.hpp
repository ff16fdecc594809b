#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ibsumm/corpus.hpp"

namespace ibsumm {

/// One line of the summary interchange format shared by every command:
///   {"article_id": str, "sentence_indices": [int], "sentences": [str]}
struct SummaryRecord {
  std::string article_id;
  std::vector<std::size_t> sentence_indices;
  std::vector<std::string> sentences;
};

SummaryRecord make_summary_record(const std::string& article_id, std::span<const Sentence> sentences);

std::string summary_to_json_line(const SummaryRecord& record);
SummaryRecord parse_summary_line(std::string_view line);

void write_summaries(std::ostream& out, std::span<const SummaryRecord> records);
void write_summaries(const std::filesystem::path& path, std::span<const SummaryRecord> records);
/// Throws IoError when unreadable, Error (with line number) on a bad line.
std::vector<SummaryRecord> read_summaries(const std::filesystem::path& path);

}  // namespace ibsumm
