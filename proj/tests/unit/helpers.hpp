#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ibsumm/backends.hpp"
#include "ibsumm/corpus.hpp"

namespace testing {

inline ibsumm::Document make_doc(std::string id, std::initializer_list<std::string> article,
                                 std::initializer_list<std::string> reference = {}) {
  ibsumm::Document d;
  d.id = std::move(id);
  std::size_t i = 0;
  for (const auto& s : article) d.sentences.push_back(ibsumm::make_sentence(i++, s));
  i = 0;
  for (const auto& s : reference) d.reference.push_back(ibsumm::make_sentence(i++, s));
  return d;
}

inline std::vector<ibsumm::Sentence> sentences(std::initializer_list<std::string> texts) {
  std::vector<ibsumm::Sentence> out;
  std::size_t i = 0;
  for (const auto& s : texts) out.push_back(ibsumm::make_sentence(i++, s));
  return out;
}

/// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("ibsumm-test-" + std::to_string(rd()) + "-" + std::to_string(counter()++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

  std::filesystem::path write(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

 private:
  static std::atomic<int>& counter() {
    static std::atomic<int> c{0};
    return c;
  }
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Word-vector embedder built from an inline table.
inline ibsumm::StaticEmbedder embedder(const std::string& table) {
  std::istringstream in(table);
  return ibsumm::StaticEmbedder::read(in, "<test>");
}

/// NSP scorer that returns fixed probabilities keyed on the pair and counts calls.
class CountingNsp final : public ibsumm::NextSentenceScorer {
 public:
  explicit CountingNsp(double p = 0.5) : p_(p) {}
  std::vector<double> nsp(std::span<const ibsumm::SentencePair> pairs) const override {
    ++calls;
    pairs_seen += pairs.size();
    return std::vector<double>(pairs.size(), p_);
  }
  mutable std::size_t calls = 0;
  mutable std::size_t pairs_seen = 0;

 private:
  double p_;
};

}  // namespace testing
