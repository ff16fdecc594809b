#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ibsumm/text.hpp"

namespace ibsumm {

struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
};

/// Cosine similarity; 0.0 when either vector has zero norm. Throws
/// ContractViolation on dimension mismatch.
double cosine(const EmbeddingVector& u, const EmbeddingVector& v);

using SentencePair = std::pair<std::string, std::string>;

// Backends are shared by concurrent document workers, so every call is const.

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::vector<EmbeddingVector> embed(std::span<const std::string> texts) const = 0;
  virtual std::size_t dim() const = 0;
};

class NextSentenceScorer {
 public:
  virtual ~NextSentenceScorer() = default;
  /// P(second follows first) for each pair, order-preserving.
  virtual std::vector<double> nsp(std::span<const SentencePair> pairs) const = 0;
};

class CategoryClassifier {
 public:
  virtual ~CategoryClassifier() = default;
  virtual std::vector<std::vector<double>> classify(std::span<const std::string> texts) const = 0;
  virtual const std::vector<std::string>& labels() const = 0;
  /// True for the uniform offline stand-in.
  virtual bool is_stub() const { return false; }
};

/// Offline embedder over a static word-vector table. A text's vector is the
/// mean of its in-vocabulary token vectors; texts with no known token map to
/// the zero vector.
class StaticEmbedder final : public Embedder {
 public:
  StaticEmbedder(std::unordered_map<std::string, std::vector<double>> table, std::size_t dim);

  /// Text format: one "token v1 v2 ... vd" line per word. An optional
  /// leading "count dim" header line is accepted.
  static StaticEmbedder load(const std::filesystem::path& path);
  static StaticEmbedder read(std::istream& in, const std::string& source = "<stream>");

  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) const override;
  std::size_t dim() const override { return dim_; }
  std::size_t vocabulary_size() const { return table_.size(); }

 private:
  std::unordered_map<std::string, std::vector<double>> table_;
  std::size_t dim_;
};

/// Offline NSP stand-in: clamp(0.01 + 0.98 * J, 0.01, 0.99) where J is the
/// Jaccard overlap of the two sentences' non-stopword token sets.
class JaccardNsp final : public NextSentenceScorer {
 public:
  explicit JaccardNsp(const StopwordSet& stopwords = smart_stopwords()) : stopwords_(&stopwords) {}
  explicit JaccardNsp(StopwordSet&&) = delete;  // the stoplist must outlive the scorer
  std::vector<double> nsp(std::span<const SentencePair> pairs) const override;

 private:
  const StopwordSet* stopwords_;
};

/// Offline classifier stand-in returning the uniform distribution.
class UniformClassifier final : public CategoryClassifier {
 public:
  explicit UniformClassifier(std::vector<std::string> labels);
  std::vector<std::vector<double>> classify(std::span<const std::string> texts) const override;
  const std::vector<std::string>& labels() const override { return labels_; }
  bool is_stub() const override { return true; }

 private:
  std::vector<std::string> labels_;
};

enum class BackendMode { offline, remote };

struct BackendConfig {
  BackendMode mode = BackendMode::offline;
  std::string endpoint;                  // required for remote
  std::filesystem::path embedding_file;  // required for offline
  std::chrono::milliseconds timeout{30000};
  std::size_t batch_size = 32;
  std::vector<std::string> labels;  // expected category labels; empty = accept server's

  /// Throws ConfigError when the mode's required fields are missing.
  void validate() const;
};

struct Backends {
  std::shared_ptr<const Embedder> embedder;
  std::shared_ptr<const NextSentenceScorer> nsp;
  std::shared_ptr<const CategoryClassifier> classifier;  // may be null
};

/// Builds the backend trio for a config. Offline: static vectors, Jaccard
/// NSP and (when labels are configured) the uniform stub. Remote: clients for
/// the model server.
Backends make_backends(const BackendConfig& config);

/// Keeps a probability away from 0 and 1 before it reaches a logarithm.
double clamp_probability(double p);

inline constexpr double kProbabilityFloor = 1e-6;

}  // namespace ibsumm
