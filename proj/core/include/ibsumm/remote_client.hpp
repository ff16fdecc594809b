#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ibsumm/backends.hpp"

namespace ibsumm {

struct ServerHealth {
  std::string status;
  std::size_t embed_dim = 0;
  bool nsp = false;
  bool classify = false;
  std::string pooling;
};

struct ClassifyResponse {
  std::vector<std::vector<double>> probs;
  std::vector<std::string> labels;
};

/// JSON-over-HTTP client for the model server:
///   GET  /health
///   POST /embed     {"texts": [...]}        -> {"vectors": [[...]], "dim": d}
///   POST /nsp       {"pairs": [[a, b], ...]} -> {"probs": [...]}
///   POST /classify  {"texts": [...]}        -> {"probs": [[...]], "labels": [...]}
/// Requests are split into batches of `batch_size`; each batch is retried
/// `retries` times with exponential backoff on transport failure or 5xx.
/// Holds no connection state, so one instance may be used from many threads.
class RemoteClient {
 public:
  RemoteClient(std::string endpoint, std::chrono::milliseconds timeout, std::size_t batch_size,
               int retries = 2, std::chrono::milliseconds backoff = std::chrono::milliseconds(100));

  ServerHealth health() const;
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) const;
  /// Returned probabilities are clamped into [1e-6, 1 - 1e-6].
  std::vector<double> nsp(std::span<const SentencePair> pairs) const;
  /// Returns nullopt when the server answers 501 (no classifier loaded).
  std::optional<ClassifyResponse> classify(std::span<const std::string> texts) const;

  const std::string& endpoint() const { return endpoint_; }

 private:
  std::string post(const std::string& path, const std::string& body, int* status_out) const;
  std::string get(const std::string& path) const;

  std::string endpoint_;
  std::chrono::milliseconds timeout_;
  std::size_t batch_size_;
  int retries_;
  std::chrono::milliseconds backoff_;
};

}  // namespace ibsumm
