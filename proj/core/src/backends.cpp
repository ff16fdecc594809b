#include "ibsumm/backends.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <mutex>
#include <sstream>

#include "ibsumm/error.hpp"
#include "ibsumm/remote_client.hpp"

namespace ibsumm {

double cosine(const EmbeddingVector& u, const EmbeddingVector& v) {
  if (u.dim() != v.dim()) {
    throw ContractViolation("cosine: dimension mismatch (" + std::to_string(u.dim()) + " vs " +
                            std::to_string(v.dim()) + ")");
  }
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    dot += u.values[i] * v.values[i];
    nu += u.values[i] * u.values[i];
    nv += v.values[i] * v.values[i];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  // sqrt(nu * nv) keeps cosine(u, u) exactly 1.
  return std::clamp(dot / std::sqrt(nu * nv), -1.0, 1.0);
}

double clamp_probability(double p) {
  if (std::isnan(p)) throw ContractViolation("probability is NaN");
  return std::clamp(p, kProbabilityFloor, 1.0 - kProbabilityFloor);
}

// ---------------------------------------------------------------------------
// StaticEmbedder

StaticEmbedder::StaticEmbedder(std::unordered_map<std::string, std::vector<double>> table,
                               std::size_t dim)
    : table_(std::move(table)), dim_(dim) {
  if (dim_ == 0) throw ContractViolation("embedding dimension must be positive");
  for (const auto& [word, vec] : table_) {
    if (vec.size() != dim_) {
      throw ContractViolation("vector for '" + word + "' has dimension " +
                              std::to_string(vec.size()) + ", expected " + std::to_string(dim_));
    }
  }
}

StaticEmbedder StaticEmbedder::read(std::istream& in, const std::string& source) {
  std::unordered_map<std::string, std::vector<double>> table;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::istringstream fields(line);
    std::string word;
    fields >> word;
    std::vector<double> values;
    std::string raw;
    while (fields >> raw) {
      double x = 0.0;
      try {
        std::size_t used = 0;
        x = std::stod(raw, &used);
        if (used != raw.size()) throw std::invalid_argument(raw);
      } catch (const std::exception&) {
        throw Error(source + ":" + std::to_string(line_no) + ": bad number '" + raw + "'");
      }
      if (!std::isfinite(x)) {
        throw Error(source + ":" + std::to_string(line_no) + ": non-finite value");
      }
      values.push_back(x);
    }
    // word2vec-style "count dim" header
    if (line_no == 1 && values.size() == 1 && is_numeric(word)) {
      dim = static_cast<std::size_t>(values.front());
      if (dim == 0) throw Error(source + ":1: header declares dimension 0");
      continue;
    }
    if (values.empty()) throw Error(source + ":" + std::to_string(line_no) + ": no values");
    if (dim == 0) dim = values.size();
    if (values.size() != dim) {
      throw Error(source + ":" + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                  " values, found " + std::to_string(values.size()));
    }
    table.insert_or_assign(std::move(word), std::move(values));
  }
  if (table.empty()) throw Error(source + ": no word vectors");
  return StaticEmbedder(std::move(table), dim);
}

StaticEmbedder StaticEmbedder::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read embedding file: " + path.string());
  return read(in, path.string());
}

std::vector<EmbeddingVector> StaticEmbedder::embed(std::span<const std::string> texts) const {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    EmbeddingVector v{std::vector<double>(dim_, 0.0)};
    std::size_t known = 0;
    for (const auto& tok : tokenize(text)) {
      const auto it = table_.find(tok);
      if (it == table_.end()) continue;
      for (std::size_t i = 0; i < dim_; ++i) v.values[i] += it->second[i];
      ++known;
    }
    if (known > 0) {
      for (auto& x : v.values) x /= static_cast<double>(known);
    }
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JaccardNsp

std::vector<double> JaccardNsp::nsp(std::span<const SentencePair> pairs) const {
  const auto content = [&](const std::string& s) {
    auto toks = tokenize(s);
    std::erase_if(toks, [&](const std::string& t) { return stopwords_->contains(t); });
    std::sort(toks.begin(), toks.end());
    toks.erase(std::unique(toks.begin(), toks.end()), toks.end());
    return toks;
  };
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    const auto sa = content(a);
    const auto sb = content(b);
    std::vector<std::string> common;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
    const std::size_t uni = sa.size() + sb.size() - common.size();
    const double jaccard = uni == 0 ? 0.0 : static_cast<double>(common.size()) / static_cast<double>(uni);
    out.push_back(std::clamp(0.01 + 0.98 * jaccard, 0.01, 0.99));
  }
  return out;
}

// ---------------------------------------------------------------------------
// UniformClassifier

UniformClassifier::UniformClassifier(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw ConfigError("classifier label set is empty");
}

std::vector<std::vector<double>> UniformClassifier::classify(std::span<const std::string> texts) const {
  const double p = 1.0 / static_cast<double>(labels_.size());
  return std::vector<std::vector<double>>(texts.size(), std::vector<double>(labels_.size(), p));
}

// ---------------------------------------------------------------------------
// Remote adapters

namespace {

class RemoteEmbedder final : public Embedder {
 public:
  explicit RemoteEmbedder(std::shared_ptr<const RemoteClient> client) : client_(std::move(client)) {}

  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) const override {
    auto out = client_->embed(texts);
    if (!out.empty()) {
      std::call_once(dim_once_, [&] { dim_ = out.front().dim(); });
      for (const auto& v : out) {
        if (v.dim() != dim_) {
          throw ContractViolation("embedding dimension changed between calls (" +
                                  std::to_string(dim_) + " vs " + std::to_string(v.dim()) + ")");
        }
      }
    }
    return out;
  }

  std::size_t dim() const override {
    std::call_once(dim_once_, [&] { dim_ = client_->health().embed_dim; });
    return dim_;
  }

 private:
  std::shared_ptr<const RemoteClient> client_;
  mutable std::once_flag dim_once_;
  mutable std::size_t dim_ = 0;
};

class RemoteNsp final : public NextSentenceScorer {
 public:
  explicit RemoteNsp(std::shared_ptr<const RemoteClient> client) : client_(std::move(client)) {}
  std::vector<double> nsp(std::span<const SentencePair> pairs) const override {
    return client_->nsp(pairs);
  }

 private:
  std::shared_ptr<const RemoteClient> client_;
};

class RemoteClassifier final : public CategoryClassifier {
 public:
  RemoteClassifier(std::shared_ptr<const RemoteClient> client, std::vector<std::string> expected)
      : client_(std::move(client)), expected_(std::move(expected)) {}

  std::vector<std::vector<double>> classify(std::span<const std::string> texts) const override {
    auto res = client_->classify(texts);
    if (!res) throw BackendError(client_->endpoint() + "/classify: no classifier loaded (501)");
    check_labels(res->labels);
    return std::move(res->probs);
  }

  const std::vector<std::string>& labels() const override {
    std::call_once(labels_once_, [&] {
      const std::string probe = "probe";
      auto res = client_->classify(std::span(&probe, 1));
      if (!res) throw BackendError(client_->endpoint() + "/classify: no classifier loaded (501)");
      check_labels(res->labels);
      labels_ = std::move(res->labels);
    });
    return labels_;
  }

 private:
  void check_labels(const std::vector<std::string>& got) const {
    if (!expected_.empty() && got != expected_) {
      throw ContractViolation("classifier label set (" + std::to_string(got.size()) +
                              " labels) does not match the configured set (" +
                              std::to_string(expected_.size()) + " labels)");
    }
  }

  std::shared_ptr<const RemoteClient> client_;
  std::vector<std::string> expected_;
  mutable std::once_flag labels_once_;
  mutable std::vector<std::string> labels_;
};

}  // namespace

void BackendConfig::validate() const {
  if (batch_size == 0) throw ConfigError("backend.batch_size must be positive");
  if (timeout.count() <= 0) throw ConfigError("backend.timeout must be positive");
  if (mode == BackendMode::remote && endpoint.empty()) {
    throw ConfigError("remote backend requires an endpoint (--endpoint or IBSUMM_ENDPOINT)");
  }
  if (mode == BackendMode::offline && embedding_file.empty()) {
    throw ConfigError("offline backend requires an embedding file (--embeddings)");
  }
}

Backends make_backends(const BackendConfig& config) {
  config.validate();
  Backends b;
  if (config.mode == BackendMode::offline) {
    b.embedder = std::make_shared<StaticEmbedder>(StaticEmbedder::load(config.embedding_file));
    b.nsp = std::make_shared<JaccardNsp>();
    if (!config.labels.empty()) b.classifier = std::make_shared<UniformClassifier>(config.labels);
    return b;
  }
  auto client = std::make_shared<const RemoteClient>(config.endpoint, config.timeout, config.batch_size);
  b.embedder = std::make_shared<RemoteEmbedder>(client);
  b.nsp = std::make_shared<RemoteNsp>(client);
  b.classifier = std::make_shared<RemoteClassifier>(client, config.labels);
  return b;
}

}  // namespace ibsumm
