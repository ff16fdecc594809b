#include "ibsumm/remote_client.hpp"

#include <cmath>
#include <httplib.h>
#include <json.hpp>
#include <thread>

#include "ibsumm/error.hpp"

namespace ibsumm {

namespace {

using json = nlohmann::json;

json parse_body(const std::string& where, const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw ContractViolation(where + ": response is not valid JSON (" + e.what() + ")");
  }
}

template <typename T, typename Fn>
void for_each_batch(std::span<const T> items, std::size_t batch, Fn&& fn) {
  for (std::size_t i = 0; i < items.size(); i += batch) {
    fn(items.subspan(i, std::min(batch, items.size() - i)));
  }
}

void expect_length(const std::string& where, const json& arr, std::size_t expected) {
  if (!arr.is_array() || arr.size() != expected) {
    throw ContractViolation(where + ": expected " + std::to_string(expected) +
                            " results, got " + (arr.is_array() ? std::to_string(arr.size()) : "non-array"));
  }
}

}  // namespace

RemoteClient::RemoteClient(std::string endpoint, std::chrono::milliseconds timeout,
                           std::size_t batch_size, int retries, std::chrono::milliseconds backoff)
    : endpoint_(std::move(endpoint)),
      timeout_(timeout),
      batch_size_(batch_size),
      retries_(retries),
      backoff_(backoff) {
  while (!endpoint_.empty() && endpoint_.back() == '/') endpoint_.pop_back();
  if (endpoint_.empty()) throw ConfigError("remote endpoint is empty");
  if (endpoint_.starts_with("https://")) {
    throw ConfigError("https endpoints are not supported: " + endpoint_);
  }
  if (batch_size_ == 0) throw ConfigError("batch size must be positive");
}

std::string RemoteClient::post(const std::string& path, const std::string& body,
                               int* status_out) const {
  std::string last_error;
  for (int attempt = 0; attempt <= retries_; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(backoff_ * (1 << (attempt - 1)));
    httplib::Client cli(endpoint_);
    cli.set_connection_timeout(timeout_);
    cli.set_read_timeout(timeout_);
    cli.set_write_timeout(timeout_);
    auto res = cli.Post(path, body, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500 && res->status != 501) {
      last_error = "HTTP " + std::to_string(res->status) + " " + res->body;
      continue;
    }
    if (status_out) *status_out = res->status;
    if (res->status == 501 && status_out) return {};
    if (res->status != 200) {
      throw ContractViolation(endpoint_ + path + ": HTTP " + std::to_string(res->status) + " " +
                              res->body);
    }
    return res->body;
  }
  throw BackendError(endpoint_ + path + ": request failed after " + std::to_string(retries_ + 1) +
                     " attempts: " + last_error);
}

std::string RemoteClient::get(const std::string& path) const {
  std::string last_error;
  for (int attempt = 0; attempt <= retries_; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(backoff_ * (1 << (attempt - 1)));
    httplib::Client cli(endpoint_);
    cli.set_connection_timeout(timeout_);
    cli.set_read_timeout(timeout_);
    auto res = cli.Get(path);
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw ContractViolation(endpoint_ + path + ": HTTP " + std::to_string(res->status));
    }
    return res->body;
  }
  throw BackendError(endpoint_ + path + ": request failed after " + std::to_string(retries_ + 1) +
                     " attempts: " + last_error);
}

ServerHealth RemoteClient::health() const {
  const auto where = endpoint_ + "/health";
  const auto j = parse_body(where, get("/health"));
  ServerHealth h;
  try {
    h.status = j.at("status").get<std::string>();
    h.embed_dim = j.value("embed_dim", std::size_t{0});
    h.nsp = j.value("nsp", false);
    h.classify = j.value("classify", false);
    h.pooling = j.value("pooling", std::string{});
  } catch (const json::exception& e) {
    throw ContractViolation(where + ": " + e.what());
  }
  return h;
}

std::vector<EmbeddingVector> RemoteClient::embed(std::span<const std::string> texts) const {
  const auto where = endpoint_ + "/embed";
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for_each_batch(texts, batch_size_, [&](std::span<const std::string> batch) {
    json req{{"texts", json::array()}};
    for (const auto& t : batch) req["texts"].push_back(t);
    const auto j = parse_body(where, post("/embed", req.dump(), nullptr));
    try {
      const auto& vectors = j.at("vectors");
      expect_length(where, vectors, batch.size());
      for (const auto& row : vectors) {
        EmbeddingVector v{row.get<std::vector<double>>()};
        for (double x : v.values) {
          if (!std::isfinite(x)) throw ContractViolation(where + ": non-finite embedding value");
        }
        if (!out.empty() && v.dim() != out.front().dim()) {
          throw ContractViolation(where + ": dimension mismatch within batch");
        }
        out.push_back(std::move(v));
      }
    } catch (const json::exception& e) {
      throw ContractViolation(where + ": " + e.what());
    }
  });
  return out;
}

std::vector<double> RemoteClient::nsp(std::span<const SentencePair> pairs) const {
  const auto where = endpoint_ + "/nsp";
  std::vector<double> out;
  out.reserve(pairs.size());
  for_each_batch(pairs, batch_size_, [&](std::span<const SentencePair> batch) {
    json req{{"pairs", json::array()}};
    for (const auto& [a, b] : batch) req["pairs"].push_back({a, b});
    const auto j = parse_body(where, post("/nsp", req.dump(), nullptr));
    try {
      const auto& probs = j.at("probs");
      expect_length(where, probs, batch.size());
      for (const auto& p : probs) out.push_back(clamp_probability(p.get<double>()));
    } catch (const json::exception& e) {
      throw ContractViolation(where + ": " + e.what());
    }
  });
  return out;
}

std::optional<ClassifyResponse> RemoteClient::classify(std::span<const std::string> texts) const {
  const auto where = endpoint_ + "/classify";
  ClassifyResponse out;
  bool unavailable = false;
  for_each_batch(texts, batch_size_, [&](std::span<const std::string> batch) {
    if (unavailable) return;
    json req{{"texts", json::array()}};
    for (const auto& t : batch) req["texts"].push_back(t);
    int status = 0;
    const auto body = post("/classify", req.dump(), &status);
    if (status == 501) {
      unavailable = true;
      return;
    }
    const auto j = parse_body(where, body);
    try {
      auto labels = j.at("labels").get<std::vector<std::string>>();
      if (out.labels.empty()) {
        out.labels = std::move(labels);
      } else if (labels != out.labels) {
        throw ContractViolation(where + ": label list changed between batches");
      }
      const auto& probs = j.at("probs");
      expect_length(where, probs, batch.size());
      for (const auto& row : probs) {
        auto dist = row.get<std::vector<double>>();
        if (dist.size() != out.labels.size()) {
          throw ContractViolation(where + ": distribution length " + std::to_string(dist.size()) +
                                  " does not match " + std::to_string(out.labels.size()) + " labels");
        }
        double sum = 0.0;
        for (double p : dist) {
          if (!std::isfinite(p) || p < 0.0) throw ContractViolation(where + ": invalid probability");
          sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-6) {
          throw ContractViolation(where + ": distribution sums to " + std::to_string(sum));
        }
        out.probs.push_back(std::move(dist));
      }
    } catch (const json::exception& e) {
      throw ContractViolation(where + ": " + e.what());
    }
  });
  if (unavailable) return std::nullopt;
  return out;
}

}  // namespace ibsumm
