#pragma once

// In-process stand-in for the model server, for exercising the HTTP client.
// Behaviour is switchable per test; every request is counted.

#include <httplib.h>

#include <atomic>
#include <json.hpp>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace testing {

class FakeModelServer {
 public:
  std::size_t dim = 4;
  std::vector<std::string> labels{"cs", "math", "physics"};
  // Flipped by tests while the server thread runs.
  std::atomic<bool> classifier_loaded{true};
  std::atomic<bool> drop_one_result{false};  // reply with one result fewer than asked
  std::atomic<int> fail_first{0};            // answer this many requests with HTTP 503
  std::size_t max_batch = 0;     // 0 = unlimited; larger batches get HTTP 413

  FakeModelServer() {
    using nlohmann::json;
    server_.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
      if (flaky(res)) return;
      json j{{"status", "ok"}, {"embed_dim", dim}, {"nsp", true}, {"classify", classifier_loaded.load()},
             {"pooling", "mean-all-tokens"}};
      res.set_content(j.dump(), "application/json");
    });
    server_.Post("/embed", [this](const httplib::Request& req, httplib::Response& res) {
      if (flaky(res)) return;
      const auto texts = json::parse(req.body).at("texts");
      if (!record_batch(texts.size(), res)) return;
      json vectors = json::array();
      for (std::size_t i = 0; i < reply_count(texts.size()); ++i) {
        // Deterministic: derived from the text length only.
        const auto n = texts[i].get<std::string>().size();
        std::vector<double> v(dim);
        for (std::size_t d = 0; d < dim; ++d) v[d] = static_cast<double>((n + d) % 7) - 3.0;
        vectors.push_back(v);
      }
      res.set_content(json{{"vectors", vectors}, {"dim", dim}}.dump(), "application/json");
    });
    server_.Post("/nsp", [this](const httplib::Request& req, httplib::Response& res) {
      if (flaky(res)) return;
      const auto pairs = json::parse(req.body).at("pairs");
      if (!record_batch(pairs.size(), res)) return;
      json probs = json::array();
      for (std::size_t i = 0; i < reply_count(pairs.size()); ++i) {
        // Out-of-range values on purpose, so the client's clamp is visible.
        probs.push_back(i % 3 == 0 ? 1.0 : (i % 3 == 1 ? 0.0 : 0.25));
      }
      res.set_content(json{{"probs", probs}}.dump(), "application/json");
    });
    server_.Post("/classify", [this](const httplib::Request& req, httplib::Response& res) {
      if (flaky(res)) return;
      if (!classifier_loaded) {
        res.status = 501;
        res.set_content(R"({"error":"no classifier loaded"})", "application/json");
        return;
      }
      const auto texts = json::parse(req.body).at("texts");
      if (!record_batch(texts.size(), res)) return;
      json probs = json::array();
      for (std::size_t i = 0; i < reply_count(texts.size()); ++i) {
        std::vector<double> p(labels.size(), 0.0);
        p[i % labels.size()] = 1.0;
        probs.push_back(p);
      }
      res.set_content(json{{"probs", probs}, {"labels", labels}}.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~FakeModelServer() {
    server_.stop();
    thread_.join();
  }

  FakeModelServer(const FakeModelServer&) = delete;
  FakeModelServer& operator=(const FakeModelServer&) = delete;

  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int requests() const { return requests_.load(); }
  std::vector<std::size_t> batch_sizes() const {
    std::lock_guard lock(mutex_);
    return batches_;
  }

 private:
  bool flaky(httplib::Response& res) {
    ++requests_;
    if (fail_first.fetch_sub(1) > 0) {
      res.status = 503;
      res.set_content("busy", "text/plain");
      return true;
    }
    fail_first.store(0);
    return false;
  }

  bool record_batch(std::size_t n, httplib::Response& res) {
    {
      std::lock_guard lock(mutex_);
      batches_.push_back(n);
    }
    if (max_batch && n > max_batch) {
      res.status = 413;
      return false;
    }
    return true;
  }

  std::size_t reply_count(std::size_t n) const { return drop_one_result && n > 0 ? n - 1 : n; }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> requests_{0};
  mutable std::mutex mutex_;
  std::vector<std::size_t> batches_;
};

}  // namespace testing
