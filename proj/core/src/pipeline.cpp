#include "ibsumm/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cctype>
#include <ctime>
#include <exception>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <mutex>
#include <sstream>
#include <thread>

#include "ibsumm/error.hpp"
#include "ibsumm/summary_io.hpp"

#ifndef IBSUMM_VERSION
#define IBSUMM_VERSION "unknown"
#endif

namespace ibsumm {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

class StageTimer {
 public:
  explicit StageTimer(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}

  void lap(std::string stage) {
    const auto now = Clock::now();
    sink_.emplace_back(std::move(stage),
                       std::chrono::duration<double, std::milli>(now - last_).count());
    last_ = now;
  }

 private:
  std::vector<std::pair<std::string, double>>& sink_;
  Clock::time_point last_ = Clock::now();
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::string safe_filename(std::string_view id) {
  std::string out;
  for (char c : id) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  return out.empty() ? "_" : out;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

json keyphrase_line(const SummaryResult& r) {
  json phrases = json::array();
  for (const auto& k : r.keyphrases) phrases.push_back({{"phrase", k.text()}, {"score", k.score}});
  return {{"article_id", r.document_id}, {"keyphrases", phrases}};
}

void write_score_lines(std::ostream& out, const SummaryResult& r) {
  for (const auto& s : r.scored) {
    json p = json::object();
    json contribution = json::object();
    for (const auto& v : s.view_scores) {
      p[v.view_id] = v.p;
      contribution[v.view_id] = v.contribution;
    }
    out << json{{"article_id", r.document_id},
                {"index", s.sentence.index},
                {"p", p},
                {"contribution", contribution},
                {"total", s.total}}
               .dump()
        << '\n';
  }
}

}  // namespace

std::string library_version() { return IBSUMM_VERSION; }

SummaryResult summarize_document(const Document& doc, const PipelineConfig& raw_config,
                                 const Backends& backends) {
  const auto config = effective_config(raw_config);
  if (!backends.embedder || !backends.nsp) throw ConfigError("embedding and NSP backends are required");

  SummaryResult result;
  result.document_id = doc.id;
  result.document_sentences = doc.sentences.size();
  result.config_fingerprint = fingerprint(config);
  StageTimer timer(result.timings_ms);

  const auto admissible = filter_by_length(doc.sentences, {config.min_words, config.max_words});
  timer.lap("filter");
  if (admissible.empty()) {
    throw DocumentSkipped("no sentence has between " + std::to_string(config.min_words) + " and " +
                          std::to_string(config.max_words) + " words");
  }

  result.keyphrases = top_keyphrases(doc, config.num_keyphrases, smart_stopwords(),
                                     {config.keyphrase_min_frequency, config.keyphrase_max_words});
  timer.lap("keyphrases");

  const ScoringOptions scoring{config.alpha, config.beta, config.epsilon, config.ranking_mode};
  std::optional<CategorySignal> category;
  if (config.views == ViewSet::keywords_category) {
    if (!backends.classifier) {
      throw ConfigError("views=keywords+category needs a classifier (set backend.labels offline)");
    }
    category = CategorySignal{backends.classifier.get(), doc.category};
  }
  result.scored = score_sentences(admissible, result.keyphrases, *backends.embedder,
                                  category ? &*category : nullptr, scoring, &result.warnings);
  timer.lap("score");

  if (config.search_mode == SearchMode::none) {
    const auto chosen = select_top_n(result.scored, config.summary_len);
    for (const auto& m : chosen.members) result.summary.push_back(m.sentence);
    timer.lap("select");
    return result;
  }

  const auto candidates = select_top_n(result.scored, config.top_n);
  timer.lap("select");
  result.matrix = build_matrix(candidates, *backends.nsp);
  timer.lap("matrix");

  const auto path = config.search_mode == SearchMode::greedy
                        ? greedy_search(*result.matrix, config.window, config.summary_len)
                        : beam_search(*result.matrix, config.k_starts, config.beam_width,
                                      config.summary_len);
  if (path.indices.size() < config.summary_len) {
    result.warnings.push_back("summary shorter than summary_len: " +
                              std::to_string(path.indices.size()) + " of " +
                              std::to_string(config.summary_len) + " sentences");
  }
  result.summary = realize(path, candidates);
  timer.lap("search");
  return result;
}

RunManifest run_corpus(const RunOptions& options, const PipelineConfig& raw_config,
                       const Backends& backends) {
  const auto wall_start = Clock::now();
  const auto config = effective_config(raw_config);

  RunManifest manifest;
  manifest.started_at = utc_timestamp();
  manifest.version = library_version();
  manifest.system = system_name(config);
  manifest.fingerprint = fingerprint(config);
  manifest.config = config_entries(config);

  auto corpus = load_corpus(options.corpus, options.limit);
  manifest.documents = corpus.documents.size();
  manifest.malformed_lines = corpus.errors.size();
  manifest.empty_records = corpus.skipped_empty;

  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + options.out_dir.string() + ": " + ec.message());

  const auto& docs = corpus.documents;
  std::vector<std::optional<SummaryResult>> results(docs.size());
  std::vector<std::optional<DocumentIssue>> skipped(docs.size());
  std::vector<std::optional<DocumentIssue>> failed(docs.size());

  std::size_t workers = options.workers ? options.workers : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(docs.size(), 1));
  manifest.workers = workers;

  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mutex;
  const auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= docs.size()) return;
      try {
        results[i] = summarize_document(docs[i], config, backends);
      } catch (const DocumentSkipped& e) {
        skipped[i] = DocumentIssue{docs[i].id, e.what()};
      } catch (const ConfigError&) {
        std::lock_guard lock(fatal_mutex);
        if (!fatal) fatal = std::current_exception();
        next.store(docs.size());
      } catch (const std::exception& e) {
        failed[i] = DocumentIssue{docs[i].id, e.what()};
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (fatal) std::rethrow_exception(fatal);

  // Output order is by document id (stable for duplicates).
  std::vector<std::size_t> order(docs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return docs[a].id < docs[b].id; });

  std::vector<SummaryRecord> records;
  std::vector<PositionedSummary> positions;
  std::vector<Document> evaluated;
  bool any_reference = false;
  for (std::size_t i : order) {
    if (skipped[i]) manifest.skipped.push_back(*skipped[i]);
    if (failed[i]) manifest.failed.push_back(*failed[i]);
    if (!results[i]) continue;
    const auto& r = *results[i];
    records.push_back(make_summary_record(r.document_id, r.summary));
    PositionedSummary p{{}, r.document_sentences};
    for (const auto& s : r.summary) p.indices.push_back(s.index);
    positions.push_back(std::move(p));
    any_reference = any_reference || !docs[i].reference.empty();
  }
  manifest.summarized = records.size();

  write_summaries(options.out_dir / "summaries.jsonl", records);
  {
    auto out = open_output(options.out_dir / "positions.csv");
    write_histogram_csv(out, position_histogram(positions));
  }
  if (any_reference) {
    manifest.metrics = evaluate_corpus(docs, records, manifest.system);
    auto out = open_output(options.out_dir / "metrics.csv");
    write_metrics_csv(out, std::span(&*manifest.metrics, 1));
  }

  if (options.dump_keyphrases) {
    auto out = open_output(options.out_dir / "keyphrases.jsonl");
    for (std::size_t i : order) {
      if (results[i]) out << keyphrase_line(*results[i]).dump() << '\n';
    }
  }
  if (options.dump_scores) {
    auto out = open_output(options.out_dir / "scores.jsonl");
    for (std::size_t i : order) {
      if (results[i]) write_score_lines(out, *results[i]);
    }
  }
  if (options.dump_matrices) {
    const auto dir = options.out_dir / "matrices";
    std::filesystem::create_directories(dir);
    for (std::size_t i : order) {
      if (!results[i] || !results[i]->matrix) continue;
      auto out = open_output(dir / (safe_filename(results[i]->document_id) + ".csv"));
      write_matrix_csv(out, *results[i]->matrix);
    }
  }

  manifest.wall_time_s = std::chrono::duration<double>(Clock::now() - wall_start).count();

  json config_json = json::object();
  for (const auto& [k, v] : manifest.config) config_json[k] = v;
  const auto issues = [](const std::vector<DocumentIssue>& v) {
    json arr = json::array();
    for (const auto& d : v) arr.push_back({{"article_id", d.id}, {"reason", d.reason}});
    return arr;
  };
  json m{{"version", manifest.version},
         {"system", manifest.system},
         {"config_fingerprint", manifest.fingerprint},
         {"config", config_json},
         {"corpus", options.corpus.string()},
         {"started_at", manifest.started_at},
         {"wall_time_s", manifest.wall_time_s},
         {"workers", manifest.workers},
         {"counts",
          {{"documents", manifest.documents},
           {"malformed_lines", manifest.malformed_lines},
           {"empty_records", manifest.empty_records},
           {"summarized", manifest.summarized},
           {"skipped", manifest.skipped.size()},
           {"failed", manifest.failed.size()}}},
         {"skipped", issues(manifest.skipped)},
         {"failed", issues(manifest.failed)},
         {"partial_failure", manifest.partial_failure()}};
  if (manifest.metrics) {
    m["metrics"] = {{"rouge1_f1", manifest.metrics->rouge1_f1},
                    {"rouge2_f1", manifest.metrics->rouge2_f1},
                    {"rougeL_f1", manifest.metrics->rougeL_f1},
                    {"num_docs", manifest.metrics->num_docs}};
  }
  auto out = open_output(options.out_dir / "manifest.json");
  out << m.dump(2) << '\n';
  return manifest;
}

}  // namespace ibsumm
