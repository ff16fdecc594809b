#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <ostream>
#include <unordered_map>

#include "ibsumm/backends.hpp"
#include "ibsumm/config.hpp"
#include "ibsumm/corpus.hpp"
#include "ibsumm/error.hpp"
#include "ibsumm/evalsuite.hpp"
#include "ibsumm/pipeline.hpp"
#include "ibsumm/remote_client.hpp"
#include "ibsumm/summary_io.hpp"

namespace ibsumm::cli {

namespace {

namespace fs = std::filesystem;

// Thrown for usage problems detected after CLI11 parsing succeeded.
struct UsageError : Error {
  using Error::Error;
};

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr FlagSpec kPipelineFlags[] = {
    {"--alpha", "alpha", "Category view weight (ignored for --views keywords)"},
    {"--beta", "beta", "Keyword view weight"},
    {"--epsilon", "epsilon", "Lower clamp for view affinities, in (0,1)"},
    {"--num-keyphrases", "num_keyphrases", "RAKE keyphrases per document"},
    {"--keyphrase-min-frequency", "keyphrase_min_frequency", "Minimum keyphrase occurrences"},
    {"--keyphrase-max-words", "keyphrase_max_words", "Maximum keyphrase length (0 = no cap)"},
    {"--top-n", "top_n", "Candidate sentences kept after content selection"},
    {"--window", "window", "Greedy search lookahead"},
    {"--k-starts", "k_starts", "Beam search start candidates"},
    {"--beam-width", "beam_width", "Beam width"},
    {"--summary-len", "summary_len", "Sentences per summary"},
    {"--min-words", "min_words", "Shortest admissible sentence"},
    {"--max-words", "max_words", "Longest admissible sentence"},
    {"--mode", "search_mode", "Realization search: none|greedy|beam"},
    {"--ranking", "ranking_mode", "Sentence ranking: eq4|similarity-sum"},
    {"--views", "views", "Signal views: keywords|keywords+category"},
};

constexpr FlagSpec kBackendFlags[] = {
    {"--backend", "backend.mode", "Backend mode: offline|remote"},
    {"--endpoint", "backend.endpoint", "Model server URL (fallback: IBSUMM_ENDPOINT)"},
    {"--embeddings", "backend.embedding_file",
     "Static word-vector file for offline mode (fallback: IBSUMM_EMBEDDINGS, then vectors.txt "
     "next to the corpus)"},
    {"--timeout", "backend.timeout", "Remote request timeout, e.g. 30s or 500ms"},
    {"--batch-size", "backend.batch_size", "Remote request batch size"},
    {"--labels", "backend.labels", "Comma-separated category labels"},
};

/// Pipeline/backend flags are collected as text and applied on top of the
/// config file, so CLI values always win and share the file's validation.
class ConfigFlags {
 public:
  void add(CLI::App& app, bool pipeline_flags) {
    app.add_option("--config", config_file_, "Flat key=value configuration file")
        ->check(CLI::ExistingFile);
    const auto defaults = config_entries(PipelineConfig{});
    const auto default_of = [&](const char* key) {
      for (const auto& [k, v] : defaults) {
        if (k == key) return v;
      }
      return std::string{};
    };
    const auto bind = [&](const FlagSpec& spec) {
      auto* opt = app.add_option(spec.flag, values_[spec.key], spec.help);
      opt->default_str(default_of(spec.key));
      options_.emplace_back(spec.key, opt);
    };
    if (pipeline_flags) {
      for (const auto& spec : kPipelineFlags) bind(spec);
    }
    for (const auto& spec : kBackendFlags) bind(spec);
  }

  PipelineConfig build(const fs::path& corpus_hint = {}) const {
    PipelineConfig config;
    if (!config_file_.empty()) config = load_config(config_file_);
    for (const auto& [key, opt] : options_) {
      if (opt->count() > 0) apply_setting(config, key, values_.at(key));
    }
    if (config.backend.endpoint.empty()) {
      if (const char* env = std::getenv("IBSUMM_ENDPOINT"); env && *env) config.backend.endpoint = env;
    }
    if (config.backend.mode == BackendMode::offline && config.backend.embedding_file.empty()) {
      if (const char* env = std::getenv("IBSUMM_EMBEDDINGS"); env && *env) {
        config.backend.embedding_file = env;
      } else if (!corpus_hint.empty()) {
        const auto sibling = corpus_hint.parent_path() / "vectors.txt";
        if (fs::exists(sibling)) config.backend.embedding_file = sibling;
      }
    }
    return config;
  }

 private:
  std::string config_file_;
  std::map<std::string, std::string> values_;
  std::vector<std::pair<std::string, CLI::Option*>> options_;
};

void print_metrics(std::ostream& out, const CorpusMetrics& m) {
  out << std::fixed << std::setprecision(4) << "ROUGE-1 F1: " << m.rouge1_f1
      << "  ROUGE-2 F1: " << m.rouge2_f1 << "  ROUGE-L F1: " << m.rougeL_f1 << "  (" << m.num_docs
      << " documents)\n";
  out.unsetf(std::ios::floatfield);
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

void report_load(std::ostream& err, const CorpusLoad& load) {
  for (const auto& e : load.errors) err << "warning: corpus line " << e.line << ": " << e.message << '\n';
  if (load.skipped_empty > 0) {
    err << "warning: skipped " << load.skipped_empty << " records with no article sentences\n";
  }
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

// ---------------------------------------------------------------------------

struct SummarizeArgs {
  std::string corpus;
  std::string out;
  std::optional<std::size_t> limit;
  std::size_t workers = 0;
  bool dump_keyphrases = false;
  bool dump_scores = false;
  bool dump_matrices = false;
  ConfigFlags config;
};

int cmd_summarize(const SummarizeArgs& a, std::ostream& out, std::ostream& err) {
  const auto config = effective_config(a.config.build(a.corpus));
  const auto backends = make_backends(config.backend);
  if (config.backend.mode == BackendMode::remote) {
    RemoteClient(config.backend.endpoint, config.backend.timeout, config.backend.batch_size).health();
  }
  RunOptions options{a.corpus, a.out, a.limit, a.workers, a.dump_keyphrases, a.dump_scores,
                     a.dump_matrices};
  const auto manifest = run_corpus(options, config, backends);

  for (const auto& s : manifest.skipped) err << "skipped " << s.id << ": " << s.reason << '\n';
  for (const auto& f : manifest.failed) err << "failed " << f.id << ": " << f.reason << '\n';
  out << "summarized " << manifest.summarized << "/" << manifest.documents << " documents ("
      << manifest.skipped.size() << " skipped, " << manifest.failed.size() << " failed) in "
      << std::fixed << std::setprecision(2) << manifest.wall_time_s << "s -> " << a.out << " ["
      << manifest.system << ", config " << manifest.fingerprint << "]\n";
  out.unsetf(std::ios::floatfield);
  if (manifest.metrics) print_metrics(out, *manifest.metrics);
  return manifest.partial_failure() ? kPartialFailure : kSuccess;
}

struct EvaluateArgs {
  std::string summaries;
  std::string corpus;
  std::string out;
  std::string system;
  bool stemming = false;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  const auto load = load_corpus(a.corpus);
  report_load(err, load);
  const auto records = read_summaries(a.summaries);
  const auto system = a.system.empty() ? fs::path(a.summaries).stem().string() : a.system;
  const auto metrics = evaluate_corpus(load.documents, records, system, {a.stemming});

  std::ostringstream csv;
  write_metrics_csv(csv, std::span(&metrics, 1));
  if (a.out.empty()) {
    out << csv.str();
  } else {
    write_text_file(a.out, csv.str());
  }
  print_metrics(out, metrics);
  if (metrics.skipped_no_reference > 0) {
    err << "warning: " << metrics.skipped_no_reference << " documents have no reference\n";
  }
  for (const auto& id : metrics.unknown_ids) err << "unknown article_id: " << id << '\n';
  return metrics.unknown_ids.empty() ? kSuccess : kPartialFailure;
}

struct BaselineArgs {
  std::string corpus;
  std::string out;
  std::optional<std::size_t> limit;
  std::size_t count = 0;
  bool stemming = false;
};

int cmd_baseline(const BaselineArgs& a, bool oracle, std::ostream& out, std::ostream& err) {
  if (a.count == 0) throw UsageError(oracle ? "--max must be positive" : "--k must be positive");
  const auto load = load_corpus(a.corpus, a.limit);
  report_load(err, load);

  std::vector<SummaryRecord> records;
  std::size_t no_reference = 0;
  for (const auto& doc : load.documents) {
    if (oracle && doc.reference.empty()) {
      ++no_reference;
      continue;
    }
    const auto summary = oracle ? oracle_extract(doc, a.count, {a.stemming}) : lead_k(doc, a.count);
    records.push_back(make_summary_record(doc.id, summary));
  }
  if (fs::path(a.out).has_parent_path()) fs::create_directories(fs::path(a.out).parent_path());
  write_summaries(fs::path(a.out), records);
  out << "wrote " << records.size() << (oracle ? " oracle" : " lead") << " summaries to " << a.out
      << '\n';
  if (no_reference > 0) err << "warning: skipped " << no_reference << " documents without reference\n";
  return no_reference * 10 > load.documents.size() ? kPartialFailure : kSuccess;
}

struct PositionsArgs {
  std::string summaries;
  std::string corpus;
  std::string out;
  std::size_t bins = 10;
};

int cmd_positions(const PositionsArgs& a, std::ostream& out, std::ostream& err) {
  if (a.bins == 0) throw UsageError("--bins must be positive");
  const auto load = load_corpus(a.corpus);
  report_load(err, load);
  std::unordered_map<std::string, std::size_t> lengths;
  for (const auto& d : load.documents) lengths.emplace(d.id, d.sentences.size());

  std::vector<PositionedSummary> summaries;
  std::size_t unknown = 0;
  for (const auto& rec : read_summaries(a.summaries)) {
    const auto it = lengths.find(rec.article_id);
    if (it == lengths.end()) {
      err << "unknown article_id: " << rec.article_id << '\n';
      ++unknown;
      continue;
    }
    summaries.push_back({rec.sentence_indices, it->second});
  }
  const auto hist = position_histogram(summaries, a.bins);
  if (hist.empty()) err << "warning: no summary sentences counted; histogram is all zero\n";
  std::ostringstream csv;
  write_histogram_csv(csv, hist);
  if (a.out.empty()) {
    out << csv.str();
  } else {
    write_text_file(a.out, csv.str());
    out << "wrote " << a.bins << "-bin histogram of " << hist.counted << " sentences to " << a.out
        << '\n';
  }
  return unknown > 0 ? kPartialFailure : kSuccess;
}

int cmd_backend_check(const ConfigFlags& flags, std::ostream& out) {
  const auto config = flags.build();
  config.backend.validate();
  const auto& bc = config.backend;

  if (bc.mode == BackendMode::offline) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto embedder = StaticEmbedder::load(bc.embedding_file);
    out << "mode: offline\n";
    out << "embed: dim=" << embedder.dim() << " vocabulary=" << embedder.vocabulary_size() << " ("
        << std::fixed << std::setprecision(1) << elapsed_ms(t0) << " ms)\n";
    const SentencePair pair{"The model is trained.", "The model is evaluated."};
    out << "nsp: jaccard fallback, probe p=" << std::setprecision(4) << JaccardNsp().nsp(std::span(&pair, 1)).front()
        << '\n';
    out.unsetf(std::ios::floatfield);
    if (bc.labels.empty()) {
      out << "classify: stub (no labels configured)\n";
    } else {
      out << "classify: stub (uniform over " << bc.labels.size() << " labels)\n";
    }
    return kSuccess;
  }

  RemoteClient client(bc.endpoint, bc.timeout, bc.batch_size);
  out << "mode: remote " << client.endpoint() << '\n';
  auto t0 = std::chrono::steady_clock::now();
  const auto health = client.health();
  out << std::fixed << std::setprecision(1);
  out << "health: status=" << health.status << " embed_dim=" << health.embed_dim
      << " pooling=" << (health.pooling.empty() ? "?" : health.pooling) << " (" << elapsed_ms(t0)
      << " ms)\n";

  const std::string text = "Sentence embeddings are averaged over tokens.";
  t0 = std::chrono::steady_clock::now();
  const auto vecs = client.embed(std::span(&text, 1));
  if (vecs.size() != 1) throw ContractViolation(client.endpoint() + "/embed: wrong batch length");
  out << "embed: dim=" << vecs.front().dim() << " (" << elapsed_ms(t0) << " ms)\n";

  const SentencePair pair{"The model is trained.", "The model is then evaluated."};
  t0 = std::chrono::steady_clock::now();
  const auto probs = client.nsp(std::span(&pair, 1));
  out << "nsp: p=" << std::setprecision(4) << probs.front() << std::setprecision(1) << " ("
      << elapsed_ms(t0) << " ms)\n";

  t0 = std::chrono::steady_clock::now();
  const auto cls = client.classify(std::span(&text, 1));
  if (!cls) {
    out << "classify: unavailable (501)\n";
  } else {
    if (!bc.labels.empty() && cls->labels != bc.labels) {
      throw ContractViolation(client.endpoint() + "/classify: label set does not match --labels");
    }
    out << "classify: labels=" << cls->labels.size() << " (" << elapsed_ms(t0) << " ms)\n";
  }
  out.unsetf(std::ios::floatfield);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ibsumm: unsupervised extractive summarization of long scientific documents", "ibsumm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", library_version());

  SummarizeArgs sum;
  auto* summarize = app.add_subcommand("summarize", "Summarize a corpus with the two-stage pipeline");
  summarize->add_option("--corpus", sum.corpus, "Corpus JSON-lines file")->required()->check(CLI::ExistingFile);
  summarize->add_option("--out", sum.out, "Output directory")->required();
  summarize->add_option("--limit", sum.limit, "Only the first N documents");
  summarize->add_option("--workers", sum.workers, "Worker threads (0 = all cores)")->capture_default_str();
  summarize->add_flag("--dump-keyphrases", sum.dump_keyphrases, "Write keyphrases.jsonl");
  summarize->add_flag("--dump-scores", sum.dump_scores, "Write per-sentence scores.jsonl");
  summarize->add_flag("--dump-matrices", sum.dump_matrices, "Write matrices/<id>.csv");
  sum.config.add(*summarize, true);

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score summaries against corpus references");
  evaluate->add_option("--summaries", ev.summaries, "Summary JSON-lines file")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--corpus", ev.corpus, "Corpus JSON-lines file")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--out", ev.out, "Metrics CSV path (default: stdout)");
  evaluate->add_option("--system", ev.system, "System name for the CSV row (default: file stem)");
  evaluate->add_flag("--stemming", ev.stemming, "Porter-stem tokens before scoring");

  BaselineArgs oracle_args;
  oracle_args.count = 10;
  auto* oracle = app.add_subcommand("oracle", "Greedy ROUGE oracle summaries");
  oracle->add_option("--corpus", oracle_args.corpus, "Corpus JSON-lines file")->required()->check(CLI::ExistingFile);
  oracle->add_option("--out", oracle_args.out, "Summary JSON-lines output")->required();
  oracle->add_option("--max", oracle_args.count, "Maximum sentences")->capture_default_str();
  oracle->add_option("--limit", oracle_args.limit, "Only the first N documents");
  oracle->add_flag("--stemming", oracle_args.stemming, "Porter-stem tokens while searching");

  BaselineArgs lead_args;
  lead_args.count = 3;
  auto* lead = app.add_subcommand("lead", "Lead-k baseline summaries");
  lead->add_option("--corpus", lead_args.corpus, "Corpus JSON-lines file")->required()->check(CLI::ExistingFile);
  lead->add_option("--out", lead_args.out, "Summary JSON-lines output")->required();
  lead->add_option("--k", lead_args.count, "Leading sentences")->capture_default_str();
  lead->add_option("--limit", lead_args.limit, "Only the first N documents");

  PositionsArgs pos;
  auto* positions = app.add_subcommand("positions", "Sentence position histogram of summaries");
  positions->add_option("--summaries", pos.summaries, "Summary JSON-lines file")->required()->check(CLI::ExistingFile);
  positions->add_option("--corpus", pos.corpus, "Corpus JSON-lines file")->required()->check(CLI::ExistingFile);
  positions->add_option("--bins", pos.bins, "Relative-position bins")->capture_default_str();
  positions->add_option("--out", pos.out, "Histogram CSV path (default: stdout)");

  ConfigFlags check_flags;
  auto* check = app.add_subcommand("backend-check", "Probe the configured scoring backends");
  check_flags.add(*check, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (summarize->parsed()) return cmd_summarize(sum, out, err);
    if (evaluate->parsed()) return cmd_evaluate(ev, out, err);
    if (oracle->parsed()) return cmd_baseline(oracle_args, true, out, err);
    if (lead->parsed()) return cmd_baseline(lead_args, false, out, err);
    if (positions->parsed()) return cmd_positions(pos, out, err);
    if (check->parsed()) return cmd_backend_check(check_flags, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFatal;
  }
  return kUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace ibsumm::cli
