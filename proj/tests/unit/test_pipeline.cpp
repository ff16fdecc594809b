#include <doctest.h>

#include <json.hpp>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "ibsumm/config.hpp"
#include "ibsumm/error.hpp"
#include "ibsumm/pipeline.hpp"

using namespace ibsumm;
using namespace std::chrono_literals;

namespace {

const char* kVectors =
    "graph 1 0 0 0\n"
    "models 0.9 0.1 0 0\n"
    "networks 0.8 0.2 0 0\n"
    "learn 0 1 0 0\n"
    "data 0 0.7 0.3 0\n"
    "weather 0 0 1 0\n"
    "rain 0 0 0.9 0.1\n"
    "music 0 0 0 1\n";

Backends offline(const testing::TempDir& dir) {
  BackendConfig c;
  c.embedding_file = dir.write("vectors.txt", kVectors);
  return make_backends(c);
}

Document sample_doc(std::size_t n) {
  Document d;
  d.id = "doc";
  const char* texts[] = {
      "Graph models learn structure from relational data in many domains.",
      "Weather and rain were unusual during the recording period last year.",
      "Graph networks learn node representations by passing messages between neighbours.",
      "Music was playing in the background while the experiments were running.",
      "We train graph models on citation data and evaluate on held out nodes.",
      "Rain fell on most days, which delayed the data collection somewhat.",
      "Deeper graph networks oversmooth, which limits what the models can learn.",
      "The appendix lists every hyperparameter used for the graph models.",
      "Music and weather have nothing to do with the contribution of this work.",
      "Our graph models outperform earlier networks on three benchmark datasets.",
      "Short one.",
      "Graph data sets keep growing, so scalable models matter more each year.",
  };
  for (std::size_t i = 0; i < n; ++i) d.sentences.push_back(make_sentence(i, texts[i % 12]));
  d.reference = testing::sentences({"Graph models learn from relational data.", "Deeper graph networks oversmooth."});
  return d;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("defaults match the reference experiment setup") {
    const PipelineConfig c;
    CHECK(c.num_keyphrases == 10);
    CHECK(c.top_n == 50);
    CHECK(c.window == 3);
    CHECK(c.k_starts == 5);
    CHECK(c.beam_width == 5);
    CHECK(c.summary_len == 10);
    CHECK(c.epsilon == 0.01);
  }

  TEST_CASE("parse flat key = value files") {
    std::istringstream in(
        "# comment\n"
        "alpha = 0.5   # trailing comment\n"
        "search_mode=greedy\n"
        "\n"
        "backend.timeout = 1.5s\n"
        "backend.labels = cs, math ,physics\n"
        "views = keywords+category\n");
    const auto c = parse_config(in);
    CHECK(c.alpha == 0.5);
    CHECK(c.search_mode == SearchMode::greedy);
    CHECK(c.backend.timeout == 1500ms);
    CHECK(c.backend.labels == std::vector<std::string>{"cs", "math", "physics"});
    CHECK(c.views == ViewSet::keywords_category);
  }

  TEST_CASE("bad settings are configuration errors") {
    PipelineConfig c;
    CHECK_THROWS_AS(apply_setting(c, "nonsense", "1"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "alpha", "abc"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "top_n", "-3"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "search_mode", "dfs"), ConfigError);
    CHECK_THROWS_AS(apply_setting(c, "backend.timeout", "0"), ConfigError);
    apply_setting(c, "backend.timeout", "250ms");
    CHECK(c.backend.timeout == 250ms);
    std::istringstream no_eq("alpha 1\n");
    CHECK_THROWS_AS(parse_config(no_eq), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent.conf"), IoError);
  }

  TEST_CASE("validation") {
    PipelineConfig c;
    CHECK_NOTHROW(validate(c));
    c.epsilon = 0.0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = {};
    c.min_words = 90;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = {};
    c.beam_width = 0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = {};
    c.alpha = -1;
    CHECK_THROWS_AS(validate(c), ConfigError);
  }

  TEST_CASE("every key round-trips through its text form") {
    PipelineConfig c;
    c.alpha = 0.25;
    c.search_mode = SearchMode::none;
    c.backend.labels = {"a", "b"};
    PipelineConfig back;
    for (const auto& [k, v] : config_entries(c)) apply_setting(back, k, v);
    CHECK(config_entries(back) == config_entries(c));
    CHECK(config_keys().size() == config_entries(c).size());
  }

  TEST_CASE("keyword-only runs force alpha to zero") {
    PipelineConfig c;
    c.alpha = 3.0;
    CHECK(effective_config(c).alpha == 0.0);
    c.views = ViewSet::keywords_category;
    CHECK(effective_config(c).alpha == 3.0);
  }

  TEST_CASE("fingerprint tracks semantic settings only") {
    PipelineConfig a, b;
    CHECK(fingerprint(a) == fingerprint(b));
    CHECK(fingerprint(a).size() == 16);
    b.backend.timeout = 5s;
    b.backend.batch_size = 7;
    CHECK(fingerprint(a) == fingerprint(b));
    b.top_n = 49;
    CHECK(fingerprint(a) != fingerprint(b));
    // alpha is irrelevant for keyword-only runs
    PipelineConfig c;
    c.alpha = 9.0;
    CHECK(fingerprint(a) == fingerprint(c));
  }

  TEST_CASE("system names") {
    PipelineConfig c;
    CHECK(system_name(c) == "keywords+beamSearch");
    c.search_mode = SearchMode::none;
    CHECK(system_name(c) == "keywords_only");
    c.search_mode = SearchMode::greedy;
    c.views = ViewSet::keywords_category;
    CHECK(system_name(c) == "multiview+greedySearch");
    c.ranking_mode = RankingMode::similarity_sum;
    CHECK(system_name(c) == "multiview+greedySearch(simsum)");
  }
}

TEST_SUITE("pipeline") {
  TEST_CASE("summaries are in document order with the requested length") {
    testing::TempDir dir;
    const auto backends = offline(dir);
    PipelineConfig cfg;
    cfg.summary_len = 4;
    for (auto mode : {SearchMode::none, SearchMode::greedy, SearchMode::beam}) {
      cfg.search_mode = mode;
      CAPTURE(to_string(mode));
      const auto r = summarize_document(sample_doc(12), cfg, backends);
      REQUIRE(r.summary.size() == 4);
      for (std::size_t i = 1; i < r.summary.size(); ++i) CHECK(r.summary[i - 1].index < r.summary[i].index);
      for (const auto& s : r.summary) CHECK(s.index != 10);  // below min_words
      CHECK(r.document_sentences == 12);
      CHECK(r.matrix.has_value() == (mode != SearchMode::none));
      CHECK_FALSE(r.keyphrases.empty());
    }
  }

  TEST_CASE("exactly summary_len admissible sentences are all selected") {
    testing::TempDir dir;
    const auto backends = offline(dir);
    PipelineConfig cfg;
    cfg.summary_len = 5;
    for (auto mode : {SearchMode::none, SearchMode::greedy, SearchMode::beam}) {
      cfg.search_mode = mode;
      CAPTURE(to_string(mode));
      const auto r = summarize_document(sample_doc(5), cfg, backends);
      std::vector<std::size_t> idx;
      for (const auto& s : r.summary) idx.push_back(s.index);
      CHECK(idx == std::vector<std::size_t>{0, 1, 2, 3, 4});
    }
  }

  TEST_CASE("keyword-only selection keeps the best-scored sentences") {
    testing::TempDir dir;
    const auto backends = offline(dir);
    PipelineConfig cfg;
    cfg.search_mode = SearchMode::none;
    cfg.summary_len = 3;
    const auto r = summarize_document(sample_doc(12), cfg, backends);
    std::vector<double> chosen, all;
    for (const auto& s : r.scored) all.push_back(s.total);
    std::sort(all.rbegin(), all.rend());
    for (const auto& s : r.summary) {
      for (const auto& sc : r.scored)
        if (sc.sentence.index == s.index) chosen.push_back(sc.total);
    }
    std::sort(chosen.rbegin(), chosen.rend());
    CHECK(chosen == std::vector<double>(all.begin(), all.begin() + 3));
  }

  TEST_CASE("documents without admissible sentences are skipped") {
    testing::TempDir dir;
    const auto backends = offline(dir);
    const auto d = testing::make_doc("short", {"Too short.", "Also short."});
    CHECK_THROWS_AS(summarize_document(d, {}, backends), DocumentSkipped);
  }

  TEST_CASE("multi-view without a classifier is a configuration error") {
    testing::TempDir dir;
    const auto backends = offline(dir);
    PipelineConfig cfg;
    cfg.views = ViewSet::keywords_category;
    CHECK_THROWS_AS(summarize_document(sample_doc(12), cfg, backends), ConfigError);
  }

  TEST_CASE("multi-view with the stub classifier and alpha weighting") {
    testing::TempDir dir;
    BackendConfig bc;
    bc.embedding_file = dir.write("vectors.txt", kVectors);
    bc.labels = {"cs.LG", "math.OC"};
    const auto backends = make_backends(bc);
    PipelineConfig cfg;
    cfg.views = ViewSet::keywords_category;
    auto doc = sample_doc(12);
    doc.category = "cs.LG";
    const auto r = summarize_document(doc, cfg, backends);
    REQUIRE_FALSE(r.scored.empty());
    CHECK(r.scored[0].view_scores.size() == 2);
    CHECK(r.scored[0].view_scores[0].p == doctest::Approx(0.5));

    doc.category = "q-bio";
    CHECK_THROWS_AS(summarize_document(doc, cfg, backends), ConfigError);
  }

  TEST_CASE("run_corpus writes every artifact") {
    testing::TempDir dir;
    BackendConfig bc;
    bc.embedding_file = dir.write("vectors.txt", kVectors);
    const auto backends = make_backends(bc);

    std::vector<Document> docs{sample_doc(12), sample_doc(9), testing::make_doc("tiny", {"Too short."}, {"x"})};
    docs[0].id = "b-doc";
    docs[1].id = "a-doc";
    write_corpus(dir / "corpus.jsonl", docs);

    RunOptions opt;
    opt.corpus = dir / "corpus.jsonl";
    opt.out_dir = dir / "out";
    opt.workers = 2;
    opt.dump_keyphrases = opt.dump_scores = opt.dump_matrices = true;
    PipelineConfig cfg;
    cfg.summary_len = 3;
    const auto m = run_corpus(opt, cfg, backends);
    CHECK(m.documents == 3);
    CHECK(m.summarized == 2);
    REQUIRE(m.skipped.size() == 1);
    CHECK(m.skipped[0].id == "tiny");
    CHECK(m.failed.empty());
    CHECK_FALSE(m.partial_failure());
    REQUIRE(m.metrics);
    CHECK(m.metrics->num_docs == 2);

    for (const char* f : {"summaries.jsonl", "positions.csv", "metrics.csv", "manifest.json", "keyphrases.jsonl",
                          "scores.jsonl", "matrices/a-doc.csv", "matrices/b-doc.csv"}) {
      CAPTURE(f);
      CHECK(std::filesystem::exists(opt.out_dir / f));
    }
    const auto summaries = read_summaries(opt.out_dir / "summaries.jsonl");
    REQUIRE(summaries.size() == 2);
    CHECK(summaries[0].article_id == "a-doc");
    CHECK(summaries[1].article_id == "b-doc");

    const auto manifest = nlohmann::json::parse(testing::slurp(opt.out_dir / "manifest.json"));
    CHECK(manifest["config_fingerprint"] == fingerprint(cfg));
    CHECK(manifest["counts"]["skipped"] == 1);
    CHECK(manifest["system"] == "keywords+beamSearch");
  }

  TEST_CASE("run_corpus output does not depend on the worker count") {
    testing::TempDir dir;
    const auto backends = offline(dir);
    std::vector<Document> docs;
    for (int i = 0; i < 6; ++i) {
      docs.push_back(sample_doc(6 + i));
      docs.back().id = "d" + std::to_string(5 - i);
    }
    write_corpus(dir / "c.jsonl", docs);
    std::string first;
    for (std::size_t w : {1, 3, 8}) {
      RunOptions opt;
      opt.corpus = dir / "c.jsonl";
      opt.out_dir = dir / ("w" + std::to_string(w));
      opt.workers = w;
      run_corpus(opt, {}, backends);
      const auto s = testing::slurp(opt.out_dir / "summaries.jsonl");
      if (first.empty()) first = s;
      CHECK(s == first);
    }
  }

  TEST_CASE("run_corpus failures") {
    testing::TempDir dir;
    const auto backends = offline(dir);
    dir.write("empty.jsonl", "");
    RunOptions opt;
    opt.corpus = dir / "empty.jsonl";
    opt.out_dir = dir / "out";
    CHECK_THROWS_AS(run_corpus(opt, {}, backends), Error);
    opt.corpus = dir / "missing.jsonl";
    CHECK_THROWS_AS(run_corpus(opt, {}, backends), IoError);

    const std::vector<Document> docs{sample_doc(12)};
    write_corpus(dir / "c.jsonl", docs);
    opt.corpus = dir / "c.jsonl";
    PipelineConfig cfg;
    cfg.views = ViewSet::keywords_category;  // no classifier: fatal for the run
    CHECK_THROWS_AS(run_corpus(opt, cfg, backends), ConfigError);
  }

  TEST_CASE("backend failures are recorded per document") {
    struct Broken final : NextSentenceScorer {
      std::vector<double> nsp(std::span<const SentencePair>) const override { throw BackendError("down"); }
    };
    testing::TempDir dir;
    auto backends = offline(dir);
    backends.nsp = std::make_shared<Broken>();
    const std::vector<Document> docs{sample_doc(12)};
    write_corpus(dir / "c.jsonl", docs);
    RunOptions opt{dir / "c.jsonl", dir / "out"};
    const auto m = run_corpus(opt, {}, backends);
    CHECK(m.failed.size() == 1);
    CHECK(m.partial_failure());
  }
}
