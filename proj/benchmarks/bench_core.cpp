#include <benchmark/benchmark.h>

#include <random>

#include "ibsumm/backends.hpp"
#include "ibsumm/corpus.hpp"
#include "ibsumm/evalsuite.hpp"
#include "ibsumm/keyphrase.hpp"
#include "ibsumm/realization.hpp"

using namespace ibsumm;

namespace {

const Document& sample_document() {
  static const Document doc = load_corpus(IBSUMM_SAMPLE_DIR "/sample.jsonl", 1).documents.at(0);
  return doc;
}

NspMatrix random_matrix(std::size_t size) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(0.01, 0.99);
  NspMatrix m(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j) m.set(i, j, dist(rng));
  return m;
}

void BM_BeamSearch(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(beam_search(m, 5, 5, 10));
}
BENCHMARK(BM_BeamSearch)->Arg(20)->Arg(50);

void BM_GreedySearch(benchmark::State& state) {
  const auto m = random_matrix(50);
  for (auto _ : state) benchmark::DoNotOptimize(greedy_search(m, 3, 10));
}
BENCHMARK(BM_GreedySearch);

void BM_BuildMatrixOffline(benchmark::State& state) {
  std::vector<std::string> texts;
  for (const auto& s : sample_document().sentences) {
    if (texts.size() == static_cast<std::size_t>(state.range(0))) break;
    texts.push_back(s.text);
  }
  const JaccardNsp nsp;
  for (auto _ : state) benchmark::DoNotOptimize(build_matrix(texts, nsp));
}
BENCHMARK(BM_BuildMatrixOffline)->Arg(50);

void BM_Rouge(benchmark::State& state) {
  const auto& doc = sample_document();
  const auto summary = lead_k(doc, 10);
  for (auto _ : state) benchmark::DoNotOptimize(score_summary(summary, doc.reference));
}
BENCHMARK(BM_Rouge);

void BM_Rake(benchmark::State& state) {
  const auto& doc = sample_document();
  for (auto _ : state) benchmark::DoNotOptimize(top_keyphrases(doc, 10));
}
BENCHMARK(BM_Rake);

void BM_Oracle(benchmark::State& state) {
  const auto& doc = sample_document();
  for (auto _ : state) benchmark::DoNotOptimize(oracle_extract(doc, 10));
}
BENCHMARK(BM_Oracle);

}  // namespace

BENCHMARK_MAIN();
