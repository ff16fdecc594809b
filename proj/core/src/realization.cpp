#include "ibsumm/realization.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "ibsumm/error.hpp"

namespace ibsumm {

NspMatrix::NspMatrix(std::size_t size) : size_(size), probs_(size * size, 0.0) {}

std::size_t NspMatrix::offset(std::size_t m, std::size_t n) const {
  if (!(m < n && n < size_)) {
    throw ContractViolation("NspMatrix: entry (" + std::to_string(m) + ", " + std::to_string(n) +
                            ") is outside the upper triangle of a " + std::to_string(size_) +
                            "x" + std::to_string(size_) + " matrix");
  }
  return m * size_ + n;
}

double NspMatrix::at(std::size_t m, std::size_t n) const { return probs_[offset(m, n)]; }

void NspMatrix::set(std::size_t m, std::size_t n, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ContractViolation("NspMatrix: probability " + std::to_string(p) + " outside (0, 1)");
  }
  probs_[offset(m, n)] = p;
}

NspMatrix build_matrix(std::span<const std::string> texts, const NextSentenceScorer& scorer) {
  NspMatrix matrix(texts.size());
  if (texts.size() < 2) return matrix;
  std::vector<SentencePair> pairs;
  pairs.reserve(texts.size() * (texts.size() - 1) / 2);
  for (std::size_t m = 0; m + 1 < texts.size(); ++m) {
    for (std::size_t n = m + 1; n < texts.size(); ++n) pairs.emplace_back(texts[m], texts[n]);
  }
  const auto probs = scorer.nsp(pairs);
  if (probs.size() != pairs.size()) {
    throw ContractViolation("nsp backend returned " + std::to_string(probs.size()) +
                            " probabilities for " + std::to_string(pairs.size()) + " pairs");
  }
  std::size_t k = 0;
  for (std::size_t m = 0; m + 1 < texts.size(); ++m) {
    for (std::size_t n = m + 1; n < texts.size(); ++n) matrix.set(m, n, probs[k++]);
  }
  return matrix;
}

NspMatrix build_matrix(const CandidateSet& candidates, const NextSentenceScorer& scorer) {
  std::vector<std::string> texts;
  texts.reserve(candidates.members.size());
  for (const auto& m : candidates.members) texts.push_back(m.sentence.text);
  return build_matrix(texts, scorer);
}

double path_score(const NspMatrix& matrix, std::span<const std::size_t> indices) {
  double score = 0.0;
  for (std::size_t i = 1; i < indices.size(); ++i) {
    score += std::log(matrix.at(indices[i - 1], indices[i]));
  }
  return score;
}

SummaryPath greedy_search(const NspMatrix& matrix, std::size_t window, std::size_t target_len) {
  if (matrix.size() == 0) throw ContractViolation("greedy_search: empty matrix");
  if (window == 0 || target_len == 0) throw ConfigError("window and target_len must be positive");

  SummaryPath path{{0}, 0.0};
  const bool can_fill = matrix.size() >= target_len;
  while (path.indices.size() < target_len) {
    const std::size_t c = path.indices.back();
    std::size_t last = std::min(c + window, matrix.size() - 1);
    if (can_fill) {
      last = std::min(last, matrix.size() - (target_len - path.indices.size()));
    }
    if (last <= c) break;
    std::size_t best = c + 1;
    for (std::size_t j = c + 2; j <= last; ++j) {
      if (matrix.at(c, j) > matrix.at(c, best)) best = j;
    }
    path.score += std::log(matrix.at(c, best));
    path.indices.push_back(best);
  }
  return path;
}

namespace {

bool ranks_before(const SummaryPath& a, const SummaryPath& b) {
  if (a.indices.size() != b.indices.size()) return a.indices.size() > b.indices.size();
  if (a.score != b.score) return a.score > b.score;
  return a.indices < b.indices;
}

}  // namespace

SummaryPath beam_search(const NspMatrix& matrix, std::size_t k_starts, std::size_t beam_width,
                        std::size_t target_len) {
  if (matrix.size() == 0) throw ContractViolation("beam_search: empty matrix");
  if (k_starts == 0 || beam_width == 0 || target_len == 0) {
    throw ConfigError("k_starts, beam_width and target_len must be positive");
  }

  SummaryPath overall;
  bool have_overall = false;
  for (std::size_t s = 0; s < std::min(k_starts, matrix.size()); ++s) {
    std::vector<SummaryPath> beam{SummaryPath{{s}, 0.0}};
    SummaryPath best = beam.front();
    for (std::size_t depth = 1; depth < target_len; ++depth) {
      std::vector<SummaryPath> next;
      // Leave room for the sentences still to come, so pruning cannot strand
      // every hypothesis short of target_len.
      const std::size_t still_needed = target_len - 1 - depth;
      for (const auto& hyp : beam) {
        const std::size_t last = hyp.indices.back();
        std::size_t end = matrix.size();
        if (matrix.size() > still_needed && matrix.size() - still_needed > last + 1) end -= still_needed;
        for (std::size_t j = last + 1; j < end; ++j) {
          SummaryPath ext = hyp;
          ext.indices.push_back(j);
          ext.score += std::log(matrix.at(last, j));
          next.push_back(std::move(ext));
        }
      }
      if (next.empty()) break;
      const std::size_t keep = std::min(beam_width, next.size());
      std::partial_sort(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(keep), next.end(),
                        ranks_before);
      next.resize(keep);
      beam = std::move(next);
      if (ranks_before(beam.front(), best)) best = beam.front();
    }
    if (!have_overall || ranks_before(best, overall)) {
      overall = std::move(best);
      have_overall = true;
    }
  }
  return overall;
}

std::vector<Sentence> realize(const SummaryPath& path, const CandidateSet& candidates) {
  std::vector<Sentence> out;
  out.reserve(path.indices.size());
  for (std::size_t i : path.indices) {
    if (i >= candidates.members.size()) {
      throw ContractViolation("realize: path index " + std::to_string(i) + " out of range for " +
                              std::to_string(candidates.members.size()) + " candidates");
    }
    out.push_back(candidates.members[i].sentence);
  }
  return out;
}

void write_matrix_csv(std::ostream& out, const NspMatrix& matrix) {
  out << "row,col,prob\n";
  out << std::setprecision(17);
  for (std::size_t m = 0; m + 1 < matrix.size(); ++m) {
    for (std::size_t n = m + 1; n < matrix.size(); ++n) {
      out << m << ',' << n << ',' << matrix.at(m, n) << '\n';
    }
  }
}

}  // namespace ibsumm
