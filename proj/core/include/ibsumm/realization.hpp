#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ibsumm/backends.hpp"
#include "ibsumm/corpus.hpp"
#include "ibsumm/selection.hpp"

namespace ibsumm {

/// Next-sentence probabilities P(m -> n) over position-sorted candidates.
/// Only the strict upper triangle (m < n) exists.
class NspMatrix {
 public:
  explicit NspMatrix(std::size_t size = 0);

  std::size_t size() const { return size_; }
  /// Throws ContractViolation unless m < n < size.
  double at(std::size_t m, std::size_t n) const;
  /// Throws ContractViolation unless m < n < size and 0 < p < 1.
  void set(std::size_t m, std::size_t n, double p);

 private:
  std::size_t offset(std::size_t m, std::size_t n) const;

  std::size_t size_;
  std::vector<double> probs_;
};

/// Scores all size*(size-1)/2 ordered pairs in a single batched backend call.
NspMatrix build_matrix(std::span<const std::string> texts, const NextSentenceScorer& scorer);
NspMatrix build_matrix(const CandidateSet& candidates, const NextSentenceScorer& scorer);

struct SummaryPath {
  std::vector<std::size_t> indices;  // strictly increasing candidate positions
  double score = 0.0;                // sum of ln P over consecutive pairs

  std::size_t start() const { return indices.front(); }
};

/// Sum of ln P(indices[i] -> indices[i+1]); 0 for a single index.
double path_score(const NspMatrix& matrix, std::span<const std::size_t> indices);

/// Greedy left-to-right search from candidate 0. From the current candidate
/// c it looks at the next `window` candidates and moves to the most probable
/// successor (ties: smaller index). When the matrix holds at least
/// `target_len` candidates the lookahead never skips so far that the path
/// could no longer reach `target_len`.
SummaryPath greedy_search(const NspMatrix& matrix, std::size_t window, std::size_t target_len);

/// Beam search started from each of the first `k_starts` candidates. Paths
/// extend to any later candidate that still leaves room to reach
/// `target_len`; `beam_width` best paths survive per depth.
/// Paths are compared by length (longer first), then score, then the
/// lexicographically smaller index sequence.
SummaryPath beam_search(const NspMatrix& matrix, std::size_t k_starts, std::size_t beam_width,
                        std::size_t target_len);

/// Maps a path back to candidate sentences (document order).
std::vector<Sentence> realize(const SummaryPath& path, const CandidateSet& candidates);

/// Debug dump: "row,col,prob" lines for every m < n.
void write_matrix_csv(std::ostream& out, const NspMatrix& matrix);

}  // namespace ibsumm
