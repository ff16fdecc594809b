#pragma once

// Hand-built matrices with window-3 greedy traces worked out on paper.
// Unlisted entries are 0.1. "cap" is the furthest successor that still leaves
// room for the remaining target_len slots.

#include <string>
#include <vector>

#include "oracles.hpp"

namespace traces {

struct GreedyCase {
  std::string name;
  ibsumm::NspMatrix matrix;
  std::size_t window;
  std::size_t target_len;
  std::vector<std::size_t> expected;
};

inline std::vector<GreedyCase> greedy_cases() {
  using oracle::matrix_from;
  return {
      // From 0: look at {1, 2}; P(0,2)=0.9 beats 0.2. Target reached.
      {"three-sentence argmax", matrix_from(3, {{{0, 1}, 0.2}, {{0, 2}, 0.9}, {{1, 2}, 0.5}}), 3, 2, {0, 2}},

      // From 0: {1, 2, 3} (cap 3); 1 and 2 tie at 0.5, take 1.
      // From 1: {2, 3, 4} (cap 4); 3 and 4 tie at 0.7, take 3.
      {"ties go left",
       matrix_from(5, {{{0, 1}, 0.5}, {{0, 2}, 0.5}, {{0, 3}, 0.4}, {{1, 2}, 0.2}, {{1, 3}, 0.7}, {{1, 4}, 0.7}}),
       3, 3, {0, 1, 3}},

      // From 0: window ends at 3 so P(0,4)=0.95 is out of reach; 3 (0.4) wins.
      // From 3: {4, 5}; 5 (0.8) beats 4 (0.6).
      {"window hides a better jump",
       matrix_from(6, {{{0, 1}, 0.3}, {{0, 2}, 0.2}, {{0, 3}, 0.4}, {{0, 4}, 0.95}, {{3, 4}, 0.6}, {{3, 5}, 0.8}}),
       3, 3, {0, 3, 5}},

      // From 0: {1, 2, 3} (cap 6-3=3); 3 wins with 0.9.
      // From 3: cap 6-2=4, only 4 is feasible although P(3,5)=0.99.
      // From 4: cap 5, take 5.
      {"feasibility cap",
       matrix_from(6, {{{0, 1}, 0.2}, {{0, 2}, 0.3}, {{0, 3}, 0.9}, {{3, 5}, 0.99}, {{3, 4}, 0.05}}), 3, 4,
       {0, 3, 4, 5}},

      // Fewer candidates than target_len: no cap. From 0: {1, 2}, take 2 (0.7).
      // From 2 nothing follows, so the path stops short.
      {"runs off the end", matrix_from(3, {{{0, 1}, 0.4}, {{0, 2}, 0.7}}), 3, 5, {0, 2}},
  };
}

}  // namespace traces
