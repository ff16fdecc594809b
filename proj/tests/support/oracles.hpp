#pragma once

// Brute-force reference implementations. These deliberately share no code
// with the library beyond the public data types, so agreement between the two
// is evidence rather than tautology.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ibsumm/realization.hpp"

namespace oracle {

struct BestPath {
  std::vector<std::size_t> indices;
  double score = -std::numeric_limits<double>::infinity();
  std::size_t paths_seen = 0;
};

// Every strictly increasing index sequence of length min(target_len, size) is
// a subset of {0..size-1}; walk them all by bitmask.
inline BestPath best_path(const ibsumm::NspMatrix& matrix, std::size_t target_len) {
  const std::size_t n = matrix.size();
  const std::size_t len = std::min(target_len, n);
  BestPath best;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != len) continue;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    double s = 0.0;
    for (std::size_t i = 1; i < idx.size(); ++i) s += std::log(matrix.at(idx[i - 1], idx[i]));
    ++best.paths_seen;
    if (s > best.score || (s == best.score && idx < best.indices)) {
      best.score = s;
      best.indices = idx;
    }
  }
  return best;
}

inline std::size_t count_paths(std::size_t size, std::size_t len) {
  // C(size, len)
  std::size_t c = 1;
  for (std::size_t i = 0; i < len; ++i) c = c * (size - i) / (i + 1);
  return c;
}

inline ibsumm::NspMatrix random_matrix(std::size_t size, std::mt19937_64& rng) {
  // Open interval: never exactly 0 or 1.
  std::uniform_real_distribution<double> dist(1e-3, 1.0 - 1e-3);
  ibsumm::NspMatrix m(size);
  for (std::size_t a = 0; a + 1 < size; ++a)
    for (std::size_t b = a + 1; b < size; ++b) m.set(a, b, dist(rng));
  return m;
}

inline ibsumm::NspMatrix matrix_from(std::size_t size, const std::map<std::pair<int, int>, double>& entries,
                                     double fill = 0.1) {
  ibsumm::NspMatrix m(size);
  for (std::size_t a = 0; a + 1 < size; ++a)
    for (std::size_t b = a + 1; b < size; ++b) m.set(a, b, fill);
  for (const auto& [k, p] : entries) m.set(static_cast<std::size_t>(k.first), static_cast<std::size_t>(k.second), p);
  return m;
}

// RAKE by hand: lowercase, split on anything that is not [a-z0-9], cut runs
// at stopwords, then count.
//   freq(w) = number of occurrences of w over all candidate occurrences
//   deg(w)  = freq(w) + sum over candidate occurrences that contain w of (len - 1)
inline std::map<std::string, double> rake_scores(const std::vector<std::string>& sentences,
                                                 const std::set<std::string>& stop) {
  std::vector<std::vector<std::string>> cands;
  for (const auto& s : sentences) {
    std::vector<std::string> words;
    std::string cur;
    for (char ch : s + " ") {
      const unsigned char u = static_cast<unsigned char>(ch);
      if (u < 128 && std::isalnum(u)) {
        cur += static_cast<char>(std::tolower(u));
      } else if (!cur.empty()) {
        words.push_back(cur);
        cur.clear();
      }
    }
    std::vector<std::string> run;
    auto flush = [&] {
      const bool numeric_single =
          run.size() == 1 && std::all_of(run[0].begin(), run[0].end(), [](char c) { return c >= '0' && c <= '9'; });
      if (!run.empty() && !numeric_single) cands.push_back(run);
      run.clear();
    };
    for (const auto& w : words) {
      if (stop.count(w)) flush();
      else run.push_back(w);
    }
    flush();
  }
  std::map<std::string, double> freq, deg;
  for (const auto& c : cands) {
    for (const auto& w : c) freq[w] += 1;
    const std::set<std::string> distinct(c.begin(), c.end());
    for (const auto& w : distinct) deg[w] += static_cast<double>(c.size() - 1);
  }
  std::map<std::string, double> out;
  for (const auto& c : cands) {
    double score = 0;
    std::string text;
    for (const auto& w : c) {
      score += (deg[w] + freq[w]) / freq[w];
      text += (text.empty() ? "" : " ") + w;
    }
    out[text] = score;
  }
  return out;
}

// Longest common subsequence by exhaustive subsequence search; only for
// very short inputs.
inline std::size_t lcs_exhaustive(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t best = 0;
  const std::size_t n = a.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::string> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) sub.push_back(a[i]);
    std::size_t j = 0;
    for (const auto& t : b)
      if (j < sub.size() && sub[j] == t) ++j;
    if (j == sub.size()) best = std::max(best, sub.size());
  }
  return best;
}

}  // namespace oracle
