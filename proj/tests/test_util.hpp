// Copyright 2026 The csasr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSASR_TESTS_TEST_UTIL_HPP_
#define CSASR_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "csasr/matrix.hpp"
#include "csasr/rng.hpp"
#include "csasr/tokenizer.hpp"

namespace csasr::test {

// Plain recursive edit distance, no memoization. Independent of the DP
// implementation it checks; only usable for short sequences.
inline int brute_force_edit_distance(std::span<const Token> ref,
                                     std::span<const Token> hyp) {
  if (ref.empty()) return static_cast<int>(hyp.size());
  if (hyp.empty()) return static_cast<int>(ref.size());
  int sub = ref.front().surface == hyp.front().surface ? 0 : 1;
  int best = brute_force_edit_distance(ref.subspan(1), hyp.subspan(1)) + sub;
  best = std::min(best, brute_force_edit_distance(ref.subspan(1), hyp) + 1);
  best = std::min(best, brute_force_edit_distance(ref, hyp.subspan(1)) + 1);
  return best;
}

// All V^T frame paths, collapsed by removing repeats then blanks; sums the
// probability of every path that produces `labels`.
inline double brute_force_ctc_prob(const FeatureMatrix& p,
                                   std::span<const int> labels, int blank) {
  const int t_len = p.rows, v_len = p.cols;
  double total = 0.0;
  std::vector<int> path(t_len, 0);
  while (true) {
    std::vector<int> collapsed;
    for (int t = 0; t < t_len; ++t) {
      if (t > 0 && path[t] == path[t - 1]) continue;
      if (path[t] != blank) collapsed.push_back(path[t]);
    }
    if (collapsed.size() == labels.size() &&
        std::equal(collapsed.begin(), collapsed.end(), labels.begin())) {
      double prob = 1.0;
      for (int t = 0; t < t_len; ++t) prob *= p.at(t, path[t]);
      total += prob;
    }
    int i = t_len - 1;
    while (i >= 0 && path[i] == v_len - 1) path[i--] = 0;
    if (i < 0) break;
    ++path[i];
  }
  return total;
}

inline std::vector<Token> random_tokens(Rng& rng, size_t max_len,
                                        std::span<const Token> alphabet) {
  std::vector<Token> out;
  size_t len = rng.below(max_len + 1);
  for (size_t i = 0; i < len; ++i)
    out.push_back(alphabet[rng.below(alphabet.size())]);
  return out;
}

inline FeatureMatrix random_posteriors(Rng& rng, int rows, int cols) {
  FeatureMatrix m(rows, cols);
  for (int t = 0; t < rows; ++t) {
    double sum = 0.0;
    std::vector<double> row(cols);
    for (int v = 0; v < cols; ++v) {
      row[v] = rng.uniform01() + 1e-3;
      sum += row[v];
    }
    for (int v = 0; v < cols; ++v)
      m.at(t, v) = static_cast<float>(row[v] / sum);
  }
  return m;
}

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() /
                        "csasr_test_XXXXXX").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    path_ = mkdtemp(buf.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const {
    return (std::filesystem::path(path_) / name).string();
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

inline void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  f << body;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(f)),
                     std::istreambuf_iterator<char>());
}

}  // namespace csasr::test

#endif  // CSASR_TESTS_TEST_UTIL_HPP_
