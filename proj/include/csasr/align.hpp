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

#ifndef CSASR_ALIGN_HPP_
#define CSASR_ALIGN_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "csasr/tokenizer.hpp"

namespace csasr {

enum class EditKind { kMatch, kSubstitute, kDelete, kInsert };

struct EditOp {
  EditKind kind;
  std::optional<Token> ref;  // present for Match/Substitute/Delete
  std::optional<Token> hyp;  // present for Match/Substitute/Insert
};

struct Alignment {
  std::vector<EditOp> ops;
  int cost = 0;  // number of non-Match ops
};

// Minimum-cost alignment under unit costs (sub = del = ins = 1, match = 0).
// A Match requires identical surfaces. The backtrace is deterministic: on
// equal cost, the diagonal move wins over Delete, and Delete over Insert,
// so alignments are reproducible byte for byte.
inline Alignment align(std::span<const Token> ref, std::span<const Token> hyp) {
  const size_t n = ref.size(), m = hyp.size();
  std::vector<int> dp((n + 1) * (m + 1));
  auto cell = [&](size_t i, size_t j) -> int& { return dp[i * (m + 1) + j]; };
  for (size_t i = 0; i <= n; ++i) cell(i, 0) = static_cast<int>(i);
  for (size_t j = 0; j <= m; ++j) cell(0, j) = static_cast<int>(j);
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      int sub = ref[i - 1].surface == hyp[j - 1].surface ? 0 : 1;
      int best = cell(i - 1, j - 1) + sub;
      if (cell(i - 1, j) + 1 < best) best = cell(i - 1, j) + 1;
      if (cell(i, j - 1) + 1 < best) best = cell(i, j - 1) + 1;
      cell(i, j) = best;
    }
  }

  Alignment out;
  out.cost = cell(n, m);
  size_t i = n, j = m;
  while (i > 0 || j > 0) {
    int cur = cell(i, j);
    if (i > 0 && j > 0) {
      int sub = ref[i - 1].surface == hyp[j - 1].surface ? 0 : 1;
      if (cell(i - 1, j - 1) + sub == cur) {
        out.ops.push_back({sub ? EditKind::kSubstitute : EditKind::kMatch,
                           ref[i - 1], hyp[j - 1]});
        --i, --j;
        continue;
      }
    }
    if (i > 0 && cell(i - 1, j) + 1 == cur) {
      out.ops.push_back({EditKind::kDelete, ref[i - 1], std::nullopt});
      --i;
      continue;
    }
    out.ops.push_back({EditKind::kInsert, std::nullopt, hyp[j - 1]});
    --j;
  }
  std::reverse(out.ops.begin(), out.ops.end());
  return out;
}

}  // namespace csasr

#endif  // CSASR_ALIGN_HPP_
