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

#include "csasr/align.hpp"

#include <vector>

#include "csasr/rng.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

namespace csasr {
namespace {

using test::brute_force_edit_distance;

const std::vector<Token> kAlphabet = {{"走", Lang::kMandarin},
                                      {"好", Lang::kMandarin},
                                      {"GO", Lang::kEnglish},
                                      {"7", Lang::kOther}};

TEST(AlignTest, EmptySequences) {
  Alignment a = align({}, {});
  EXPECT_EQ(a.cost, 0);
  EXPECT_TRUE(a.ops.empty());
}

TEST(AlignTest, WorkedSubstitution) {
  std::vector<Token> ref = tokenize_raw("我爱CODING");
  std::vector<Token> hyp = tokenize_raw("我爱CODE");
  Alignment a = align(ref, hyp);
  EXPECT_EQ(a.cost, 1);
  ASSERT_EQ(a.ops.size(), 3u);
  EXPECT_EQ(a.ops[2].kind, EditKind::kSubstitute);
  EXPECT_EQ(a.ops[2].ref->surface, "CODING");
  EXPECT_EQ(a.ops[2].hyp->surface, "CODE");
}

TEST(AlignTest, InsertAndDeleteOnly) {
  std::vector<Token> ref = tokenize_raw("我 爱");
  Alignment del = align(ref, {});
  EXPECT_EQ(del.cost, 2);
  for (const EditOp& op : del.ops) EXPECT_EQ(op.kind, EditKind::kDelete);
  Alignment ins = align({}, ref);
  EXPECT_EQ(ins.cost, 2);
  for (const EditOp& op : ins.ops) EXPECT_EQ(op.kind, EditKind::kInsert);
}

TEST(AlignTest, TieBreakPrefersDiagonalThenDelete) {
  // One token vs a different token: a single Substitute, not Delete+Insert.
  Alignment a = align(std::vector<Token>{kAlphabet[0]},
                      std::vector<Token>{kAlphabet[2]});
  ASSERT_EQ(a.ops.size(), 1u);
  EXPECT_EQ(a.ops[0].kind, EditKind::kSubstitute);

  // [x, y] vs [y]: cost 1 either as del(x)+match(y) or sub(x->y)+del(y).
  // The diagonal preference walks back through the match, giving del first.
  Alignment b = align(std::vector<Token>{kAlphabet[0], kAlphabet[2]},
                      std::vector<Token>{kAlphabet[2]});
  ASSERT_EQ(b.ops.size(), 2u);
  EXPECT_EQ(b.ops[0].kind, EditKind::kDelete);
  EXPECT_EQ(b.ops[1].kind, EditKind::kMatch);
}

TEST(AlignTest, ProjectionsReproduceInputs) {
  Rng rng(99);
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<Token> ref = test::random_tokens(rng, 6, kAlphabet);
    std::vector<Token> hyp = test::random_tokens(rng, 6, kAlphabet);
    Alignment a = align(ref, hyp);
    std::vector<Token> ref_back, hyp_back;
    int non_match = 0;
    for (const EditOp& op : a.ops) {
      if (op.ref) ref_back.push_back(*op.ref);
      if (op.hyp) hyp_back.push_back(*op.hyp);
      if (op.kind != EditKind::kMatch) ++non_match;
      if (op.kind == EditKind::kMatch) {
        EXPECT_EQ(op.ref->surface, op.hyp->surface);
      }
    }
    EXPECT_EQ(ref_back, ref);
    EXPECT_EQ(hyp_back, hyp);
    EXPECT_EQ(non_match, a.cost);
  }
}

TEST(AlignTest, MatchesBruteForceOracle) {
  Rng rng(1234);
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<Token> ref = test::random_tokens(rng, 6, kAlphabet);
    std::vector<Token> hyp = test::random_tokens(rng, 6, kAlphabet);
    EXPECT_EQ(align(ref, hyp).cost, brute_force_edit_distance(ref, hyp));
  }
}

TEST(AlignTest, TriangleInequality) {
  Rng rng(555);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<Token> a = test::random_tokens(rng, 6, kAlphabet);
    std::vector<Token> b = test::random_tokens(rng, 6, kAlphabet);
    std::vector<Token> c = test::random_tokens(rng, 6, kAlphabet);
    EXPECT_LE(align(a, c).cost, align(a, b).cost + align(b, c).cost);
  }
}

struct OpCounts {
  int sub = 0, del = 0, ins = 0;
};

OpCounts count_ops(const Alignment& a) {
  OpCounts c;
  for (const EditOp& op : a.ops) {
    c.sub += op.kind == EditKind::kSubstitute;
    c.del += op.kind == EditKind::kDelete;
    c.ins += op.kind == EditKind::kInsert;
  }
  return c;
}

// Min and max substitution count over ALL minimum-cost alignments,
// via a DP with cost primary and S secondary. When min == max the
// (S, D, I) decomposition is forced.
std::pair<int, int> sub_count_range(std::span<const Token> ref,
                                    std::span<const Token> hyp) {
  const size_t n = ref.size(), m = hyp.size();
  struct Cell {
    int cost, smin, smax;
  };
  std::vector<Cell> dp((n + 1) * (m + 1));
  auto at = [&](size_t i, size_t j) -> Cell& { return dp[i * (m + 1) + j]; };
  for (size_t i = 0; i <= n; ++i) at(i, 0) = {static_cast<int>(i), 0, 0};
  for (size_t j = 0; j <= m; ++j) at(0, j) = {static_cast<int>(j), 0, 0};
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      int sub = ref[i - 1].surface == hyp[j - 1].surface ? 0 : 1;
      Cell best{at(i - 1, j - 1).cost + sub, at(i - 1, j - 1).smin + sub,
                at(i - 1, j - 1).smax + sub};
      auto consider = [&](const Cell& c) {
        if (c.cost + 1 < best.cost) {
          best = {c.cost + 1, c.smin, c.smax};
        } else if (c.cost + 1 == best.cost) {
          best.smin = std::min(best.smin, c.smin);
          best.smax = std::max(best.smax, c.smax);
        }
      };
      consider(at(i - 1, j));
      consider(at(i, j - 1));
      at(i, j) = best;
    }
  }
  return {at(n, m).smin, at(n, m).smax};
}

TEST(AlignTest, SwapDuality) {
  // Exchanging ref and hyp always preserves cost. The (S, D, I) mix
  // dualizes exactly (D<->I, S fixed) whenever the minimum-cost
  // decomposition is unique; when several optimal mixes exist the fixed
  // asymmetric tie-break may legitimately pick different ones per
  // direction, so only the structural identities are asserted there.
  Rng rng(777);
  int forced = 0;
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<Token> a = test::random_tokens(rng, 6, kAlphabet);
    std::vector<Token> b = test::random_tokens(rng, 6, kAlphabet);
    Alignment fwd = align(a, b);
    Alignment rev = align(b, a);
    ASSERT_EQ(fwd.cost, rev.cost);
    OpCounts f = count_ops(fwd), r = count_ops(rev);
    ASSERT_EQ(f.sub + f.del + f.ins, fwd.cost);
    ASSERT_EQ(r.sub + r.del + r.ins, rev.cost);
    ASSERT_EQ(f.del - f.ins,
              static_cast<int>(a.size()) - static_cast<int>(b.size()));
    ASSERT_EQ(r.del - r.ins,
              static_cast<int>(b.size()) - static_cast<int>(a.size()));
    auto [smin, smax] = sub_count_range(a, b);
    ASSERT_GE(f.sub, smin);
    ASSERT_LE(f.sub, smax);
    ASSERT_GE(r.sub, smin);
    ASSERT_LE(r.sub, smax);
    if (smin == smax) {
      EXPECT_EQ(f.sub, r.sub);
      EXPECT_EQ(f.del, r.ins);
      EXPECT_EQ(f.ins, r.del);
      ++forced;
    }
  }
  EXPECT_GT(forced, 100);  // the conditional branch is actually exercised
}

}  // namespace
}  // namespace csasr
